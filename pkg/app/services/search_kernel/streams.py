"""
Random Streams
Counter-based, keyed pseudorandom streams and per-iteration draw blocks
"""

from typing import Iterable, List, NamedTuple, Optional, Sequence

import numpy as np
from numpy.random import Generator, Philox, SeedSequence

from app.core.exceptions import ValidationException


class DrawBlock(NamedTuple):
    """
    One iteration's worth of draws for D variables

    Column j belongs to variable (or slot) j in every row.
    """
    choice: np.ndarray  # uniform [0, 1), operator choice
    normal: np.ndarray  # standard normal
    cauchy: np.ndarray  # standard Cauchy
    accept: np.ndarray  # uniform [0, 1), meta-model pre-selection

    @property
    def size(self) -> int:
        return int(self.choice.shape[0])


class RngStream:
    """
    Independently seeded stream keyed by (seed, path)

    Streams with the same seed and path produce identical sequences; distinct
    paths are statistically independent (Philox keyed via SeedSequence).
    """

    def __init__(self, seed: int, path: Sequence[int] = ()):
        self.seed = int(seed) % (2**64)
        self.path = tuple(int(p) for p in path)
        sequence = SeedSequence(self.seed, spawn_key=self.path)
        self._generator = Generator(Philox(sequence))

    @classmethod
    def from_seed(cls, seed: int) -> "RngStream":
        return cls(seed)

    def spawn(self, *key: int) -> "RngStream":
        """Child stream addressed by `key` below this stream's path"""
        return RngStream(self.seed, self.path + tuple(key))

    @property
    def generator(self) -> Generator:
        return self._generator

    def uniform(self, size: Optional[int] = None):
        return self._generator.random(size)

    def normal(self, size: Optional[int] = None):
        return self._generator.standard_normal(size)

    def cauchy(self, size: Optional[int] = None):
        return self._generator.standard_cauchy(size)

    def permutation(self, n: int) -> np.ndarray:
        return self._generator.permutation(n)

    def block(self, size: int) -> DrawBlock:
        """Draw all four rows for `size` slots; the row order is fixed"""
        return DrawBlock(
            choice=self._generator.random(size),
            normal=self._generator.standard_normal(size),
            cauchy=self._generator.standard_cauchy(size),
            accept=self._generator.random(size),
        )

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, path={self.path})"


class ScriptedDraws:
    """Replays hand-written draw blocks in order, for traces and tests"""

    def __init__(self, blocks: Iterable[DrawBlock]):
        self._blocks: List[DrawBlock] = list(blocks)
        self._position = 0

    @classmethod
    def from_rows(
        cls,
        choice: Sequence[Sequence[float]],
        normal: Sequence[Sequence[float]],
        cauchy: Sequence[Sequence[float]],
        accept: Optional[Sequence[Sequence[float]]] = None,
    ) -> "ScriptedDraws":
        """One entry per iteration in every argument"""
        if accept is None:
            accept = [[0.0] * len(row) for row in choice]
        blocks = [
            DrawBlock(*(np.asarray(row, dtype=float) for row in rows))
            for rows in zip(choice, normal, cauchy, accept)
        ]
        return cls(blocks)

    @property
    def remaining(self) -> int:
        return len(self._blocks) - self._position

    def block(self, size: int) -> DrawBlock:
        if self._position >= len(self._blocks):
            raise ValidationException("Scripted draws exhausted")
        draws = self._blocks[self._position]
        if draws.size != size:
            raise ValidationException(
                f"Scripted block has {draws.size} columns, {size} requested"
            )
        self._position += 1
        return draws
