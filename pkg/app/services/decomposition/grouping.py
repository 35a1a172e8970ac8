"""
Grouping
Exclusive partition of variable indices into subproblems
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from app.core.exceptions import ArtifactIOException, GroupingException


@dataclass(frozen=True)
class Grouping:
    """
    Partition of {0, ..., D-1} into M nonempty, pairwise disjoint groups

    Indices are zero-based; group order is the processing order.
    """
    groups: Tuple[Tuple[int, ...], ...]
    dimension: int

    def __post_init__(self):
        seen = set()
        total = 0
        for position, group in enumerate(self.groups):
            if not group:
                raise GroupingException(f"Group {position} is empty")
            total += len(group)
            seen.update(group)
        if total != len(seen):
            raise GroupingException("Groups are not pairwise disjoint")
        if seen != set(range(self.dimension)):
            missing = sorted(set(range(self.dimension)) - seen)
            extra = sorted(seen - set(range(self.dimension)))
            raise GroupingException(
                f"Groups do not cover 0..{self.dimension - 1} "
                f"(missing {missing[:5]}, out of range {extra[:5]})"
            )

    @classmethod
    def from_lists(cls, groups: Iterable[Iterable[int]], dimension: int) -> "Grouping":
        return cls(tuple(tuple(int(i) for i in g) for g in groups), int(dimension))

    @property
    def count(self) -> int:
        """M, the number of subproblems"""
        return len(self.groups)

    @property
    def sizes(self) -> List[int]:
        return [len(g) for g in self.groups]

    def index_arrays(self) -> List[np.ndarray]:
        return [np.asarray(g, dtype=np.intp) for g in self.groups]

    def labels(self) -> np.ndarray:
        """Group position of every variable"""
        labels = np.empty(self.dimension, dtype=np.intp)
        for position, group in enumerate(self.groups):
            labels[list(group)] = position
        return labels

    def same_group(self, i: int, j: int) -> bool:
        labels = self.labels()
        return bool(labels[i] == labels[j])

    def canonical(self) -> Tuple[Tuple[int, ...], ...]:
        """Order-independent form for comparing partitions"""
        return tuple(sorted(tuple(sorted(g)) for g in self.groups))

    def pairwise_accuracy(self, other: "Grouping") -> float:
        """Fraction of variable pairs on whose co-membership both partitions agree"""
        if other.dimension != self.dimension:
            raise GroupingException("Cannot compare groupings of different dimension")
        if self.dimension < 2:
            return 1.0
        mine, theirs = self.labels(), other.labels()
        agree = (mine[:, None] == mine[None, :]) == (theirs[:, None] == theirs[None, :])
        upper = np.triu_indices(self.dimension, k=1)
        return float(np.mean(agree[upper]))

    def to_lines(self) -> List[str]:
        return [" ".join(str(i) for i in g) for g in self.groups]

    @classmethod
    def from_lines(cls, lines: Sequence[str], dimension: int) -> "Grouping":
        groups = [[int(token) for token in line.split()] for line in lines if line.strip()]
        return cls.from_lists(groups, dimension)

    def save(self, path: Union[str, Path]) -> Path:
        """Write one group per line as space-separated indices"""
        target = Path(path)
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text("\n".join(self.to_lines()) + "\n", encoding="utf-8")
        except OSError as e:
            raise ArtifactIOException(f"Failed to write grouping {target}: {str(e)}")
        return target

    @classmethod
    def load(cls, path: Union[str, Path], dimension: int) -> "Grouping":
        source = Path(path)
        try:
            lines = source.read_text(encoding="utf-8").splitlines()
        except OSError as e:
            raise ArtifactIOException(f"Failed to read grouping {source}: {str(e)}")
        return cls.from_lines(lines, dimension)
