"""
Problem Factory
Seeded generator for benchmark instances covering every separability class
"""

import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import TYPE_CHECKING, List, Optional, Tuple, Union

import numpy as np
from dotenv import dotenv_values
from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import (
    ArtifactIOException,
    ConfigurationException,
    DimensionMismatchException,
    NonFiniteValueException,
    UnsupportedProblemException,
)
from app.schemas.problem import ProblemDescriptor
from app.services.problems.benchmark_functions import (
    BLOCK_FUNCTIONS,
    SEPARABLE_FUNCTIONS,
    BaseFn,
)
from app.utils.benchmark_constants import (
    FUNCTION_PROFILES,
    BaseFunction,
    StructureClass,
    is_supported,
    valid_matrix,
)
from app.utils.logging import get_logger

if TYPE_CHECKING:
    from app.services.decomposition.grouping import Grouping

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Block:
    """One additive term of the objective: fn(R @ (x[indices] - o[indices])) * weight"""
    indices: np.ndarray
    function: BaseFunction
    fn: BaseFn = field(repr=False)
    rotation: Optional[np.ndarray] = field(default=None, repr=False)
    weight: float = 1.0
    interacting: bool = True  # False for additive (separable) blocks

    def value(self, z: np.ndarray) -> float:
        local = z[self.indices]
        if self.rotation is not None:
            local = self.rotation @ local
        return self.weight * self.fn(local)


@dataclass(frozen=True, eq=False)
class ObjectiveProblem:
    """A D-dimensional bounded minimization target with a known optimum value"""
    dimension: int
    lower: np.ndarray = field(repr=False)
    upper: np.ndarray = field(repr=False)
    structure: StructureClass
    base: BaseFunction
    shift: np.ndarray = field(repr=False)
    permutation: np.ndarray = field(repr=False)
    blocks: Tuple[Block, ...] = field(repr=False)
    group_size: Optional[int] = None
    optimum_value: float = 0.0
    descriptor: Optional[ProblemDescriptor] = None
    evaluation_delay: float = 0.0  # Injected busy-wait per call, seconds

    @property
    def name(self) -> str:
        if self.descriptor is not None:
            return self.descriptor.name
        return f"{self.structure.value}:{self.base.value}:D{self.dimension}"

    @property
    def base_functions(self) -> List[BaseFunction]:
        return sorted({block.function for block in self.blocks}, key=lambda b: b.value)

    @property
    def optimum(self) -> np.ndarray:
        """The planted optimum (the shift vector)"""
        return self.shift.copy()

    def evaluate(self, x: Union[np.ndarray, List[float]]) -> float:
        """
        Evaluate the objective; pure, no budget accounting

        Raises:
            DimensionMismatchException: If len(x) != D
            NonFiniteValueException: If any component is NaN or infinite
        """
        vector = np.asarray(x, dtype=float)
        if vector.ndim != 1 or vector.shape[0] != self.dimension:
            raise DimensionMismatchException(self.dimension, int(vector.size))
        if not np.all(np.isfinite(vector)):
            raise NonFiniteValueException("Decision vector contains non-finite components")

        if self.evaluation_delay > 0:
            _busy_wait(self.evaluation_delay)

        z = vector - self.shift
        return float(sum(block.value(z) for block in self.blocks))

    def error(self, value: float) -> float:
        """Function error relative to the known optimum"""
        return value - self.optimum_value

    def clamp(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower, self.upper)

    def with_evaluation_delay(self, seconds: float) -> "ObjectiveProblem":
        """Copy of this problem whose evaluations busy-wait for `seconds`"""
        return replace(self, evaluation_delay=float(seconds))

    def with_identity_permutation(self) -> "ObjectiveProblem":
        """
        Equivalent problem expressed in permuted coordinates

        If y = x[permutation] then the returned problem evaluated at y equals
        this problem evaluated at x.
        """
        perm = self.permutation
        inverse = np.argsort(perm)
        blocks = tuple(
            replace(block, indices=_frozen(inverse[block.indices]))
            for block in self.blocks
        )
        return replace(
            self,
            lower=_frozen(self.lower[perm]),
            upper=_frozen(self.upper[perm]),
            shift=_frozen(self.shift[perm]),
            permutation=_frozen(np.arange(self.dimension)),
            blocks=blocks,
            descriptor=None,
        )


def _busy_wait(seconds: float) -> None:
    deadline = time.perf_counter() + seconds
    while time.perf_counter() < deadline:
        pass


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


def _rotation_matrix(rng: np.random.Generator, size: int) -> np.ndarray:
    """Random orthogonal matrix via QR with sign correction"""
    q, r = np.linalg.qr(rng.standard_normal((size, size)))
    return q * np.sign(np.diag(r))


def _seed_to_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed % (2**64))


def _group_count(structure: StructureClass, dimension: int, group_size: int) -> int:
    if structure == StructureClass.SINGLE_GROUP:
        if group_size > dimension:
            raise ConfigurationException(
                f"Group size {group_size} exceeds dimension {dimension}"
            )
        return 1
    if structure == StructureClass.HALF_GROUP:
        if dimension % (2 * group_size) != 0:
            raise ConfigurationException(
                f"{structure.value} needs 2m to divide D (D={dimension}, m={group_size})"
            )
        return dimension // (2 * group_size)
    if dimension % group_size != 0:
        raise ConfigurationException(
            f"{structure.value} needs m to divide D (D={dimension}, m={group_size})"
        )
    return dimension // group_size


def _nonseparable_block(
    base: BaseFunction,
    indices: np.ndarray,
    rng: np.random.Generator,
    weight: float = 1.0,
) -> Block:
    profile = FUNCTION_PROFILES[base]
    rotation = _frozen(_rotation_matrix(rng, len(indices))) if profile.rotatable else None
    return Block(
        indices=_frozen(indices),
        function=base,
        fn=BLOCK_FUNCTIONS[base],
        rotation=rotation,
        weight=weight,
        interacting=True,
    )


def _separable_block(base: BaseFunction, indices: np.ndarray) -> Block:
    remainder = FUNCTION_PROFILES[base].remainder
    return Block(
        indices=_frozen(indices),
        function=remainder,
        fn=SEPARABLE_FUNCTIONS[remainder],
        interacting=False,
    )


def make_problem(
    structure: Union[StructureClass, str],
    base: Union[BaseFunction, str],
    dimension: int,
    group_size: Optional[int] = None,
    seed: int = 0,
) -> ObjectiveProblem:
    """
    Build a seeded benchmark instance with optimum value 0

    Args:
        structure: Separability class
        base: Base function
        dimension: Number of decision variables D (>= 2)
        group_size: Nonseparable group size m (grouped classes only)
        seed: Any 64-bit integer

    Returns:
        Immutable problem instance

    Raises:
        UnsupportedProblemException: If (structure, base) is not generated
        ConfigurationException: If D and m are inconsistent
    """
    try:
        descriptor = ProblemDescriptor(
            structure=structure,
            base=base,
            dimension=dimension,
            group_size=group_size,
            seed=seed,
        )
    except ValidationError as e:
        raise ConfigurationException(f"Invalid problem descriptor: {str(e)}")

    return build_problem(descriptor)


def build_problem(descriptor: ProblemDescriptor) -> ObjectiveProblem:
    """Build the instance described by a validated descriptor"""
    structure, base = descriptor.structure, descriptor.base
    dimension, group_size = descriptor.dimension, descriptor.group_size

    if not is_supported(structure, base):
        raise UnsupportedProblemException(structure.value, base.value, valid_matrix())

    profile = FUNCTION_PROFILES[base]
    lower = np.full(dimension, profile.lower)
    upper = np.full(dimension, profile.upper)

    # Draw order is part of the determinism contract: shift, permutation, rotations
    rng = _seed_to_rng(descriptor.seed)
    margin = settings.SHIFT_MARGIN
    unit = rng.random(dimension)
    shift = lower + (upper - lower) * (0.5 + margin * (unit - 0.5))
    permutation = rng.permutation(dimension)

    blocks: List[Block] = []
    if structure == StructureClass.FULLY_SEPARABLE:
        blocks.append(_separable_block(base, permutation))
    elif structure == StructureClass.FULLY_NONSEPARABLE:
        blocks.append(_nonseparable_block(base, permutation, rng))
    else:
        if group_size is None or group_size < 2:
            raise ConfigurationException(f"{structure.value} requires group_size >= 2")
        groups = _group_count(structure, dimension, group_size)
        weight = settings.SINGLE_GROUP_WEIGHT if structure == StructureClass.SINGLE_GROUP else 1.0
        for k in range(groups):
            indices = permutation[k * group_size:(k + 1) * group_size]
            blocks.append(_nonseparable_block(base, indices, rng, weight=weight))
        grouped = groups * group_size
        if grouped < dimension:
            blocks.append(_separable_block(base, permutation[grouped:]))

    problem = ObjectiveProblem(
        dimension=dimension,
        lower=_frozen(lower),
        upper=_frozen(upper),
        structure=structure,
        base=base,
        shift=_frozen(shift),
        permutation=_frozen(permutation),
        blocks=tuple(blocks),
        group_size=group_size,
        optimum_value=0.0,
        descriptor=descriptor,
    )
    logger.debug(f"Generated problem {problem.name} with {len(blocks)} blocks")
    return problem


def true_interaction_groups(problem: ObjectiveProblem) -> "Grouping":
    """
    The planted partition: each nonseparable block is one group, every variable
    of an additive block is a singleton
    """
    from app.services.decomposition.grouping import Grouping

    groups: List[List[int]] = []
    for block in problem.blocks:
        if block.interacting:
            groups.append(sorted(int(i) for i in block.indices))
        else:
            groups.extend([int(i)] for i in block.indices)
    groups.sort(key=lambda g: g[0])
    return Grouping.from_lists(groups, problem.dimension)


def save_descriptor(descriptor: ProblemDescriptor, path: Union[str, Path]) -> Path:
    """Write a descriptor as a KEY=value text file"""
    target = Path(path)
    lines = [
        f"STRUCTURE={descriptor.structure.value}",
        f"BASE={descriptor.base.value}",
        f"DIMENSION={descriptor.dimension}",
        f"SEED={descriptor.seed}",
    ]
    if descriptor.group_size is not None:
        lines.append(f"GROUP_SIZE={descriptor.group_size}")
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as e:
        raise ArtifactIOException(f"Failed to write descriptor {target}: {str(e)}")
    return target


def load_descriptor(path: Union[str, Path]) -> ProblemDescriptor:
    """Read a descriptor written by save_descriptor"""
    source = Path(path)
    if not source.is_file():
        raise ArtifactIOException(f"Descriptor file not found: {source}")
    values = dotenv_values(source)
    try:
        return ProblemDescriptor(
            structure=values.get("STRUCTURE"),
            base=values.get("BASE"),
            dimension=values.get("DIMENSION"),
            group_size=values.get("GROUP_SIZE"),
            seed=values.get("SEED", 0),
        )
    except ValidationError as e:
        raise ConfigurationException(f"Invalid descriptor file {source}: {str(e)}")
