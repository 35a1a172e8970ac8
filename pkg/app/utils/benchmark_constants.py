"""
Benchmark Constants and Definitions
Central location for the generator's structural classes, base functions and bounds
"""

from enum import Enum
from typing import Dict, FrozenSet, List, NamedTuple, Tuple


class StructureClass(str, Enum):
    """Separability structure of a generated instance"""
    FULLY_SEPARABLE = "fully-separable"
    SINGLE_GROUP = "single-group-nonseparable"
    HALF_GROUP = "half-group-nonseparable"  # D/(2m) groups plus separable remainder
    K_GROUP = "k-group-nonseparable"  # D/m groups, no separable remainder
    FULLY_NONSEPARABLE = "fully-nonseparable"


class BaseFunction(str, Enum):
    """Base function enumeration"""
    SPHERE = "sphere"
    ELLIPTIC = "elliptic"
    RASTRIGIN = "rastrigin"
    ACKLEY = "ackley"
    SCHWEFEL_1_2 = "schwefel-1.2"
    ROSENBROCK = "rosenbrock"


class FunctionProfile(NamedTuple):
    """Static description of a base function"""
    name: BaseFunction
    lower: float
    upper: float
    separable: bool  # Additively separable before rotation
    rotatable: bool  # Rotation makes it nonseparable
    remainder: BaseFunction  # Function used on the separable remainder of grouped classes


FUNCTION_PROFILES: Dict[BaseFunction, FunctionProfile] = {
    BaseFunction.SPHERE: FunctionProfile(
        BaseFunction.SPHERE, -100.0, 100.0, True, False, BaseFunction.SPHERE
    ),
    BaseFunction.ELLIPTIC: FunctionProfile(
        BaseFunction.ELLIPTIC, -100.0, 100.0, True, True, BaseFunction.ELLIPTIC
    ),
    BaseFunction.RASTRIGIN: FunctionProfile(
        BaseFunction.RASTRIGIN, -5.0, 5.0, True, True, BaseFunction.RASTRIGIN
    ),
    BaseFunction.ACKLEY: FunctionProfile(
        BaseFunction.ACKLEY, -32.0, 32.0, True, True, BaseFunction.ACKLEY
    ),
    BaseFunction.SCHWEFEL_1_2: FunctionProfile(
        BaseFunction.SCHWEFEL_1_2, -100.0, 100.0, False, False, BaseFunction.SPHERE
    ),
    BaseFunction.ROSENBROCK: FunctionProfile(
        BaseFunction.ROSENBROCK, -100.0, 100.0, False, False, BaseFunction.SPHERE
    ),
}

GROUPED_CLASSES: FrozenSet[StructureClass] = frozenset({
    StructureClass.SINGLE_GROUP,
    StructureClass.HALF_GROUP,
    StructureClass.K_GROUP,
})


def is_supported(structure: StructureClass, base: BaseFunction) -> bool:
    """Whether the generator can build (structure, base)"""
    profile = FUNCTION_PROFILES[base]
    if structure == StructureClass.FULLY_SEPARABLE:
        return profile.separable
    # Every other class needs a nonseparable block
    return profile.rotatable or not profile.separable


def valid_matrix() -> List[Tuple[str, str]]:
    """All supported (structure, base) pairs, for error messages and docs"""
    return [
        (structure.value, base.value)
        for structure in StructureClass
        for base in BaseFunction
        if is_supported(structure, base)
    ]
