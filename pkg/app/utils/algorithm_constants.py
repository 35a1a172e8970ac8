"""
Algorithm Constants and Definitions
Algorithm families, workflows and artifact labels
"""

from enum import Enum
from typing import Dict


class AlgorithmKind(str, Enum):
    """Optimizer family"""
    NPDC = "npdc"
    NPDC_RANDOM = "npdc-random"  # Meta-model pinned to 0.5, never adapted
    CC = "cc"


class NPDCVariant(str, Enum):
    STANDARD = "standard"
    RANDOM_META = "random-meta"


class GroupingStrategy(str, Enum):
    """Decomposition used by the CC baselines"""
    NATURAL = "natural"
    RANDOM = "random"
    DIFFERENTIAL = "differential"


class Workflow(str, Enum):
    """CC context workflow"""
    SERIAL = "serial"  # Fresh bests for already-processed groups
    PARALLEL = "parallel"  # Context frozen at the previous barrier


class GroupOrder(str, Enum):
    """Processing order of groups within one CC iteration"""
    ASCENDING = "ascending"
    DESCENDING = "descending"
    RANDOM = "random"


class RunStatus(str, Enum):
    COMPLETED = "completed"
    FAILED = "failed"


class SpeedupMode(str, Enum):
    """How parallel time is measured"""
    SIMULATED = "simulated"  # Serial part plus the slowest chunk per iteration
    THREADS = "threads"  # Wall clock with a thread pool


GROUPING_LABELS: Dict[GroupingStrategy, str] = {
    GroupingStrategy.NATURAL: "NG",
    GroupingStrategy.RANDOM: "RG",
    GroupingStrategy.DIFFERENTIAL: "DG",
}

PARALLEL_SUFFIX = "-P"
