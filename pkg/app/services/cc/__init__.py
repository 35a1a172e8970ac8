"""
Cooperative Coevolution Package
Context-vector engine for the DC-NG/DC-RG/DC-DG baselines
"""

from .context import (
    ContextVector,
    Provenance,
    SubproblemState,
    evaluate_partial,
    splice,
)
from .engine import CCStepResult, cc_step_parallel, cc_step_serial, run_cc

__all__ = [
    "ContextVector",
    "Provenance",
    "SubproblemState",
    "evaluate_partial",
    "splice",
    "CCStepResult",
    "cc_step_parallel",
    "cc_step_serial",
    "run_cc",
]
