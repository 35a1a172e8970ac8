"""
Problems Package
Benchmark generator, objective abstraction and evaluation accounting
"""

from .problem_factory import (
    Block,
    ObjectiveProblem,
    build_problem,
    load_descriptor,
    make_problem,
    save_descriptor,
    true_interaction_groups,
)
from .evaluator import EvaluationBudget, Evaluator

__all__ = [
    "Block",
    "ObjectiveProblem",
    "build_problem",
    "load_descriptor",
    "make_problem",
    "save_descriptor",
    "true_interaction_groups",
    "EvaluationBudget",
    "Evaluator",
]
