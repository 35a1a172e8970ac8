"""
Evaluation Budget and Timed Evaluator
Budget accounting and evaluation-time capture shared by every optimizer
"""

import threading
import time
from typing import Optional

import numpy as np

from app.core.exceptions import BudgetExhaustedException, ValidationException
from app.services.problems.problem_factory import ObjectiveProblem


class EvaluationBudget:
    """Thread-safe counter of consumed function evaluations"""

    def __init__(self, limit: Optional[int] = None):
        if limit is not None and limit < 0:
            raise ValidationException(f"Budget must be non-negative, got {limit}")
        self.limit = limit
        self._consumed = 0
        self._lock = threading.Lock()

    @property
    def consumed(self) -> int:
        return self._consumed

    @property
    def remaining(self) -> Optional[int]:
        if self.limit is None:
            return None
        return self.limit - self._consumed

    @property
    def exhausted(self) -> bool:
        return self.limit is not None and self._consumed >= self.limit

    def charge(self, count: int = 1) -> None:
        """
        Charge evaluations

        Raises:
            BudgetExhaustedException: If fewer than `count` evaluations remain
        """
        with self._lock:
            if self.limit is not None and self._consumed + count > self.limit:
                raise BudgetExhaustedException(self.limit, count)
            self._consumed += count

    def grant(self, requested: int) -> int:
        """How many of `requested` evaluations fit in the remaining budget"""
        remaining = self.remaining
        if remaining is None:
            return requested
        return max(0, min(requested, remaining))


class Evaluator:
    """Evaluates a problem, charging the budget and timing every call"""

    def __init__(self, problem: ObjectiveProblem, budget: EvaluationBudget):
        self.problem = problem
        self.budget = budget
        self.evaluation_time = 0.0
        self.uncharged_calls = 0
        self._lock = threading.Lock()

    def evaluate(self, x: np.ndarray, charge: bool = True) -> float:
        """
        Evaluate f(x)

        Args:
            x: Full decision vector
            charge: Whether the call consumes budget; monitoring calls do not

        Returns:
            Objective value
        """
        if charge:
            self.budget.charge(1)
        start = time.perf_counter()
        try:
            return self.problem.evaluate(x)
        finally:
            elapsed = time.perf_counter() - start
            with self._lock:
                self.evaluation_time += elapsed
                if not charge:
                    self.uncharged_calls += 1

    def error(self, value: float) -> float:
        return self.problem.error(value)
