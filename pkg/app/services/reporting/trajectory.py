"""
Trajectory Recorder
Best-so-far error sampling shared by every optimizer
"""

import math
from typing import List, Optional, Tuple

from app.core.config import settings
from app.schemas.run import TrajectoryPoint


class TrajectoryRecorder:
    """
    Collects (evaluations, best error) points

    A point is kept whenever the best error improves and at least once every
    `interval` evaluations. Evaluation counts are strictly increasing.
    """

    def __init__(self, optimum_value: float = 0.0, interval: Optional[int] = None):
        self.optimum_value = optimum_value
        self.interval = interval or settings.TRAJECTORY_INTERVAL
        self.best_error = math.inf
        self._points: List[Tuple[int, float]] = []
        self._next_checkpoint = self.interval

    def record(self, evaluations: int, value: float) -> bool:
        """
        Offer the objective value reached after `evaluations` evaluations

        Returns:
            True if a point was logged
        """
        error = value - self.optimum_value
        improved = error < self.best_error
        if improved:
            self.best_error = error
        due = evaluations >= self._next_checkpoint
        if due:
            self._next_checkpoint = (evaluations // self.interval + 1) * self.interval
        if not (improved or due):
            return False
        if self._points and self._points[-1][0] >= evaluations:
            # Same count as the last point: keep the newer best
            self._points[-1] = (self._points[-1][0], self.best_error)
            return True
        self._points.append((evaluations, self.best_error))
        return True

    def close(self, evaluations: int) -> None:
        """Make sure the final evaluation count is represented"""
        if math.isinf(self.best_error):
            return
        if not self._points or self._points[-1][0] < evaluations:
            self._points.append((evaluations, self.best_error))

    def points(self) -> List[TrajectoryPoint]:
        return [TrajectoryPoint(evaluations=e, best_error=b) for e, b in self._points]

    def __len__(self) -> int:
        return len(self._points)
