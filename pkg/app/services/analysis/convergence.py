"""
Convergence Aggregation
Aligns trajectories on a common evaluation grid with last-value carry-forward
"""

from typing import List, Optional, Sequence

import numpy as np

from app.schemas.run import TrajectoryPoint


def common_grid(trajectories: Sequence[Sequence[TrajectoryPoint]]) -> np.ndarray:
    """Sorted union of all evaluation counts"""
    counts = {point.evaluations for trajectory in trajectories for point in trajectory}
    return np.array(sorted(counts), dtype=np.int64)


def align_trajectories(
    trajectories: Sequence[Sequence[TrajectoryPoint]],
    grid: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Best error of every run at every grid point

    A run's value at g is its last point with evaluations <= g; before its
    first point the value is NaN.

    Returns:
        Array of shape (runs, len(grid))
    """
    grid = common_grid(trajectories) if grid is None else np.asarray(grid)
    aligned = np.full((len(trajectories), len(grid)), np.nan)
    for row, trajectory in enumerate(trajectories):
        if not trajectory:
            continue
        evaluations = np.array([p.evaluations for p in trajectory])
        errors = np.array([p.best_error for p in trajectory])
        index = np.searchsorted(evaluations, grid, side="right") - 1
        valid = index >= 0
        aligned[row, valid] = errors[index[valid]]
    return aligned


def mean_curve(trajectories: Sequence[Sequence[TrajectoryPoint]]) -> List[TrajectoryPoint]:
    """Mean best error over runs on the common grid"""
    grid = common_grid(trajectories)
    if len(grid) == 0:
        return []
    aligned = align_trajectories(trajectories, grid)
    present = ~np.all(np.isnan(aligned), axis=0)
    means = np.nanmean(aligned[:, present], axis=0)
    return [
        TrajectoryPoint(evaluations=int(e), best_error=float(v))
        for e, v in zip(grid[present], means)
    ]
