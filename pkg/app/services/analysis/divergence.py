"""
Divergence Model
Closed forms and a Monte-Carlo oracle for how far serial and stale-parallel
contexts drift from the ideal simultaneous update
"""

from typing import Tuple

import numpy as np

from app.core.exceptions import ValidationException
from app.schemas.analysis import DivergenceParams
from app.services.search_kernel import RngStream

# Trials simulated per vectorized batch
TRIAL_BATCH = 50_000


def _check(p: float, groups: int) -> DivergenceParams:
    if not 0.0 <= p <= 1.0:
        raise ValidationException(f"p must be in [0, 1], got {p}")
    if groups < 1:
        raise ValidationException(f"M must be >= 1, got {groups}")
    return DivergenceParams(p=p, groups=groups)


def serial_events(groups: int) -> int:
    """Retention requirements of the serial workflow, pairs j > i"""
    return groups * (groups - 1) // 2


def parallel_events(groups: int) -> int:
    """Retention requirements of the stale-parallel workflow, pairs j != i"""
    return groups * (groups - 1)


def div_serial(p: float, groups: int) -> float:
    """1 - p^(M(M-1)/2)"""
    _check(p, groups)
    return 1.0 - p ** serial_events(groups)


def div_parallel(p: float, groups: int) -> float:
    """1 - p^(M(M-1))"""
    _check(p, groups)
    return 1.0 - p ** parallel_events(groups)


def gap_ratio(p: float, groups: int) -> float:
    """
    div_parallel / div_serial, which equals 1 + p^(M(M-1)/2)

    Raises:
        ValidationException: If M < 2 or p is 0 or 1
    """
    _check(p, groups)
    if groups < 2 or p <= 0.0 or p >= 1.0:
        raise ValidationException(f"Gap ratio undefined for p={p}, M={groups}")
    return div_parallel(p, groups) / div_serial(p, groups)


def _violation_rate(p: float, events: int, trials: int, stream: RngStream) -> float:
    if events == 0:
        return 0.0
    violated = 0
    remaining = trials
    while remaining > 0:
        batch = min(TRIAL_BATCH, remaining)
        retained = stream.generator.random((batch, events)) < p
        violated += int(np.count_nonzero(~retained.all(axis=1)))
        remaining -= batch
    return violated / trials


def simulate_divergence(p: float, groups: int, trials: int, stream: RngStream) -> Tuple[float, float]:
    """
    Empirical divergence frequencies

    Every (i, j) retention requirement is an independent Bernoulli(p) event.
    A trial diverges when any required retention fails.

    Returns:
        (empirical div_serial, empirical div_parallel)
    """
    _check(p, groups)
    if trials < 1:
        raise ValidationException(f"trials must be >= 1, got {trials}")
    serial = _violation_rate(p, serial_events(groups), trials, stream)
    parallel = _violation_rate(p, parallel_events(groups), trials, stream)
    return serial, parallel
