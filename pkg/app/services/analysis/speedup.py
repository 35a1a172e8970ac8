"""
Speed-up Model
Ideal speed-up when only the merged evaluation stays serial
"""

from typing import Dict, Iterable

from app.core.exceptions import ValidationException
from app.schemas.analysis import SpeedupParams


def speedup_model(params: SpeedupParams) -> float:
    """N / (1 + fe_fraction * (N - 1))"""
    n = params.processors
    return n / (1.0 + params.fe_fraction * (n - 1))


def speedup_curve(fe_fraction: float, processors: Iterable[int]) -> Dict[int, float]:
    return {
        n: speedup_model(SpeedupParams(processors=n, fe_fraction=fe_fraction))
        for n in processors
    }


def measured_speedup(t_one: float, t_n: float) -> float:
    """T_1 / T_N"""
    if t_n <= 0:
        raise ValidationException(f"T_N must be positive, got {t_n}")
    return t_one / t_n
