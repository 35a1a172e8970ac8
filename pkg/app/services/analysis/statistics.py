"""
Statistics
Two-sided Wilcoxon rank-sum test and win/draw/loss summaries
"""

from itertools import combinations
from typing import Literal, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import norm, rankdata, tiecorrect

from app.core.config import settings
from app.core.exceptions import ValidationException
from app.schemas.analysis import ComparisonRow, RankSumResult, WDLSummary

# Relative slack when comparing enumerated and observed deviations
DEVIATION_TOLERANCE = 1e-9

Method = Literal["auto", "exact", "normal"]


def _exact_p_value(ranks: np.ndarray, n: int, u: float) -> float:
    """Share of all size-n rank subsets at least as extreme as the observed U"""
    size = len(ranks)
    offset = n * (n + 1) / 2.0
    center = n * (size - n) / 2.0
    subsets = np.array(list(combinations(range(size), n)), dtype=np.intp)
    u_all = ranks[subsets].sum(axis=1) - offset
    observed = abs(u - center)
    extreme = np.abs(u_all - center) >= observed - DEVIATION_TOLERANCE * max(1.0, observed)
    return float(np.count_nonzero(extreme)) / len(u_all)


def _normal_p_value(ranks: np.ndarray, n: int, m: int, u: float) -> float:
    """Normal approximation with tie and continuity correction"""
    correction = tiecorrect(ranks)
    if correction == 0:
        return 1.0
    sd = np.sqrt(correction * n * m * (n + m + 1) / 12.0)
    z = (abs(u - n * m / 2.0) - 0.5) / sd
    return float(min(1.0, 2.0 * norm.sf(max(z, 0.0))))


def rank_sum_test(a: Sequence[float], b: Sequence[float], method: Method = "auto") -> RankSumResult:
    """
    Mann-Whitney U of `a` against `b` with a two-sided p-value

    Ties get midranks. "auto" enumerates exactly when n + m is at most
    settings.EXACT_TEST_MAX_SIZE and uses the normal approximation otherwise.
    """
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    n, m = len(x), len(y)
    if n < 1 or m < 1:
        raise ValidationException(f"Both samples need at least one value (n={n}, m={m})")

    combined = np.concatenate([x, y])
    ranks = rankdata(combined)
    u = float(ranks[:n].sum() - n * (n + 1) / 2.0)
    if np.all(combined == combined[0]):
        return RankSumResult(statistic=u, p_value=1.0, method="degenerate")

    if method == "auto":
        method = "exact" if n + m <= settings.EXACT_TEST_MAX_SIZE else "normal"
    if method == "exact":
        p_value = _exact_p_value(ranks, n, u)
    elif method == "normal":
        p_value = _normal_p_value(ranks, n, m, u)
    else:
        raise ValidationException(f"Unknown method {method!r}")
    return RankSumResult(statistic=u, p_value=min(1.0, p_value), method=method)


def verdict(a: Sequence[float], b: Sequence[float], alpha: float) -> Tuple[str, float]:
    """("win" | "draw" | "loss", p-value) for minimizing `a` against `b`"""
    p_value = rank_sum_test(a, b).p_value
    if p_value < alpha:
        if np.mean(a) < np.mean(b):
            return "win", p_value
        if np.mean(a) > np.mean(b):
            return "loss", p_value
    return "draw", p_value


def compare(
    problem: str,
    algo_a: str,
    a: Sequence[float],
    algo_b: str,
    b: Sequence[float],
    alpha: Optional[float] = None,
) -> ComparisonRow:
    alpha = settings.SIGNIFICANCE_LEVEL if alpha is None else alpha
    outcome, p_value = verdict(a, b, alpha)
    return ComparisonRow(
        problem=problem,
        algo_a=algo_a,
        algo_b=algo_b,
        mean_a=float(np.mean(a)),
        mean_b=float(np.mean(b)),
        p_value=p_value,
        verdict=outcome,
    )


def wdl_summary(
    results: Mapping[str, Tuple[Sequence[float], Sequence[float]]],
    alpha: Optional[float] = None,
) -> WDLSummary:
    """
    Count wins, draws and losses of the first sample over problems

    Args:
        results: problem -> (samples of a, samples of b)
        alpha: Significance level in (0, 1)
    """
    alpha = settings.SIGNIFICANCE_LEVEL if alpha is None else alpha
    if not 0.0 < alpha < 1.0:
        raise ValidationException(f"alpha must be in (0, 1), got {alpha}")
    summary = WDLSummary()
    for a, b in results.values():
        outcome, _ = verdict(a, b, alpha)
        if outcome == "win":
            summary.wins += 1
        elif outcome == "loss":
            summary.losses += 1
        else:
            summary.draws += 1
    return summary
