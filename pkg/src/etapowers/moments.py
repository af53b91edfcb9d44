"""Coefficient statistics and their normalization against asymptotic laws."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import UnknownLawError
from .multiplicative import family_eta
from .series import CoeffSeries, expand_eta_product, jacobi_cube_series

STATISTICS = ("abs_sum", "square_sum", "max_abs", "partial_sum")

# reference constants, truncated to the digits the package can confirm
C_L2 = 3.3215840614847482046694103
D_L2 = 2.6339157938496334172500926
E_L2V1 = 1.7627471740390860504652186
B_L24 = 0.0320070045390141974938639


@dataclass(frozen=True)
class AsymptoticLaw:
    """``statistic(N) ~ constant * normalizer(N)``; ``constant`` is ``None`` when unknown."""

    family: str
    statistic: str
    normalizer: Callable[[int], float]
    constant: Optional[float]
    shape: str


def _law(family, statistic, normalizer, constant, shape):
    return (family, statistic), AsymptoticLaw(family, statistic, normalizer, constant, shape)


LAWS = dict(
    [
        _law("L1", "abs_sum", lambda N: math.sqrt(24 * N) / 3, 1.0, "(1/3)(24N)^(1/2)"),
        _law("L2", "abs_sum", lambda N: N / math.sqrt(math.log(N)), C_L2, "C N (ln N)^(-1/2)"),
        _law("L2", "square_sum", lambda N: N, D_L2, "D N"),
        _law("L2V1", "square_sum", lambda N: N, E_L2V1, "E N"),
        _law("L3", "abs_sum", lambda N: 2 * N, 1.0, "2N"),
        _law("L3", "square_sum", lambda N: (8 * N) ** 1.5 / 6, 1.0, "(1/6)(8N)^(3/2)"),
        _law("L3", "max_abs", lambda N: math.sqrt(8 * N), 1.0, "(8N)^(1/2)"),
        _law("L4", "square_sum", lambda N: N**2, None, "C N^2"),
        _law("L4V1", "square_sum", lambda N: N**2, None, "D N^2"),
        _law("L4V2", "square_sum", lambda N: N**2, None, "E N^2"),
        _law("L6", "square_sum", lambda N: N**3, None, "C N^3"),
        _law("L8", "square_sum", lambda N: N**4, None, "C N^4"),
        _law("L12", "square_sum", lambda N: float(N) ** 6, None, "A N^6"),
        _law("L24", "square_sum", lambda N: float(N) ** 12, B_L24, "B N^12"),
    ]
)


def get_law(family: str, statistic: str) -> AsymptoticLaw:
    try:
        return LAWS[family, statistic]
    except KeyError:
        raise UnknownLawError(f"no asymptotic law for {family} {statistic}") from None


@dataclass(frozen=True)
class PrefixStats:
    N: int
    abs_sum: int
    square_sum: int
    max_abs: int
    partial_sum: int

    def get(self, statistic: str) -> int:
        return getattr(self, statistic)


def _exact_cumsums(a: np.ndarray):
    """Exact running sums of |a|, a^2, max|a| and a (numpy where int64 is safe)."""
    if a.dtype != object:
        m = int(np.abs(a).max()) if len(a) else 0
        if m * m * len(a) < 1 << 62:
            absa = np.abs(a)
            return np.cumsum(absa), np.cumsum(a * a), np.maximum.accumulate(absa), np.cumsum(a)
    vals = a.astype(object)
    absa = np.abs(vals)
    return (np.cumsum(absa), np.cumsum(vals * vals),
            np.maximum.accumulate(absa), np.cumsum(vals))


def prefix_stats(series: CoeffSeries, checkpoints: Sequence[int]) -> list:
    """Exact ``sum |a_n|``, ``sum a_n^2``, ``max |a_n|`` and ``sum a_n`` over ``0 <= n <= N``."""
    checkpoints = [int(N) for N in checkpoints]
    if any(N > series.N or N < 0 for N in checkpoints):
        raise ValueError(f"checkpoints must lie in [0, {series.N}]")
    if not checkpoints:
        return []
    hi = max(checkpoints)
    sums = _exact_cumsums(series.coeffs[: hi + 1])
    return [PrefixStats(N, *(int(s[N]) for s in sums)) for N in checkpoints]


def default_checkpoints(N: int, start: int = 100) -> list:
    """Powers of ten from ``start`` up to ``N``, always ending at ``N``."""
    out = []
    c = start
    while c < N:
        out.append(c)
        c *= 10
    out.append(N)
    return out


def family_series(family: str, N: int) -> CoeffSeries:
    return expand_eta_product(family_eta(family), N)


def normalized_ratio(family: str, statistic: str, N: int, series: Optional[CoeffSeries] = None) -> float:
    """``statistic(N) / normalizer(N)``; tends to the law's constant."""
    law = get_law(family, statistic)
    series = series if series is not None else family_series(family, N)
    (stats,) = prefix_stats(series, [N])
    return _big_ratio(stats.get(statistic), law, N)


def _big_ratio(value: int, law: AsymptoticLaw, N: int) -> float:
    norm = law.normalizer(N)
    try:
        return value / norm
    except OverflowError:
        return math.exp(math.log(value) - math.log(norm))


def checkpoint_ratios(family: str, statistic: str, checkpoints: Sequence[int],
                      series: Optional[CoeffSeries] = None) -> list:
    """``[(N, ratio)]`` at each checkpoint."""
    law = get_law(family, statistic)
    series = series if series is not None else family_series(family, max(checkpoints))
    return [(s.N, _big_ratio(s.get(statistic), law, s.N)) for s in prefix_stats(series, checkpoints)]


def fit_constant(checkpoint_ratios: Sequence, model: str = "plain") -> tuple:
    """Estimate the limit of ``ratio(N)`` from ``[(N, ratio)]`` pairs.

    ``plain`` averages the second half of the checkpoints; ``log_corrected``
    least-squares fits ``a + b / ln N``. Returns ``(a, residual)``.
    """
    pts = [(int(N), float(r)) for N, r in checkpoint_ratios]
    if len(pts) < 3:
        raise ValueError("fit_constant needs at least 3 checkpoints")
    if model == "plain":
        tail = np.array([r for _, r in pts[len(pts) // 2 :]])
        return float(tail.mean()), float(tail.std())
    if model == "log_corrected":
        Ns = np.array([N for N, _ in pts], dtype=float)
        if len(set(Ns.tolist())) < 2 or Ns.min() <= 1:
            raise ValueError("log_corrected fit needs distinct checkpoints above 1")
        X = np.column_stack([np.ones_like(Ns), 1 / np.log(Ns)])
        y = np.array([r for _, r in pts])
        coef, *_ = np.linalg.lstsq(X, y, rcond=None)
        resid = y - X @ coef
        return float(coef[0]), float(np.sqrt(np.mean(resid**2)))
    raise ValueError(f"unknown model {model!r}")


def lehmer_scan(series: CoeffSeries) -> Optional[int]:
    """Index of the first zero coefficient, or ``None`` if there is none."""
    zeros = np.flatnonzero(series.coeffs == 0)
    return int(zeros[0]) if len(zeros) else None


def l3_partial_sum_closed_form(n: int) -> int:
    # (2k+1)^2 <= 8n+1 < (2k+3)^2
    k = (math.isqrt(8 * n + 1) - 1) // 2
    return (-1) ** k * (k + 1)


def l3_partial_sum_check(N: int) -> bool:
    """Do all partial sums of ``prod (1-q^m)^3`` up to ``N`` match ``(-1)^k (k+1)``?"""
    partial = np.cumsum(jacobi_cube_series(1, N).coeffs)
    t = 8 * np.arange(N + 1, dtype=np.int64) + 1
    k = (np.floor(np.sqrt(t)).astype(np.int64) - 1) // 2
    # float sqrt may be off by one next to perfect squares
    k[(2 * k + 3) ** 2 <= t] += 1
    k[(2 * k + 1) ** 2 > t] -= 1
    expected = np.where(k % 2 == 0, k + 1, -(k + 1))
    return bool(np.array_equal(partial, expected))


def l3_max_closed_form(N: int) -> int:
    """Largest odd ``2k+1`` with ``(2k+1)^2 <= 8N+1``."""
    return 2 * ((math.isqrt(8 * N + 1) - 1) // 2) + 1


def reported_shapes(series: CoeffSeries, N: int) -> dict:
    """Growth shapes that are printed but not asserted (open or unproven laws)."""
    (s,) = prefix_stats(series, [N])
    lnN = math.log(N)
    return {
        "ln_max_abs": math.log(s.max_abs) if s.max_abs else float("-inf"),
        "ln2_lnN_over_lnlnN": math.log(2) * lnN / math.log(lnN),
        "partial_sum_over_N": s.partial_sum / N,
        "square_sum_over_N": s.square_sum / N,
    }
