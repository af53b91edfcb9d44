"""Euler-product constants, weight-3 CM cusp forms and their L-values at s = 2."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .arithmetic import quad_rep_arrays, quad_reps, sieve
from .errors import FormulaError, RootNumberError
from .moments import family_series, prefix_stats
from .series import CoeffSeries, EtaProduct, expand_eta_product, linear_combine, q_prefactor_exponent

# -- Euler products ----------------------------------------------------------


def _inert_cubic(p, a, b):
    # (1 - 1/p)(1 - 1/p^3)^-1
    return np.log1p(-1 / p) - np.log1p(-(p**-3.0))


def _split_cm(hecke):
    # (1 + 1/p)(1 + (c_p - 1)/(p^2 - c_p + 1)), c_p the Hecke eigenvalue
    def local(p, a, b):
        c = hecke(a, b)
        return np.log1p(1 / p) + np.log1p((c - 1) / (p * p - c + 1))

    return local


def _lseries_split(hecke):
    def local(p, a, b):
        c = hecke(a, b)
        return np.log1p((c - 1) / (p * p - c + 1))

    return local


def _lseries_inert(p, a, b):
    return -np.log1p(-(p**-2.0))


def _hecke_xy(x, y):
    return 2.0 * (x * x - 3.0 * y * y)


def _hecke_uv(u, v):
    return 2.0 * (u * u - v * v)


def _hecke_zw(z, w):
    return (z * z - 27.0 * w * w) / 2.0


def _c2_inert(p, a, b):
    return -np.log1p(1 / p) - 0.5 * np.log1p(-1 / p)


def _c2_split(p, a, b):
    return -1.5 * np.log1p(-1 / p)


def _d_inert(p, a, b):
    return -np.log1p(1 / p)


def _d_split(p, a, b):
    return np.log1p(1 / p) - 2 * np.log1p(-1 / p)


@dataclass(frozen=True)
class ProductSpec:
    """``prefactor * prod_p local(p)`` over primes sorted into residue classes mod ``modulus``.

    ``classes`` maps a residue to ``(rep_kind, log_local)``; ``rep_kind`` names
    the representation the local factor needs (``None`` for none).
    ``log_local(p, a, b)`` is vectorized over float arrays. Primes 2 and 3 are
    folded into :attr:`prefactor`.
    """

    name: str
    base_prefactor: float
    prefactor_text: str
    modulus: int
    classes: dict
    reference: float
    description: str = ""

    def log_local(self, primes: np.ndarray) -> np.ndarray:
        out = np.zeros(len(primes))
        for residue, (kind, fn) in self.classes.items():
            sel = np.flatnonzero(primes % self.modulus == residue)
            if not len(sel):
                continue
            ps = primes[sel]
            if kind is None:
                a = b = None
            else:
                a, b = quad_rep_arrays(ps, kind)
                a, b = a.astype(float), b.astype(float)
            out[sel] = fn(ps.astype(float), a, b)
        return out

    @property
    def prefactor(self) -> float:
        small = np.array([p for p in (2, 3) if p % self.modulus in self.classes], dtype=np.int64)
        for p in small.tolist():
            if self.classes[p % self.modulus][0] is not None:
                raise FormulaError(f"{self.name}: prime {p} needs a representation; not supported")
        return self.base_prefactor * math.exp(float(self.log_local(small).sum())) if len(small) else self.base_prefactor


def _mod_classes(modulus, inert, split, inert_fn, split_fn, kind):
    classes = {r: (None, inert_fn) for r in inert}
    classes.update({r: (kind, split_fn) for r in split})
    return classes


PRODUCTS = {
    s.name: s
    for s in [
        ProductSpec("C2", 12 / math.sqrt(3 * math.pi), "12/sqrt(3 pi)", 12,
                    _mod_classes(12, (5, 7, 11), (1,), _c2_inert, _c2_split, None),
                    3.3215840614847482046694103, "abs-sum constant of the second power"),
        ProductSpec("D2", 4.0, "4", 12,
                    _mod_classes(12, (5, 7, 11), (1,), _d_inert, _d_split, None),
                    2.6339157938496334172500926, "mean-square constant of the second power"),
        ProductSpec("E21", 4.0, "4", 8,
                    _mod_classes(8, (3, 5, 7), (1,), _d_inert, _d_split, None),
                    1.7627471740390860504652186, "mean-square constant of eta(t)eta(2t)"),
        ProductSpec("C4", 6.0, "8 * (3/4)", 6,
                    _mod_classes(6, (5,), (1,), _inert_cubic, _split_cm(_hecke_xy), "xy"),
                    4.6417183001293981350615666, "product constant of the fourth power"),
        ProductSpec("D41", 4.0, "4", 4,
                    _mod_classes(4, (3,), (1,), _inert_cubic, _split_cm(_hecke_uv), "uv"),
                    1.9533514553987911733090376, "product constant of eta(t)^2 eta(2t)^2"),
        ProductSpec("E42", 3.0, "3", 3,
                    _mod_classes(3, (2,), (1,), _inert_cubic, _split_cm(_hecke_zw), "zw"),
                    1.0526097875093498936749762, "product constant of eta(t)^2 eta(3t)^2"),
        ProductSpec("Lxy", 0.75, "(1 + 3^-1)^-1", 6,
                    _mod_classes(6, (5,), (1,), _lseries_inert, _lseries_split(_hecke_xy), "xy"),
                    0.7372929961855962401764261, "level-12 L-value at s=2 as an Euler product"),
        ProductSpec("Luv", 1.0, "1", 4,
                    _mod_classes(4, (3,), (1,), _lseries_inert, _lseries_split(_hecke_uv), "uv"),
                    0.8593982272525466034362619, "level-16 L-value at s=2 as an Euler product"),
        ProductSpec("Lzw", 1.0, "1", 3,
                    _mod_classes(3, (2,), (1,), _lseries_inert, _lseries_split(_hecke_zw), "zw"),
                    1.0403374913367121372113004, "level-27 L-value at s=2 as an Euler product"),
    ]
}

# the three products whose values come with the empirical comparison
RANKIN_PRODUCTS = {"L4": "C4", "L4V1": "D41", "L4V2": "E42"}
EMPIRICAL_REFERENCE = {"L4": 4.877, "L4V1": 2.188, "L4V2": 1.290}


def geometric_checkpoints(P: int, start: int = 10**4, ratio: float = 10**0.5) -> list:
    out = []
    c = float(start)
    while c < P * (1 - 1e-9):
        out.append(int(round(c)))
        c *= ratio
    out.append(int(P))
    return out


def euler_product_partial(spec, P: int, checkpoints: Optional[Sequence[int]] = None) -> tuple:
    """Truncated product over primes ``5 <= p <= P``.

    Returns ``(value, [(P_k, value_k), ...])`` with the last checkpoint at ``P``.
    Log factors are summed in prime order, so results do not depend on scheduling.
    """
    spec = PRODUCTS[spec] if isinstance(spec, str) else spec
    P = int(P)
    checkpoints = sorted(int(c) for c in (checkpoints or geometric_checkpoints(P)))
    if checkpoints[-1] != P:
        checkpoints.append(P)
    primes = sieve(P)
    primes = primes[primes >= 5]
    logs = np.cumsum(spec.log_local(primes))
    pre = spec.prefactor
    out = []
    for c in checkpoints:
        i = int(np.searchsorted(primes, c, side="right"))
        out.append((c, pre * math.exp(float(logs[i - 1])) if i else pre))
    return out[-1][1], out


def extrapolate(checkpoints: Sequence) -> tuple:
    """Aitken delta-squared on the last three checkpoint values.

    Accepts ``[(P, value)]`` pairs or bare values. Returns ``(estimate,
    error_guess)``. The guess is the larger of the Aitken correction and the
    last step: the tails oscillate, and a step that happens to stall makes the
    correction alone far too optimistic. When the differences are degenerate
    (zero, or not contracting) the last value is returned with the last
    difference as its error.
    """
    values = [float(v[1]) if isinstance(v, (tuple, list)) else float(v) for v in checkpoints]
    if len(values) < 4:
        raise ValueError("extrapolate needs at least 4 checkpoints")
    s0, s1, s2 = values[-3:]
    d1, d2 = s1 - s0, s2 - s1
    fallback = (s2, abs(d2))
    denom = d2 - d1
    if d1 == 0 or denom == 0:
        return fallback
    r = d2 / d1
    if not abs(r) < 1:
        return fallback
    estimate = s2 - d2 * d2 / denom
    return estimate, max(abs(estimate - s2), abs(d2))


# -- cusp forms and L-values -------------------------------------------------


@dataclass(frozen=True)
class LSeriesSpec:
    """A weight-3 CM newform given as an integer combination of eta products."""

    level: int
    terms: tuple  # ((scalar, EtaProduct), ...)
    split: Callable[[int], bool]
    hecke: Callable[[int], int]  # c_p for split p
    weight: int = 3


def _hecke_at(kind, fn):
    def at(p):
        return fn(*getattr(quad_reps(p), kind))

    return at


LEVELS = {
    12: LSeriesSpec(12, ((1, EtaProduct([(2, 3), (6, 3)])),), lambda p: p % 6 == 1,
                    _hecke_at("xy", lambda x, y: 2 * (x * x - 3 * y * y))),
    16: LSeriesSpec(16, ((1, EtaProduct([(4, 6)])),), lambda p: p % 4 == 1,
                    _hecke_at("uv", lambda u, v: 2 * (u * u - v * v))),
    27: LSeriesSpec(27, ((1, EtaProduct([(3, 5), (9, 1)])), (9, EtaProduct([(3, 2), (9, 1), (27, 3)]))),
                    lambda p: p % 3 == 1,
                    _hecke_at("zw", lambda z, w: (z * z - 27 * w * w) // 2)),
}


def _level(spec):
    return LEVELS[spec] if isinstance(spec, int) else spec


def cusp_form_coefficients(spec, M: int) -> CoeffSeries:
    """Fourier coefficients ``c_0 .. c_M`` (``c_0 = 0``, ``c_1 = 1``)."""
    spec = _level(spec)
    shifted = []
    for scalar, eta in spec.terms:
        e = q_prefactor_exponent(eta)
        if e.denominator != 1 or e < 1:
            raise FormulaError(f"level {spec.level}: prefactor q^{e} is not a positive integer power")
        e = int(e)
        body = expand_eta_product(eta, max(M - e, 0)).coeffs if M >= e else np.zeros(0, dtype=np.int64)
        padded = np.zeros(M + 1, dtype=body.dtype)
        padded[e : e + len(body)] = body
        shifted.append((scalar, CoeffSeries(padded, eta)))
    c = linear_combine(shifted, M)
    if M >= 1 and c[1] != 1:
        raise FormulaError(f"level {spec.level}: c_1 = {c[1]}, expected 1")
    return CoeffSeries(c.coeffs, ("cusp form", spec.level))


def verify_euler_factor(spec, p: int, coeffs: Optional[CoeffSeries] = None) -> bool:
    """Does ``c_p`` match the quadratic-form prediction (0 at inert primes)?"""
    spec = _level(spec)
    if spec.level % p == 0:
        raise ValueError(f"p={p} divides the level {spec.level}")
    coeffs = coeffs if coeffs is not None and coeffs.N >= p else cusp_form_coefficients(spec, p)
    expected = spec.hecke(p) if spec.split(p) else 0
    return coeffs[p] == expected


def _afe_weights(n: np.ndarray, level: int, root_number: int) -> np.ndarray:
    # Lambda(s) = (sqrt(N)/2pi)^s Gamma(s) L(s) = eps Lambda(3 - s), split at s = 2:
    # L(2) = sum c_n [ (1 + n/A)/n^2 + eps/(A n) ] exp(-n/A),  A = sqrt(N)/2pi
    A = math.sqrt(level) / (2 * math.pi)
    x = n / A
    return ((1 + x) / n**2 + root_number / (A * n)) * np.exp(-x)


def smoothed_lvalue(coeffs: CoeffSeries, level: int, root_number: int = 1) -> float:
    n = np.arange(1, coeffs.N + 1, dtype=float)
    c = coeffs.coeffs[1:].astype(float)
    return float(math.fsum(c * _afe_weights(n, level, root_number)))


def abel_sum(coeffs: CoeffSeries, X: float) -> float:
    """``sum c_n n^-2 exp(-n/X)``."""
    n = np.arange(1, coeffs.N + 1, dtype=float)
    c = coeffs.coeffs[1:].astype(float)
    return float(math.fsum(c / n**2 * np.exp(-n / X)))


ABEL_MIN_TERMS = 20000
ABEL_TOLERANCE = 1e-3


@dataclass
class LValueReport:
    level: int
    terms: int
    value: float
    root_number: int
    abel_terms: int
    abel_value: float

    @property
    def abel_gap(self) -> float:
        return abs(self.value - self.abel_value)


def lvalue_report(spec, M: int = 5000, root_number: int = 1) -> LValueReport:
    spec = _level(spec)
    abel_terms = max(M, ABEL_MIN_TERMS)
    coeffs = cusp_form_coefficients(spec, abel_terms)
    head = CoeffSeries(coeffs.coeffs[: M + 1])
    value = smoothed_lvalue(head, spec.level, root_number)
    return LValueReport(spec.level, M, value, root_number, abel_terms, abel_sum(coeffs, abel_terms / 10))


def lvalue_at_2(spec, M: int = 5000, root_number: int = 1, check: bool = True) -> float:
    """``L(2)`` of the level's cusp form from its first ``M`` coefficients.

    The smoothed sum is exact up to truncation (negligible once ``M`` exceeds a
    few hundred). With ``check`` the result is compared against a plain
    Abel-smoothed sum; a gap above ``1e-3`` means the root number is wrong and
    raises :class:`RootNumberError`.
    """
    rep = lvalue_report(spec, M, root_number)
    if check and rep.abel_gap > ABEL_TOLERANCE:
        raise RootNumberError(
            f"level {rep.level}: smoothed L(2) = {rep.value:.12f} with root number {root_number:+d} "
            f"but Abel sum = {rep.abel_value:.12f}"
        )
    return rep.value


# -- empirical mean squares ----------------------------------------------------

MEAN_SQUARE_POWER = {"L4": 2, "L4V1": 2, "L4V2": 2, "L6": 3, "L8": 4, "L12": 6, "L24": 12}


def empirical_mean_square(family: str, N: int) -> float:
    """``sum_{n<=N} a_n^2 / N^k`` with ``k`` from the family's Rankin law."""
    k = MEAN_SQUARE_POWER[family]
    (stats,) = prefix_stats(family_series(family, N), [N])
    return stats.square_sum / N**k


@dataclass
class DiscrepancyRow:
    family: str
    N: int
    empirical: float
    product_name: str
    product_estimate: float
    product_error: float
    reference_empirical: float

    @property
    def gap(self) -> float:
        return self.empirical - self.product_estimate


def rankin_discrepancy(N: int = 10**5, P: int = 10**7) -> list:
    """Empirical mean squares of the three fourth-power families next to their
    Euler-product constants. The gap is reported, not explained."""
    rows = []
    for family, product in RANKIN_PRODUCTS.items():
        _, cps = euler_product_partial(product, P)
        est, err = extrapolate(cps)
        rows.append(DiscrepancyRow(family, N, empirical_mean_square(family, N), product, est, err,
                                   EMPIRICAL_REFERENCE[family]))
    return rows
