"""Exact q-series expansion of eta products.

A product ``prod_m (1 - q^(delta m))^r`` is expanded by multiplying together
the sparse base series of Euler (pentagonal numbers) and Jacobi (triangular
numbers, for exponent chunks of 3). Coefficients are exact integers: int64
numpy arrays while a rigorous magnitude bound allows it, Python ints in
object arrays otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import _backend
from .errors import InsufficientLengthError

_I64_SAFE = (1 << 63) - 1


class EtaProduct:
    """The formal product ``prod_delta prod_m (1 - q^(delta m))^r_delta``.

    Built from ``(delta, r)`` pairs or a ``{delta: r}`` mapping; factors are
    stored sorted by ``delta``.
    """

    __slots__ = ("factors",)

    def __init__(self, factors):
        pairs = factors.items() if isinstance(factors, dict) else factors
        pairs = sorted((int(d), int(r)) for d, r in pairs)
        deltas = [d for d, _ in pairs]
        if len(set(deltas)) != len(deltas):
            raise ValueError(f"repeated delta in {pairs}")
        if any(d < 1 or r < 1 for d, r in pairs):
            raise ValueError(f"deltas and exponents must be positive: {pairs}")
        self.factors = tuple(pairs)

    @classmethod
    def power(cls, ell: int) -> "EtaProduct":
        """``prod (1 - q^m)^ell``."""
        return cls([(1, ell)])

    def exponent_at(self, delta: int) -> int:
        return dict(self.factors).get(delta, 0)

    def __eq__(self, other):
        return isinstance(other, EtaProduct) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        body = " ".join(f"eta({d}t)^{r}" for d, r in self.factors)
        return f"EtaProduct({body})"


@dataclass(frozen=True, eq=False)
class CoeffSeries:
    """Exact coefficients ``a_0 .. a_N``.

    ``complete`` marks a polynomial whose coefficients beyond ``N`` are known
    to vanish, so it may be zero-extended; truncated expansions are not complete.
    """

    coeffs: np.ndarray
    origin: object = None
    complete: bool = False
    _support: Optional[tuple] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.coeffs.setflags(write=False)

    @classmethod
    def from_list(cls, values: Sequence[int], origin=None, complete: bool = True):
        return cls(_pack([int(v) for v in values]), origin, complete)

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        if isinstance(n, slice):
            return [int(v) for v in self.coeffs[n]]
        return int(self.coeffs[n])

    def tolist(self) -> list:
        return [int(v) for v in self.coeffs]

    def __eq__(self, other):
        if isinstance(other, CoeffSeries):
            other = other.tolist()
        if isinstance(other, (list, tuple)):
            return self.tolist() == [int(v) for v in other]
        return NotImplemented

    def __repr__(self):
        head = self.tolist()[:8]
        more = ", ..." if len(self) > 8 else ""
        return f"CoeffSeries(N={self.N}, {str(head)[1:-1]}{more})"

    def support(self) -> tuple:
        """Nonzero ``(indices, values)`` as int64/object arrays."""
        if self._support is None:
            idx = np.flatnonzero(self.coeffs)
            object.__setattr__(self, "_support", (idx.astype(np.int64), self.coeffs[idx]))
        return self._support

    def truncate(self, N: int) -> "CoeffSeries":
        if N > self.N and not self.complete:
            raise InsufficientLengthError(f"series known to index {self.N}, {N} requested")
        if N <= self.N:
            return CoeffSeries(self.coeffs[: N + 1], self.origin, self.complete and not self.coeffs[N + 1 :].any())
        tail = np.zeros(N - self.N, dtype=self.coeffs.dtype)
        return CoeffSeries(np.concatenate([self.coeffs, tail]), self.origin, True)


SeriesLike = Union[CoeffSeries, Sequence[int]]


def _pack(values) -> np.ndarray:
    """int64 array when every value fits, object array of Python ints otherwise."""
    values = list(values)
    if not values or max(abs(v) for v in values) <= _I64_SAFE:
        return np.array(values, dtype=np.int64)
    out = np.empty(len(values), dtype=object)
    out[:] = values
    return out


def _maxabs(a: np.ndarray) -> int:
    if len(a) == 0:
        return 0
    if a.dtype == object:
        return max(abs(v) for v in a.tolist())
    return max(int(a.max()), -int(a.min()))


def _abssum(a: np.ndarray) -> int:
    if a.dtype != object and _maxabs(a) * len(a) <= _I64_SAFE:
        return int(np.abs(a).sum())
    return sum(abs(int(v)) for v in a.tolist())


def _as_series(s: SeriesLike) -> CoeffSeries:
    return s if isinstance(s, CoeffSeries) else CoeffSeries.from_list(s)


def _shrink(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and _maxabs(a) <= _I64_SAFE:
        return a.astype(np.int64)
    return a


def _convolve_sparse(dense: np.ndarray, idx: np.ndarray, val: np.ndarray, N: int) -> np.ndarray:
    # rigorous bound on every output coefficient decides int64 vs object
    bound = _abssum(val) * _maxabs(dense)
    if bound <= _I64_SAFE and dense.dtype != object and val.dtype != object:
        return _backend.sparse_convolve_i64(
            np.ascontiguousarray(dense, dtype=np.int64),
            np.ascontiguousarray(idx, dtype=np.int64),
            np.ascontiguousarray(val, dtype=np.int64),
            N,
        )
    out = np.zeros(N + 1, dtype=object)
    src = dense.astype(object)
    m = len(src)
    for start, v in zip(idx.tolist(), val.tolist()):
        if start > N:
            continue
        stop = min(N + 1, start + m)
        out[start:stop] += int(v) * src[: stop - start]
    return _shrink(out)


def multiply(a: SeriesLike, b: SeriesLike, N: int) -> CoeffSeries:
    """Truncated Cauchy product to index ``N``.

    Runs over the nonzero terms of the sparser operand, so the cost is
    ``N`` times its support size. Inputs shorter than ``N + 1`` are
    zero-extended only when ``complete``.
    """
    a, b = _as_series(a).truncate(N), _as_series(b).truncate(N)
    sa, sb = a.support(), b.support()
    if len(sa[0]) > len(sb[0]):
        a, b, sa = b, a, sb
    coeffs = _convolve_sparse(b.coeffs, sa[0], sa[1], N)
    return CoeffSeries(coeffs, ("product", a.origin, b.origin))


def linear_combine(terms: Iterable, N: int) -> CoeffSeries:
    """``sum scalar * series`` over ``(scalar, series)`` pairs, to index ``N``."""
    terms = [(int(c), _as_series(s).truncate(N)) for c, s in terms]
    bound = sum(abs(c) * _maxabs(s.coeffs) for c, s in terms)
    if bound <= _I64_SAFE and all(s.coeffs.dtype != object for _, s in terms):
        out = np.zeros(N + 1, dtype=np.int64)
        for c, s in terms:
            out += c * s.coeffs
    else:
        out = np.zeros(N + 1, dtype=object)
        for c, s in terms:
            out += c * s.coeffs.astype(object)
        out = _shrink(out)
    return CoeffSeries(out, ("combination", tuple((c, s.origin) for c, s in terms)))


def _sparse_series(pairs, N, origin) -> CoeffSeries:
    coeffs = np.zeros(N + 1, dtype=np.int64)
    idx = np.array([i for i, _ in pairs], dtype=np.int64)
    val = np.array([v for _, v in pairs], dtype=np.int64)
    coeffs[idx] = val
    s = CoeffSeries(coeffs, origin)
    object.__setattr__(s, "_support", (idx, val))
    return s


def pentagonal_terms(delta: int, N: int) -> list:
    """Sorted ``(delta*k(3k+1)/2, (-1)^k)`` for all integers ``k`` in range."""
    if delta < 1 or N < 0:
        raise ValueError("need delta >= 1 and N >= 0")
    terms = [(0, 1)]
    k = 1
    while delta * k * (3 * k - 1) // 2 <= N:
        sign = -1 if k % 2 else 1
        terms.append((delta * k * (3 * k - 1) // 2, sign))
        if delta * k * (3 * k + 1) // 2 <= N:
            terms.append((delta * k * (3 * k + 1) // 2, sign))
        k += 1
    return terms


def jacobi_cube_terms(delta: int, N: int) -> list:
    """Sorted ``(delta*k(k+1)/2, (-1)^k (2k+1))`` for ``k >= 0`` in range."""
    if delta < 1 or N < 0:
        raise ValueError("need delta >= 1 and N >= 0")
    terms = []
    k = 0
    while delta * k * (k + 1) // 2 <= N:
        terms.append((delta * k * (k + 1) // 2, (-1) ** k * (2 * k + 1)))
        k += 1
    return terms


def pentagonal_series(delta: int, N: int) -> CoeffSeries:
    """``prod (1 - q^(delta m))`` to index ``N`` (Euler's pentagonal theorem)."""
    return _sparse_series(pentagonal_terms(delta, N), N, EtaProduct([(delta, 1)]))


def jacobi_cube_series(delta: int, N: int) -> CoeffSeries:
    """``prod (1 - q^(delta m))^3`` to index ``N`` (Jacobi's identity)."""
    return _sparse_series(jacobi_cube_terms(delta, N), N, EtaProduct([(delta, 3)]))


@lru_cache(maxsize=16)
def _expand_cached(factors: tuple, N: int) -> CoeffSeries:
    bases = []
    for delta, r in factors:
        if delta > N:
            continue
        bases += [jacobi_cube_series(delta, N)] * (r // 3)
        bases += [pentagonal_series(delta, N)] * (r % 3)
    if not bases:
        one = np.zeros(N + 1, dtype=np.int64)
        one[0] = 1
        return CoeffSeries(one)
    acc = bases[0]
    for base in bases[1:]:
        acc = multiply(acc, base, N)
    return acc


def expand_eta_product(spec: EtaProduct, N: int) -> CoeffSeries:
    """Exact expansion of ``spec`` to index ``N`` (without the q-power prefactor)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    if not isinstance(spec, EtaProduct):
        spec = EtaProduct(spec)
    s = _expand_cached(spec.factors, N)
    return CoeffSeries(s.coeffs, spec)


def q_prefactor_exponent(spec: EtaProduct) -> Fraction:
    """``sum delta*r / 24``: the power of q leading the eta product."""
    if not isinstance(spec, EtaProduct):
        spec = EtaProduct(spec)
    return Fraction(sum(d * r for d, r in spec.factors), 24)
