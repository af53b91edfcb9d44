"""Primes, factorization, modular arithmetic and binary quadratic form data.

Every multiplicative formula in the package is parameterized by the
representations of a prime ``p`` as

* ``p = u^2 + v^2`` with ``u`` odd and ``v`` even (``p = 1 mod 4``),
* ``p = x^2 + 3 y^2`` (``p = 1 mod 3``),
* ``4p = z^2 + 27 w^2`` (``p = 1 mod 3``),

all components positive. :func:`quad_reps` returns these, and
:func:`quad_rep_arrays` computes them in bulk for Euler products.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from pathlib import Path
from typing import Optional

import numpy as np

from . import _backend
from .errors import FormulaError

SIEVE_CEILING = 10**9
PRIME_CACHE_ENV = "ETAPOWERS_PRIME_CACHE"
_CACHE_MAGIC = "ETAPRIMES"
_CACHE_VERSION = 1
_SEGMENT = 1 << 21

Factorization = list  # list[tuple[int, int]], primes ascending


# -- sieving -----------------------------------------------------------------

def _small_sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return np.flatnonzero(flags).astype(np.int64)


def _segmented_sieve(limit: int) -> np.ndarray:
    # odd-only segments; index j in a segment stands for lo + 2j
    base = _small_sieve(isqrt(limit))[1:]
    chunks = [np.array([2], dtype=np.int64)]
    lo = 3
    while lo <= limit:
        hi = min(limit, lo + 2 * _SEGMENT - 1)
        size = (hi - lo) // 2 + 1
        seg = np.ones(size, dtype=bool)
        for p in base.tolist():
            if p * p > hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            seg[(start - lo) // 2 :: p] = False
        chunks.append(lo + 2 * np.flatnonzero(seg).astype(np.int64))
        lo = hi + 1 if hi % 2 == 0 else hi + 2
    return np.concatenate(chunks)


_primes_cache: dict = {"limit": 1, "primes": np.zeros(0, dtype=np.int64)}


def read_prime_cache(path, limit: int) -> Optional[np.ndarray]:
    """Primes ``<= limit`` from a cache file, or ``None`` if the file covers less.

    The file holds one decimal prime per line, ascending, after a header line
    ``ETAPRIMES 1 <limit>``.
    """
    path = Path(path)
    if not path.exists():
        return None
    with path.open() as fh:
        header = fh.readline().split()
        if len(header) != 3 or header[0] != _CACHE_MAGIC or header[1] != str(_CACHE_VERSION):
            raise ValueError(f"{path}: not an {_CACHE_MAGIC} v{_CACHE_VERSION} file")
        if int(header[2]) < limit:
            return None
        primes = np.array(fh.read().split(), dtype=np.int64)
    return primes[: np.searchsorted(primes, limit, side="right")]


def write_prime_cache(path, limit: int) -> Path:
    """Write all primes ``<= limit`` to ``path`` in the cache format."""
    path = Path(path)
    primes = sieve(limit, use_cache=False)
    with path.open("w") as fh:
        fh.write(f"{_CACHE_MAGIC} {_CACHE_VERSION} {limit}\n")
        fh.write("\n".join(map(str, primes.tolist())))
        fh.write("\n")
    return path


def sieve(limit: int, cache_path=None, use_cache: bool = True) -> np.ndarray:
    """All primes ``<= limit`` as an ascending int64 array.

    ``cache_path`` (or the ``ETAPOWERS_PRIME_CACHE`` environment variable) names
    an optional prime cache file that is used when it covers ``limit``.
    """
    limit = int(limit)
    if limit < 2 or limit > SIEVE_CEILING:
        raise ValueError(f"sieve limit must lie in [2, {SIEVE_CEILING}], got {limit}")
    if use_cache and limit <= _primes_cache["limit"]:
        primes = _primes_cache["primes"]
        return primes[: np.searchsorted(primes, limit, side="right")]
    cache_path = cache_path or (os.environ.get(PRIME_CACHE_ENV) if use_cache else None)
    primes = read_prime_cache(cache_path, limit) if cache_path else None
    if primes is None:
        primes = _small_sieve(limit) if limit <= 1 << 20 else _segmented_sieve(limit)
    if use_cache:
        _primes_cache.update(limit=limit, primes=primes)
    return primes


# -- factorization -----------------------------------------------------------

SPF_CEILING = 1 << 25
_spf_table = np.zeros(2, dtype=np.int32)


def _spf(limit: int) -> np.ndarray:
    global _spf_table
    if len(_spf_table) > limit:
        return _spf_table
    size = max(limit + 1, 2 * len(_spf_table), 1 << 20)
    size = min(size, SPF_CEILING + 1)
    spf = np.zeros(size, dtype=np.int32)
    for p in sieve(isqrt(size - 1)).tolist():
        block = spf[p * p :: p]
        block[block == 0] = p
    unset = np.flatnonzero(spf == 0)
    spf[unset] = unset
    _spf_table = spf
    return spf


def factorize(n: int) -> Factorization:
    """Prime factorization of ``1 <= n < 2**63`` as ``[(p, e), ...]``, ``p`` ascending."""
    n = int(n)
    if n < 1 or n >= 1 << 63:
        raise ValueError(f"factorize needs 1 <= n < 2**63, got {n}")
    if n <= SPF_CEILING:
        spf = _spf(n)
        out = []
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out
    from sympy import factorint

    return sorted(factorint(n).items())


def is_prime(n: int) -> bool:
    n = int(n)
    if n < 2:
        return False
    if n <= SPF_CEILING:
        return int(_spf(n)[n]) == n
    from sympy import isprime

    return bool(isprime(n))


# -- modular arithmetic ------------------------------------------------------

def mod_pow(b: int, e: int, m: int) -> int:
    """``b**e mod m`` reduced into ``[0, m)``."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return pow(b % m, e, m)


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """A square root of ``a`` modulo the prime ``p`` (Tonelli-Shanks), or ``None``."""
    a %= p
    if a == 0 or p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        return pow(a, (p + 1) // 4, p)
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return r


def _exhaustive_rep(d: int, m: int) -> Optional[tuple]:
    y = 1
    while d * y * y < m:
        rest = m - d * y * y
        x = isqrt(rest)
        if x * x == rest:
            return x, y
        y += 1
    return None


def cornacchia(d: int, m: int) -> Optional[tuple]:
    """Positive integers ``(x, y)`` with ``x^2 + d y^2 = m``, or ``None``.

    Uses Cornacchia's descent when ``m`` is prime, and Cohen's variant when
    ``m = 4p`` with ``-d = 1 mod 4`` (this also finds the non-primitive
    solutions that arise there). Any other ``m`` falls back to exhaustive search.
    No normalization is applied.
    """
    if d < 1 or m < 1:
        raise ValueError("cornacchia needs positive d and m")
    if is_prime(m) and d % m:
        r = sqrt_mod(-d, m)
        if r is None:
            return None
        a, b, lim = m, r, isqrt(m)
    elif m % 4 == 0 and (-d) % 4 == 1 and is_prime(m // 4) and m // 4 > 2 and d % (m // 4):
        p = m // 4
        r = sqrt_mod(-d, p)
        if r is None:
            return None
        if r % 2 != d % 2:
            r = p - r
        a, b, lim = 2 * p, r, isqrt(m)
    else:
        return _exhaustive_rep(d, m)
    while b > lim:
        a, b = b, a % b
    rest = m - b * b
    if b == 0 or rest <= 0 or rest % d:
        return None
    y = isqrt(rest // d)
    if y * y * d != rest:
        return None
    return b, y


@dataclass(frozen=True)
class QuadReps:
    """Normalized representations of a prime; absent fields are ``None``."""

    p: int
    uv: Optional[tuple] = None  # u^2 + v^2 = p, u odd, v even
    xy: Optional[tuple] = None  # x^2 + 3y^2 = p
    zw: Optional[tuple] = None  # z^2 + 27w^2 = 4p


def _need(sol, d, m):
    if sol is None:
        raise FormulaError(f"no representation x^2 + {d}y^2 = {m}; prime expected")
    return sol


@lru_cache(maxsize=None)
def quad_reps(p: int) -> QuadReps:
    """The :class:`QuadReps` of the prime ``p`` (memoized)."""
    uv = xy = zw = None
    if p % 4 == 1:
        u, v = _need(cornacchia(1, p), 1, p)
        uv = (u, v) if u % 2 else (v, u)
    if p % 3 == 1:
        xy = _need(cornacchia(3, p), 3, p)
        zw = _need(cornacchia(27, 4 * p), 27, 4 * p)
    return QuadReps(p, uv, xy, zw)


@dataclass(frozen=True)
class ResidueFlags:
    """Power-residue tests of a prime.

    ``quartic`` is ``(-3)^((p-1)/4) mod p`` as +-1 (``p = 1 mod 12``), ``octic``
    is ``(-4)^((p-1)/8)`` as +-1 (``p = 1 mod 8``), and ``cubic`` says whether
    ``2^((p-1)/3) = 1`` (``p = 1 mod 6``). Undefined entries are ``None``.
    """

    p: int
    quartic: Optional[int] = None
    octic: Optional[int] = None
    cubic: Optional[bool] = None


def _pm_one(b: int, e: int, p: int, what: str) -> int:
    r = mod_pow(b, e, p)
    if r == 1:
        return 1
    if r == p - 1:
        return -1
    raise FormulaError(f"{what} residue test at p={p} gave {r}, expected +-1")


@lru_cache(maxsize=None)
def residue_flags(p: int) -> ResidueFlags:
    if p < 3 or p % 2 == 0:
        raise ValueError(f"residue_flags needs an odd prime, got {p}")
    quartic = _pm_one(-3, (p - 1) // 4, p, "quartic") if p % 12 == 1 else None
    octic = _pm_one(-4, (p - 1) // 8, p, "octic") if p % 8 == 1 else None
    cubic = mod_pow(2, (p - 1) // 3, p) == 1 if p % 6 == 1 else None
    return ResidueFlags(p, quartic, octic, cubic)


# -- bulk representations ----------------------------------------------------

def quad_rep_arrays(primes: np.ndarray, kind: str) -> tuple:
    """Normalized representations for an array of primes, via the kernel backend.

    ``kind`` is ``"uv"``, ``"xy"`` or ``"zw"``; every prime must satisfy the
    corresponding residue condition. Returns two int64 arrays.
    """
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    d, four = {"uv": (1, False), "xy": (3, False), "zw": (27, True)}[kind]
    a, b = _backend.cornacchia_bulk(primes, d, four)
    if len(primes) and (a.min() <= 0 or b.min() <= 0):
        bad = int(primes[np.flatnonzero((a <= 0) | (b <= 0))[0]])
        raise FormulaError(f"bulk Cornacchia failed for kind={kind} at p={bad}")
    if kind == "uv":
        swap = a % 2 == 0
        a, b = np.where(swap, b, a), np.where(swap, a, b)
    return a, b
