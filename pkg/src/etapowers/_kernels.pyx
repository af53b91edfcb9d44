# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Must stay signature-compatible with ``_purepy``."""

import numpy as np

from libc.stdint cimport int64_t, uint64_t


def sparse_convolve_i64(const int64_t[::1] dense, const int64_t[::1] idx,
                        const int64_t[::1] val, Py_ssize_t n):
    """Truncated product of ``dense`` with the sparse series ``(idx, val)``.

    The caller guarantees that no partial sum overflows int64.
    """
    out = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef Py_ssize_t j, k, start, stop
    cdef Py_ssize_t m = dense.shape[0]
    cdef int64_t v
    cdef const int64_t* src
    with nogil:
        for j in range(idx.shape[0]):
            start = idx[j]
            if start > n:
                continue
            v = val[j]
            stop = n + 1
            if start + m < stop:
                stop = start + m
            src = &dense[0]
            for k in range(start, stop):
                o[k] += v * src[k - start]
    return out


cdef inline uint64_t _mulmod(uint64_t a, uint64_t b, uint64_t m) nogil:
    return (a * b) % m


cdef uint64_t _powmod(uint64_t b, uint64_t e, uint64_t m) nogil:
    cdef uint64_t r = 1
    b %= m
    while e:
        if e & 1:
            r = _mulmod(r, b, m)
        b = _mulmod(b, b, m)
        e >>= 1
    return r


cdef uint64_t _isqrt(uint64_t n) nogil:
    cdef uint64_t x = <uint64_t>(<double>n ** 0.5)
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


cdef int64_t _sqrt_mod(uint64_t a, uint64_t p) nogil:
    # Tonelli-Shanks; -1 when a is a non-residue
    cdef uint64_t q, z, c, r, t, b, t2
    cdef int s, m, i
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if _powmod(a, (p - 1) >> 1, p) != 1:
        return -1
    q = p - 1
    s = 0
    while (q & 1) == 0:
        q >>= 1
        s += 1
    if s == 1:
        return _powmod(a, (p + 1) >> 2, p)
    z = 2
    while _powmod(z, (p - 1) >> 1, p) != p - 1:
        z += 1
    m = s
    c = _powmod(z, q, p)
    t = _powmod(a, q, p)
    r = _powmod(a, (q + 1) >> 1, p)
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1:
            t2 = _mulmod(t2, t2, p)
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = _mulmod(b, b, p)
        r = _mulmod(r, b, p)
        c = _mulmod(b, b, p)
        t = _mulmod(t, c, p)
        m = i
    return r


def cornacchia_bulk(const int64_t[::1] primes, int64_t d, bint four):
    """Solve x^2 + d*y^2 = p (or 4p when ``four``) for every prime in ``primes``.

    Returns int64 arrays ``(x, y)``; both entries are 0 where no solution exists.
    Primes must be odd and below 2**31.
    """
    cdef Py_ssize_t n = primes.shape[0], i
    xs = np.zeros(n, dtype=np.int64)
    ys = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] xo = xs
    cdef int64_t[::1] yo = ys
    cdef uint64_t p, m, a, b, t, lim, c, y, dd = <uint64_t>d
    cdef int64_t r
    for i in range(n):
        if primes[i] < 3 or primes[i] >= (1LL << 31):
            raise ValueError("cornacchia_bulk needs odd primes below 2**31")
    with nogil:
        for i in range(n):
            p = <uint64_t>primes[i]
            if dd % p == 0:
                continue
            r = _sqrt_mod((p - dd % p) % p, p)
            if r < 0:
                continue
            if four:
                m = 4 * p
                if (<uint64_t>r & 1) != (dd & 1):
                    r = <int64_t>(p - <uint64_t>r)
                a = 2 * p
            else:
                m = p
                a = p
            b = <uint64_t>r
            lim = _isqrt(m)
            if four:
                lim = _isqrt(4 * p)
            while b > lim:
                t = a % b
                a = b
                b = t
            if b * b >= m or (m - b * b) % dd != 0:
                continue
            c = (m - b * b) // dd
            y = _isqrt(c)
            if y * y != c or y == 0 or b == 0:
                continue
            xo[i] = <int64_t>b
            yo[i] = <int64_t>y
    return xs, ys
