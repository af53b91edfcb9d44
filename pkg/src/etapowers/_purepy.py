"""Pure-Python (numpy) versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def sparse_convolve_i64(dense, idx, val, n):
    """Truncated product of ``dense`` with the sparse series ``(idx, val)``.

    The caller guarantees that no partial sum overflows int64.
    """
    out = np.zeros(n + 1, dtype=np.int64)
    m = len(dense)
    for start, v in zip(idx.tolist(), val.tolist()):
        if start > n:
            continue
        stop = min(n + 1, start + m)
        out[start:stop] += v * dense[: stop - start]
    return out


def cornacchia_bulk(primes, d, four):
    """Solve x^2 + d*y^2 = p (or 4p when ``four``) for every prime in ``primes``.

    Returns int64 arrays ``(x, y)``; both entries are 0 where no solution exists.
    """
    from .arithmetic import cornacchia

    xs = np.zeros(len(primes), dtype=np.int64)
    ys = np.zeros(len(primes), dtype=np.int64)
    if np.any(primes < 3) or np.any(primes >= 1 << 31):
        raise ValueError("cornacchia_bulk needs odd primes below 2**31")
    for i, p in enumerate(primes.tolist()):
        sol = cornacchia(d, 4 * p if four else p)
        if sol is not None:
            xs[i], ys[i] = sol
    return xs, ys
