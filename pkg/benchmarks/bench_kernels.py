"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--terms 100000] [--prime-limit 1000000] [--repeat 3]

Both implementations are imported directly, so the script works whatever
backend the package selected. Outputs are compared before timing.
"""

import argparse
import timeit

import numpy as np

from etapowers import _purepy
from etapowers.arithmetic import sieve
from etapowers.series import jacobi_cube_terms, expand_eta_product, EtaProduct

try:
    from etapowers import _kernels
except ImportError:
    _kernels = None


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_convolution(N, repeat):
    dense = expand_eta_product(EtaProduct.power(3), N).coeffs.astype(np.int64)
    terms = jacobi_cube_terms(1, N)
    idx = np.array([i for i, _ in terms], dtype=np.int64)
    val = np.array([v for _, v in terms], dtype=np.int64)
    impls = {"python": _purepy.sparse_convolve_i64}
    if _kernels is not None:
        impls["cython"] = _kernels.sparse_convolve_i64
    ref = _purepy.sparse_convolve_i64(dense, idx, val, N)
    rows = []
    for name, fn in impls.items():
        assert np.array_equal(fn(dense, idx, val, N), ref), name
        rows.append((f"sparse_convolve N={N} support={len(idx)}", name, _best(lambda: fn(dense, idx, val, N), repeat)))
    return rows


def bench_cornacchia(P, repeat):
    primes = sieve(P)
    primes = primes[(primes > 3) & (primes % 4 == 1)].astype(np.int64)
    impls = {"python": _purepy.cornacchia_bulk}
    if _kernels is not None:
        impls["cython"] = _kernels.cornacchia_bulk
    ref = _purepy.cornacchia_bulk(primes, 1, False)
    rows = []
    for name, fn in impls.items():
        out = fn(primes, 1, False)
        assert all(np.array_equal(a, b) for a, b in zip(out, ref)), name
        rows.append((f"cornacchia_bulk d=1 primes={len(primes)}", name, _best(lambda: fn(primes, 1, False), repeat)))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--terms", type=int, default=100000)
    ap.add_argument("--prime-limit", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; timing the fallback only")
    rows = bench_convolution(args.terms, args.repeat) + bench_cornacchia(args.prime_limit, args.repeat)
    width = max(len(r[0]) for r in rows)
    base = {}
    for case, name, t in rows:
        base.setdefault(case, t if name == "python" else None)
        speedup = base[case] / t if base.get(case) else float("nan")
        print(f"{case:<{width}}  {name:<7} {t * 1e3:10.2f} ms  x{speedup:6.1f}")


if __name__ == "__main__":
    main()
