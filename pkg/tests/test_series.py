import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from etapowers.errors import InsufficientLengthError
from etapowers.series import (CoeffSeries, EtaProduct, expand_eta_product, jacobi_cube_series,
                              linear_combine, multiply, pentagonal_series, q_prefactor_exponent)


def naive_expand(factors, N):
    """Schoolbook oracle: multiply (1 - q^(d m)) one factor at a time."""
    a = [1] + [0] * N
    for d, r in factors:
        for _ in range(r):
            for m in range(1, N // d + 1):
                step = d * m
                for n in range(N, step - 1, -1):
                    a[n] -= a[n - step]
    return a


def test_eta_product_sorted_and_validated():
    e = EtaProduct({6: 3, 2: 3})
    assert e.factors == ((2, 3), (6, 3))
    assert e.exponent_at(6) == 3 and e.exponent_at(1) == 0
    with pytest.raises(ValueError):
        EtaProduct([(1, 0)])
    with pytest.raises(ValueError):
        EtaProduct([(1, 1), (1, 2)])
    assert EtaProduct([(1, 2)]) == EtaProduct.power(2)


def test_pentagonal_examples():
    assert pentagonal_series(1, 7) == [1, -1, -1, 0, 0, 1, 0, 1]
    assert pentagonal_series(2, 4) == [1, 0, -1, 0, -1]
    assert pentagonal_series(1, 0) == [1]


def test_jacobi_cube_examples():
    assert jacobi_cube_series(1, 6) == [1, -3, 0, 5, 0, 0, -7]
    assert jacobi_cube_series(1, 0) == [1]
    assert jacobi_cube_series(3, 9) == [1, 0, 0, -3, 0, 0, 0, 0, 0, 5]


def test_multiply_examples():
    assert multiply([1, -1], [1, -1], 2) == [1, -2, 1]
    p = pentagonal_series(1, 7)
    assert multiply(p, p, 7) == [1, -2, -1, 2, 1, 2, -2, 0]
    assert multiply(p, [1], 7) == p
    assert multiply(p, [1], 3) == [1, -1, -1, 0]


def test_truncated_series_cannot_be_extended():
    p = pentagonal_series(1, 5)
    with pytest.raises(InsufficientLengthError):
        multiply(p, p, 9)
    assert CoeffSeries.from_list([1, 2]).truncate(4) == [1, 2, 0, 0, 0]


def test_linear_combine_examples():
    s = pentagonal_series(1, 10)
    assert linear_combine([(1, s)], 10) == s
    assert linear_combine([(1, s), (-1, s)], 10) == [0] * 11


def test_expand_examples():
    assert expand_eta_product(EtaProduct.power(1), 7) == pentagonal_series(1, 7)
    assert expand_eta_product(EtaProduct.power(10), 4) == [1, -10, 35, -30, -105]
    assert expand_eta_product(EtaProduct.power(24), 5) == [1, -24, 252, -1472, 4830, -6048]


def test_q_prefactor_examples():
    assert q_prefactor_exponent(EtaProduct({2: 3, 6: 3})) == 1
    assert q_prefactor_exponent(EtaProduct({4: 6})) == 1
    assert str(q_prefactor_exponent(EtaProduct({1: 1}))) == "1/24"


def test_big_coefficients_are_exact():
    # 26th-power coefficients pass 2**63 early; compare with the schoolbook oracle
    N = 60
    got = expand_eta_product(EtaProduct.power(26), 2000)
    assert got.coeffs.dtype == object
    assert got[:N + 1] == naive_expand([(1, 26)], N)
    assert max(abs(v) for v in got.tolist()) > 2**63


def test_pentagonal_support():
    N = 5000
    s = expand_eta_product(EtaProduct.power(1), N).coeffs
    assert set(np.unique(s).tolist()) <= {-1, 0, 1}
    pent = set()
    for k in range(-100, 101):
        g = k * (3 * k - 1) // 2
        if 0 <= g <= N:
            pent.add(g)
    assert set(np.flatnonzero(s).tolist()) == pent


def test_jacobi_support():
    N = 5000
    s = expand_eta_product(EtaProduct.power(3), N).tolist()
    tri = {k * (k + 1) // 2: (-1) ** k * (2 * k + 1) for k in range(200) if k * (k + 1) // 2 <= N}
    assert all(s[n] == tri.get(n, 0) for n in range(N + 1))


@pytest.mark.parametrize("l1,l2", [(1, 1), (1, 3), (3, 3), (4, 4)])
def test_power_splits(l1, l2):
    N = 3000
    a = expand_eta_product(EtaProduct.power(l1), N)
    b = expand_eta_product(EtaProduct.power(l2), N)
    assert multiply(a, b, N) == expand_eta_product(EtaProduct.power(l1 + l2), N)


eta_products = st.dictionaries(st.integers(1, 6), st.integers(1, 7), min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(eta_products, st.integers(0, 80))
def test_expansion_matches_schoolbook(factors, N):
    spec = EtaProduct(factors)
    got = expand_eta_product(spec, N)
    assert got == naive_expand(spec.factors, N)
    assert got[0] == 1
    if N >= 1:
        assert got[1] == -spec.exponent_at(1)


small_series = st.lists(st.integers(-10**12, 10**12), min_size=1, max_size=30)


@settings(max_examples=60, deadline=None)
@given(small_series, small_series, small_series, st.integers(0, 40))
def test_multiply_commutative_associative(a, b, c, N):
    assert multiply(a, b, N) == multiply(b, a, N)
    assert multiply(a, multiply(b, c, N), N) == multiply(multiply(a, b, N), c, N)


@settings(max_examples=40, deadline=None)
@given(small_series, small_series, st.integers(0, 40))
def test_multiply_matches_python_ints(a, b, N):
    want = [sum(a[i] * b[n - i] for i in range(n + 1) if i < len(a) and n - i < len(b)) for n in range(N + 1)]
    assert multiply(a, b, N) == want
