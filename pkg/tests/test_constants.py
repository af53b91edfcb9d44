import math

import numpy as np
import pytest

from etapowers import constants as c
from etapowers.arithmetic import sieve
from etapowers.errors import RootNumberError


def test_extrapolate_examples():
    seq = [2 + 3 * 0.5**k for k in range(6)]
    est, _ = c.extrapolate(seq)
    assert est == pytest.approx(2, abs=1e-14)
    assert c.extrapolate([1.5] * 5) == (1.5, 0.0)
    with pytest.raises(ValueError):
        c.extrapolate([1, 2, 3])
    est, err = c.extrapolate([1, 2, 4, 8])  # diverging: fall back
    assert (est, err) == (8, 4)


def test_local_factors_near_one():
    primes = sieve(10**5)
    primes = primes[primes >= 5]
    for name, spec in c.PRODUCTS.items():
        logs = spec.log_local(primes)
        assert np.all(np.isfinite(logs))
        assert np.all(np.abs(logs) * primes < 40), name


@pytest.mark.parametrize("name", ["C2", "D2", "E21", "C4", "D41", "E42"])
def test_products_converge(name):
    spec = c.PRODUCTS[name]
    value, cps = c.euler_product_partial(spec, 10**6)
    assert cps[-1] == (10**6, value)
    assert abs(value / spec.reference - 1) < 2e-3
    e1, _ = c.extrapolate(cps)
    e2, g2 = c.extrapolate(c.euler_product_partial(spec, 2 * 10**6)[1])
    assert abs(e2 - e1) < 10 * g2


def test_cusp_form_examples():
    c16 = c.cusp_form_coefficients(16, 9)
    assert c16[0] == 0 and c16[1] == 1
    assert all(c16[n] == 0 for n in range(10) if n % 4 != 1)
    assert c16[5] == -6
    assert c.cusp_form_coefficients(12, 7)[7] == 2
    assert c.cusp_form_coefficients(27, 7)[7] == -13


def test_verify_euler_factor_examples():
    assert c.verify_euler_factor(12, 7)
    assert c.verify_euler_factor(27, 7)
    assert c.verify_euler_factor(16, 3)
    with pytest.raises(ValueError):
        c.verify_euler_factor(12, 3)


def test_euler_factors_to_2000():
    for level, spec in c.LEVELS.items():
        coeffs = c.cusp_form_coefficients(spec, 2000)
        for p in sieve(2000).tolist():
            if level % p:
                assert c.verify_euler_factor(spec, p, coeffs), (level, p)


def test_lvalues():
    refs = {12: 0.7372929961855962, 16: 0.8593982272525466, 27: 1.0403374913367121}
    for level, ref in refs.items():
        assert c.lvalue_at_2(level, 5000) == pytest.approx(ref, abs=1e-9)


def test_wrong_root_number_is_caught():
    with pytest.raises(RootNumberError):
        c.lvalue_at_2(16, 5000, root_number=-1)
    rep = c.lvalue_report(12, 5000)
    assert rep.abel_gap < c.ABEL_TOLERANCE


def test_lxy_products_match_lvalues():
    for name, level in (("Lxy", 12), ("Luv", 16), ("Lzw", 27)):
        est, _ = c.extrapolate(c.euler_product_partial(name, 10**6)[1])
        assert abs(est - c.lvalue_at_2(level)) < 2e-3


def test_discrepancy_rows():
    rows = c.rankin_discrepancy(N=2 * 10**4, P=10**6)
    assert [r.family for r in rows] == ["L4", "L4V1", "L4V2"]
    for r in rows:
        assert r.gap > 0 and math.isfinite(r.product_error)


def test_geometric_checkpoints():
    cps = c.geometric_checkpoints(10**6)
    assert cps[0] == 10**4 and cps[-1] == 10**6 and len(cps) == 5
