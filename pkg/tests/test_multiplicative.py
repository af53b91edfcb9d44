import math
import random

import pytest

from etapowers import arithmetic as ar
from etapowers.errors import FormulaError
from etapowers.multiplicative import (FAMILIES, QuadIntSqrtMinus3 as Q, coefficient_26, coefficient_via_f,
                                      f_of, f_prime, f_prime_power, family_eta, phi)
from etapowers.series import EtaProduct, expand_eta_product


def test_ring_laws():
    a, b = Q(2, 3), Q(-1, 5)
    assert a * b == Q(2 * -1 - 3 * 3 * 5, 2 * 5 + 3 * -1)
    assert (a * b).norm() == a.norm() * b.norm()
    assert Q(4, 0).is_real and Q(0, 7).is_imaginary and not Q(1, 1).is_real
    assert Q(0, 1) * Q(0, 1) == -3
    assert a - a == 0 and 2 * a == a + a


def test_family_table():
    maps = {"L1": (24, 1), "L2": (12, 1), "L2V1": (8, 1), "L2V2": (6, 1), "L3": (8, 1), "L4": (6, 1),
            "L4V1": (4, 1), "L4V2": (3, 1), "L6": (4, 1), "L8": (3, 1), "L10": (12, 5), "L14": (12, 7)}
    assert {k: (f.A, f.B) for k, f in FAMILIES.items()} == maps
    assert FAMILIES["L10"].scale == 48 and FAMILIES["L14"].scale == Q(0, 360)
    with pytest.raises(KeyError):
        family_eta("L5")


def test_f_prime_examples():
    assert f_prime("L10", 5) == 48
    assert phi(1, 2) == -1
    assert f_prime("L14", 7) == Q(0, 360)
    assert f_prime("L4", 7) == -4
    assert f_prime("L10", 2) == 0 and f_prime("L14", 3) == Q(0)


def test_f_prime_power_examples():
    assert f_prime_power("L2", 5, 2) == -1
    assert f_prime_power("L2", 13, 1) == -2
    assert f_prime_power("L8", 2, 2) == -8
    assert f_prime_power("L2V2", 7, 1) == -1
    assert f_prime_power("L2", 97, 0) == 1


def test_f_of_examples():
    assert f_of("L1", 25) == -1
    assert all(f_of(name, 1) == 1 for name in FAMILIES)
    assert f_of("L3", 49) == -7


def test_coefficient_examples():
    assert coefficient_via_f("L10", 0) == 1
    assert coefficient_via_f("L14", 1) == -14
    assert coefficient_via_f("L6", 1) == -6


def test_l2_quartic_recurrence():
    # p = 1 mod 12 with quartic flag +1: f(p^r) = r + 1 obeys f_r = f_1 f_(r-1) - f_(r-2)
    primes = [p for p in ar.sieve(2000).tolist() if p % 12 == 1 and ar.residue_flags(p).quartic == 1]
    assert primes
    for p in primes:
        vals = [f_prime_power("L2", p, r) for r in range(7)]
        assert vals == [r + 1 for r in range(7)]
        assert all(vals[r] == vals[1] * vals[r - 1] - vals[r - 2] for r in range(2, 7))


@pytest.mark.parametrize("name", list(FAMILIES))
def test_central_equivalence_small(name):
    fam = FAMILIES[name]
    series = expand_eta_product(fam.eta, 3000).tolist()
    assert [coefficient_via_f(fam, n) for n in range(3001)] == series


@pytest.mark.parametrize("name", list(FAMILIES))
def test_f_of_multiplicative(name):
    fam = FAMILIES[name]
    rng = random.Random(hash(name) & 0xFFFF)
    done = 0
    while done < 1000:
        m1, m2 = rng.randrange(1, 10**5), rng.randrange(1, 10**5)
        if math.gcd(m1, m2) != 1:
            continue
        assert f_of(fam, m1 * m2) == f_of(fam, m1) * f_of(fam, m2)
        done += 1


def test_l14_purity():
    fam = FAMILIES["L14"]
    for n in range(2000):
        v = f_of(fam, 12 * n + 7)
        assert v.is_imaginary
    sevens = [p for p in ar.sieve(400).tolist() if p % 12 == 7]
    for i, p in enumerate(sevens):
        for q in sevens[i:]:
            assert f_of(fam, p * q).is_real


def test_coefficient_26_examples():
    series = expand_eta_product(EtaProduct.power(26), 20).tolist()
    assert coefficient_26(13) == 1
    assert coefficient_26(37) == series[2]
    assert coefficient_26(61) == series[4]
    with pytest.raises(ValueError):
        coefficient_26(17)


def test_divisibility_failure_is_reported():
    import etapowers.multiplicative as mp

    fam = mp.FAMILIES["L10"]
    broken = mp.FamilySpec(fam.name, fam.eta, fam.A, fam.B, 7, fam.weight_shift, fam.split, fam.table)
    with pytest.raises(FormulaError):
        coefficient_via_f(broken, 0)
