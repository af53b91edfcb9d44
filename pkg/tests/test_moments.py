import math

import pytest

from etapowers import moments
from etapowers.errors import UnknownLawError
from etapowers.series import CoeffSeries, EtaProduct, expand_eta_product


def test_law_table():
    assert set(moments.LAWS) == {
        ("L1", "abs_sum"), ("L2", "abs_sum"), ("L2", "square_sum"), ("L2V1", "square_sum"),
        ("L3", "abs_sum"), ("L3", "square_sum"), ("L3", "max_abs"), ("L4", "square_sum"),
        ("L4V1", "square_sum"), ("L4V2", "square_sum"), ("L6", "square_sum"), ("L8", "square_sum"),
        ("L12", "square_sum"), ("L24", "square_sum"),
    }
    with pytest.raises(UnknownLawError):
        moments.get_law("L2V2", "square_sum")


def test_prefix_stats_examples():
    l1 = expand_eta_product(EtaProduct.power(1), 7)  # 1 -1 -1 0 0 1 0 1
    (s,) = moments.prefix_stats(l1, [7])
    assert (s.abs_sum, s.square_sum, s.max_abs, s.partial_sum) == (5, 5, 1, 1)
    (s,) = moments.prefix_stats(expand_eta_product(EtaProduct.power(3), 6), [6])
    assert (s.abs_sum, s.square_sum, s.max_abs) == (16, 84, 7)
    (s,) = moments.prefix_stats(CoeffSeries.from_list([0, 0, 0]), [2])
    assert (s.abs_sum, s.square_sum, s.max_abs, s.partial_sum) == (0, 0, 0, 0)
    with pytest.raises(ValueError):
        moments.prefix_stats(l1, [8])


def test_prefix_stats_exact_for_huge_values():
    t = expand_eta_product(EtaProduct.power(24), 3000)
    (s,) = moments.prefix_stats(t, [3000])
    assert s.square_sum == sum(v * v for v in t.tolist())


def test_ratios_tend_to_one():
    for family, stat in [("L3", "square_sum"), ("L1", "abs_sum"), ("L3", "abs_sum"), ("L3", "max_abs")]:
        r = moments.normalized_ratio(family, stat, 10**5)
        assert abs(r - 1) < 0.02, (family, stat, r)


def test_l24_ratio_near_b():
    assert abs(moments.normalized_ratio("L24", "square_sum", 10**4) / moments.B_L24 - 1) < 0.1


def test_fit_constant():
    assert moments.fit_constant([(1, 2.5), (2, 2.5), (3, 2.5)]) == (2.5, 0.0)
    a, resid = moments.fit_constant([(N, 3 + 2 / math.log(N)) for N in (10, 100, 1000, 10**4)], "log_corrected")
    assert a == pytest.approx(3) and resid < 1e-12
    with pytest.raises(ValueError):
        moments.fit_constant([(1, 1.0), (2, 1.0)])
    with pytest.raises(ValueError):
        moments.fit_constant([(10, 1.0), (20, 1.0), (30, 1.0)], "cubic")


def test_c_fit_near_constant():
    pts = moments.checkpoint_ratios("L2", "abs_sum", [10**4, 10**5, 3 * 10**5])
    a, _ = moments.fit_constant(pts, "log_corrected")
    assert abs(a / moments.C_L2 - 1) < 0.05


def test_a_estimate_reported():
    pts = moments.checkpoint_ratios("L12", "square_sum", moments.default_checkpoints(10**4))
    a, resid = moments.fit_constant(pts)
    assert a > 0 and math.isfinite(resid)


def test_lehmer_scan():
    assert moments.lehmer_scan(expand_eta_product(EtaProduct.power(1), 10)) == 3
    assert moments.lehmer_scan(expand_eta_product(EtaProduct.power(24), 20000)) is None


def test_l3_partial_sums():
    assert moments.l3_partial_sum_check(0)
    assert moments.l3_partial_sum_check(6)
    assert moments.l3_partial_sum_check(10**5)
    assert [moments.l3_partial_sum_closed_form(n) for n in range(7)] == [1, -2, -2, 3, 3, 3, -4]


def test_l1_partial_sums_and_l3_bounds():
    N = 10**5
    l1 = expand_eta_product(EtaProduct.power(1), N).tolist()
    l3 = expand_eta_product(EtaProduct.power(3), N).tolist()
    acc = acc3 = best = 0
    for n in range(N + 1):
        acc += l1[n]
        acc3 += l3[n]
        best = max(best, abs(l3[n]))
        assert acc in (-1, 0, 1)
        if n % 997 == 0:
            assert best == moments.l3_max_closed_form(n)
        if n >= 100:
            assert abs(acc3) / math.sqrt(2 * n) <= 1.1


def test_default_checkpoints():
    assert moments.default_checkpoints(10**6) == [100, 1000, 10**4, 10**5, 10**6]
    assert moments.default_checkpoints(5000) == [100, 1000, 5000]


def test_reported_shapes_are_finite():
    s = moments.family_series("L2V2", 10**4)
    shapes = moments.reported_shapes(s, 10**4)
    assert all(math.isfinite(v) for v in shapes.values())
