"""Frequency-quotient oracles: exact rational values, limits, invariances."""

import math
import random
from fractions import Fraction as F

import pytest

from nodalkit.frequency import (
    FrequencyDegenerateError,
    blow_down_degree,
    blow_up,
    default_center_grid,
    doubling_check,
    frequency_curve,
    frequency_function,
    frequency_sup,
    frequency_value,
    height_energy,
    nondegeneracy_check,
    vanishing_order,
)
from nodalkit.poly import ClassParams, ExactMeasure, parse_polynomial, random_harmonic


def p2(text):
    return parse_polynomial(text, 2)


def p3(text):
    return parse_polynomial(text, 3)


# --------------------------------------------------------------- exact values


def test_height_energy_frozen():
    h, d = height_energy(p2("x"), (0, 0), 1)
    assert h == ExactMeasure(F(1, 2), 2)
    assert d == ExactMeasure(F(1, 2), 2)
    h2, d2 = height_energy(p2("x^2 - y^2"), (0, 0), 1)
    assert h2 == ExactMeasure(F(1, 2), 2)
    assert d2 == ExactMeasure(F(1), 2)


def test_homogeneous_frequency_is_the_degree():
    for text, k in (("x", 1), ("x^2 - y^2", 2), ("x^3 - 3*x*y^2", 3)):
        u = p2(text)
        for r in (F(1, 16), F(1, 3), 1, 7):
            assert frequency_value(u, (0, 0), r) == k
    assert frequency_value(p3("x*y*z"), (0, 0, 0), F(2, 5)) == 3


def test_frequency_curve_frozen():
    curve = frequency_curve(p2("x^2 - y^2 + x"), (0, 0), (F(1, 4), 1, 4))
    assert curve.values == (F(18, 17), F(3, 2), F(33, 17))
    assert curve.monotone_nondecreasing
    assert curve.radii == (F(1, 4), F(1), F(4))


def test_frequency_scalar_invariance_exact():
    u = p2("x^2 - y^2")
    center, r = (F(1, 5), F(1, 7)), F(3, 4)
    n = frequency_value(u, center, r)
    assert n == F(32812850, 19339993)
    assert frequency_value(u.scale(F(-7, 3)), center, r) == n
    assert frequency_value(u.scale(100), center, r) == n


def test_frequency_blowup_invariance_exact():
    u = p2("x^2 - y^2 + x")
    center, radius = (F(1, 4), F(1, 3)), F(1, 2)
    res = blow_up(u, center, radius)
    for t in (F(1, 3), 1, F(5, 2)):
        assert frequency_value(u, center, radius * t) == frequency_value(
            res.rescaled, (0, 0), t
        )


def test_degenerate_height_raises():
    fn = frequency_function(p2("x"), (0, 0))
    assert fn.value(F(1, 2)) == 1
    with pytest.raises(ValueError):
        fn.value(0)
    with pytest.raises(ValueError):
        frequency_function(p2("0"), (0, 0))
    with pytest.raises(ValueError):
        frequency_function(p2("x"), (0, 0, 0))
    # u vanishes identically on the unit circle, so the height is zero there
    ring = frequency_function(p2("x^2 + y^2 - 1"), (0, 0))
    with pytest.raises(FrequencyDegenerateError):
        ring.value(1)
    assert ring.value(F(1, 2)) > 0


# ------------------------------------------------------------------ monotone


def test_monotonicity_random_corpus_exact():
    rng = random.Random(424242)
    radii = [F(1, 64), F(1, 8), F(1, 2), F(3, 4), 1, 2, 5]
    checked = 0
    for dim in (2, 3):
        for _ in range(20):
            u = random_harmonic(dim, rng.randint(1, 5), rng)
            center = tuple(F(rng.randint(-2, 2), 4) for _ in range(dim))
            curve = frequency_curve(u, center, radii)
            assert curve.monotone_nondecreasing
            checked += 1
    assert checked == 40


def test_limits_match_order_and_degree():
    from nodalkit.poly import Polynomial

    rng = random.Random(777)
    checked = 0
    for _ in range(25):
        u = random_harmonic(2, rng.randint(2, 5), rng)
        center = (F(rng.randint(-1, 1), 3), F(rng.randint(-1, 1), 3))
        # subtracting the value at the center keeps u harmonic and forces a zero
        u = u - Polynomial.constant(2, u.evaluate(center))
        fn = frequency_function(u, center)
        order, leading = vanishing_order(u, center)
        assert order >= 1
        assert fn.limit_at_zero() == order
        assert fn.limit_at_infinity() == u.degree
        assert leading.is_harmonic
        checked += 1
    assert checked >= 20


def test_vanishing_order_frozen():
    u = p2("x^3 - 3*x*y^2 + x*y")
    assert vanishing_order(u, (0, 0)) == (2, p2("x*y"))
    assert vanishing_order(u, (0, F(1, 3))) == (2, p2("-x*y"))
    assert vanishing_order(p2("x^2 - y^2 + x"), (0, 0)) == (1, p2("x"))
    assert vanishing_order(p2("7"), (0, 0)) == (0, p2("7"))


def test_curve_csv_round_trip(tmp_path):
    curve = frequency_curve(p2("x^2 - y^2"), (0, 0), (F(1, 2), 1))
    path = tmp_path / "curve.csv"
    curve.write_csv(str(path))
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "center,r,N,N_float"
    assert lines[1] == "0/1;0/1,1/2,2/1,2.0"
    assert lines[2] == "0/1;0/1,1/1,2/1,2.0"


# ------------------------------------------------------------------ doubling


def test_doubling_frozen():
    rep = doubling_check(p2("x^2 - y^2 + x"), (0, 0), F(1, 2), 1)
    assert rep.mass_R.ratio(rep.mass_r) == F(160, 7)
    assert rep.witness == math.log2(F(160, 7))
    assert rep.witness == 4.514573172829758
    assert rep.reference == 5.0
    assert rep.ok
    rep2 = doubling_check(p2("x^2 - y^2 + x"), (0, 0), F(1, 2), 2)
    assert rep2.mass_r == ExactMeasure(F(7, 768), 2)
    assert rep2.mass_R == ExactMeasure(F(22, 3), 2)
    assert rep2.witness == 4.826038348289846
    assert rep2.reference == 5.6
    assert rep2.ok


def test_doubling_homogeneous_saturates():
    # mass grows exactly like r^(n + 2k), so the witness is the integer n + 2k
    rep = doubling_check(p2("x^2 - y^2"), (0, 0), F(1, 4), F(1, 2))
    assert rep.witness == 6.0 and rep.reference == 6.0 and rep.ok


def test_doubling_constant():
    rep = doubling_check(p2("5"), (0, 0), F(1, 2), 1)
    assert rep.witness == 2.0 and rep.reference == 2.0 and rep.ok


def test_doubling_random_corpus():
    rng = random.Random(1001)
    for dim in (2, 3):
        for _ in range(15):
            u = random_harmonic(dim, rng.randint(1, 4), rng)
            center = tuple(F(rng.randint(-1, 1), 2) for _ in range(dim))
            assert doubling_check(u, center, F(1, 2), 1).ok


def test_doubling_bad_radii():
    with pytest.raises(ValueError):
        doubling_check(p2("x"), (0, 0), 1, F(1, 2))


# ------------------------------------------------------------- nondegeneracy


def test_nondegeneracy_homogeneous_margin_is_one():
    u = p2("x^2 - y^2")
    params = ClassParams.for_polynomial(u)
    for r in (F(1, 8), F(1, 16)):
        rep = nondegeneracy_check(u, (0, 0), r, params)
        assert rep.margin == 1
        assert rep.exponent == 6


def test_nondegeneracy_offcenter_frozen():
    rep = nondegeneracy_check(p2("x"), (F(1, 2), 0), F(1, 8), ClassParams(2, 1, 1))
    assert rep.margin == 65
    assert rep.lhs == ExactMeasure(F(65, 32768), 2)
    assert rep.rhs_base == ExactMeasure(F(1, 8), 2)
    assert rep.exponent == 4
    assert rep.rhs_float == pytest.approx(float(F(1, 8)) * (1 / 8) ** 4 * 2 * math.pi)


def test_nondegeneracy_preconditions():
    u = p2("x")
    params = ClassParams(2, 1, 1)
    with pytest.raises(ValueError, match="radius"):
        nondegeneracy_check(u, (0, 0), F(1, 4), params)
    with pytest.raises(ValueError, match="center"):
        nondegeneracy_check(u, (F(9, 10), 0), F(1, 8), params)


def test_nondegeneracy_margin_positive_on_corpus():
    rng = random.Random(8080)
    for _ in range(12):
        u = random_harmonic(2, rng.randint(1, 4), rng)
        params = ClassParams.for_polynomial(u)
        c = (F(rng.randint(-2, 2), 4), F(rng.randint(-2, 2), 4))
        rep = nondegeneracy_check(u, c, F(1, 16), params)
        assert rep.margin > 0


# ------------------------------------------------------------------- blow-up


def test_blow_up_frozen():
    res = blow_up(p2("x^2 - y^2 + x"), (F(1, 4), F(1, 3)), F(2, 3))
    assert res.rescaled == p2("4/9*x^2 - 4/9*y^2 + x - 4/9*y + 29/144")
    assert res.normalization == ExactMeasure(F(15305, 20736), 2)
    h, _ = height_energy(res.rescaled, (0, 0), 1)
    assert h.ratio(res.normalization) == 1


def test_blow_up_unit_height_by_construction():
    rng = random.Random(5150)
    for _ in range(10):
        u = random_harmonic(2, rng.randint(1, 4), rng)
        res = blow_up(u, (F(1, 3), F(-1, 5)), F(1, 4))
        h, _ = height_energy(res.rescaled, (0, 0), 1)
        assert h.ratio(res.normalization) == 1


def test_blow_up_homogeneous_is_a_fixed_point():
    u = p2("x^3 - 3*x*y^2")
    base = blow_up(u, (0, 0), 1).normalized_coefficients()
    # radius 2: every float step is a power of two, so equality is exact
    assert blow_up(u, (0, 0), 2).normalized_coefficients() == base


def test_blow_up_converges_to_leading_part():
    res = blow_up(p2("x^2 - y^2 + x"), (0, 0), F(1, 1024))
    nc = res.normalized_coefficients()
    assert abs(nc[(1, 0)] - math.sqrt(2.0)) < 3e-3
    assert abs(nc[(2, 0)]) < 3e-3


def test_blow_up_rejects_bad_input():
    with pytest.raises(ValueError):
        blow_up(p2("x"), (0, 0), 0)
    with pytest.raises(ValueError):
        blow_up(p2("0"), (0, 0), 1)


# ----------------------------------------------------------------- blow-down


def test_blow_down_frozen():
    rep = blow_down_degree(p2("x^3 - 3*x*y^2 + x*y - 7"))
    assert rep.degree == 3 and rep.limit == 3
    assert [float(v) for v in rep.values] == [
        0.03526448362720403,
        2.9972132400024734,
        2.999975000330994,
        2.9999997500000624,
    ]
    assert 0 < rep.gap < F(1, 10**6)


def test_blow_down_constant():
    rep = blow_down_degree(p2("5"))
    assert rep.degree == 0 and rep.limit == 0 and rep.gap == 0
    assert all(v == 0 for v in rep.values)


def test_blow_down_corpus_hits_degree():
    rng = random.Random(31337)
    for dim in (2, 3):
        for _ in range(10):
            u = random_harmonic(dim, rng.randint(1, 5), rng)
            rep = blow_down_degree(u)
            assert rep.limit == u.degree
            assert float(rep.gap) < 1e-2


def test_blow_down_rejects():
    with pytest.raises(ValueError):
        blow_down_degree(p2("x^2"))  # not harmonic
    with pytest.raises(ValueError):
        blow_down_degree(p2("x"), radii=(1, 1))


# ----------------------------------------------------------------- supremum


def test_frequency_sup_frozen():
    sup = frequency_sup(p2("x^2 - y^2"))
    assert sup.value == 2
    assert sup.center == (F(0), F(0)) and sup.radius == F(1, 32)
    assert len(sup.table) == 18
    sup2 = frequency_sup(p2("x^2 - y^2 + x"))
    assert sup2.value == F(258, 257)
    assert sup2.center == (F(0), F(0)) and sup2.radius == F(1, 16)
    assert frequency_sup(p2("9")).value == 0


def test_frequency_sup_validation():
    assert len(default_center_grid(2)) == 9
    with pytest.raises(ValueError):
        frequency_sup(p2("x"), centers=[(1, 1)])
    with pytest.raises(ValueError):
        frequency_sup(p2("x"), radii=[F(1, 8)])
