"""Zero-set geometry oracles: singular points, domain counts, arc length.

The frozen counts come from hand analysis of small harmonic polynomials
(degree-k homogeneous ones split the plane into 2k sectors; adding lower
order terms merges or splits sectors in ways countable by hand).
"""

import math
import random
from fractions import Fraction as F

import numpy as np
import pytest

from nodalkit.nodal import (
    ClassBounds,
    DegenerateNodalSetError,
    UnresolvedCountError,
    class_bounds,
    count_domains,
    enclosing_radius,
    euler_check,
    length_profile,
    nodal_length,
    singular_points,
    sylvester_resultant,
)
from nodalkit.poly import Polynomial, parse_polynomial, random_harmonic


def p2(text):
    return parse_polynomial(text, 2)


# ---------------------------------------------------------------- resultants


def test_sylvester_scalar_frozen():
    # Res(y - 1, y^2 - 3) = q(1) = -2
    assert sylvester_resultant([[-1], [1]], [[-3], [], [1]]) == [-2]


def test_sylvester_polynomial_entries_frozen():
    # Res_y(3x^2 - 3y^2, -6xy) = 108 x^4
    pc = [[0, 0, 3], [], [-3]]
    qc = [[], [0, -6]]
    assert sylvester_resultant(pc, qc) == [0, 0, 0, 0, 108]


def test_sylvester_matches_numpy_determinant():
    rng = random.Random(5555)
    for _ in range(15):
        dp, dq = rng.randint(1, 3), rng.randint(1, 3)
        a = [rng.randint(-5, 5) for _ in range(dp)] + [rng.randint(1, 5)]
        b = [rng.randint(-5, 5) for _ in range(dq)] + [rng.randint(1, 5)]
        got = sylvester_resultant([[v] if v else [] for v in a], [[v] if v else [] for v in b])
        m = dp + dq
        mat = np.zeros((m, m))
        for r in range(dq):
            for k in range(dp + 1):
                mat[r, r + k] = a[dp - k]
        for r in range(dp):
            for k in range(dq + 1):
                mat[dq + r, r + k] = b[dq - k]
        expected = round(float(np.linalg.det(mat)))
        assert (got[0] if got else 0) == expected


# ------------------------------------------------------------ singular points


def test_singular_point_orders_frozen():
    pts = singular_points(p2("x^3 - 3*x*y^2"))
    assert len(pts) == 1
    assert pts[0].exact and pts[0].location == (0, 0) and pts[0].order == 3
    assert pts[0].residual == 0.0

    pts = singular_points(p2("x^3 - 3*x*y^2 + x*y"))
    assert [(s.location, s.order) for s in pts] == [((0, 0), 2), ((0, F(1, 3)), 2)]
    assert all(s.exact for s in pts)

    assert singular_points(p2("x^3 - 3*x*y^2 + 1")) == []
    assert singular_points(p2("x^2 - y^2 + x")) == []
    assert singular_points(p2("x + 10")) == []
    assert singular_points(p2("x^2 - y^2")) [0].order == 2


def test_singular_points_radius_filter():
    u = p2("(x - 2)^2 - y^2")
    assert singular_points(u) == []
    everywhere = singular_points(u, radius=None)
    assert [(s.location, s.order) for s in everywhere] == [((2, 0), 2)]
    assert len(singular_points(u, radius=3)) == 1


def test_singular_points_nonharmonic_ok():
    # the solver does not require harmonicity
    pts = singular_points(p2("x^2 + y^2"))
    assert [(s.location, s.order) for s in pts] == [((0, 0), 2)]


def test_degenerate_critical_sets_raise():
    with pytest.raises(DegenerateNodalSetError):
        singular_points(p2("x^2"))  # critical line x = 0
    with pytest.raises(DegenerateNodalSetError):
        singular_points(p2("x^2*y^2"))  # gradient components share x*y
    with pytest.raises(DegenerateNodalSetError):
        singular_points(p2("7"))


# ------------------------------------------------------------- domain counts


def test_count_domains_frozen():
    assert count_domains(p2("x"), 1, 64) == 2
    assert count_domains(p2("x^2 - y^2"), 1, 64) == 4
    assert count_domains(p2("x^3 - 3*x*y^2"), 1, 64) == 6
    assert count_domains(p2("x^3 - 3*x*y^2 + 1"), 4, 64) == 4
    assert count_domains(p2("7"), 1, 64) == 1


def test_count_domains_validation():
    with pytest.raises(ValueError):
        count_domains(p2("x"), 0, 64)
    with pytest.raises(ValueError):
        count_domains(p2("x"), 1, 32)
    with pytest.raises(ValueError):
        count_domains(parse_polynomial("x", 3), 1, 64)


def test_count_accepts_plain_tuples():
    u = p2("x^3 - 3*x*y^2")
    assert count_domains(u, 1, 64, singular=[(0.0, 0.0)]) == 6


# -------------------------------------------------------------- count identity


FOUR_PANELS = [
    ("x^3 - 3*x*y^2", 6, F(1)),
    ("x^3 - 3*x*y^2 + 1", 4, F(5, 4)),
    ("x^3 - 3*x*y^2 + x*y", 6, F(5, 4)),
    ("x^3 - 3*x*y^2 + x^2 - y^2", 5, F(5, 2)),
]


def test_euler_identity_frozen_panels():
    for text, k, radius in FOUR_PANELS:
        rep = euler_check(p2(text), resolution=64)
        assert rep.ok, text
        assert rep.k_formula == k and rep.k_floodfill == k
        assert rep.radius == radius
        assert rep.N_infinity == 3


def test_euler_report_jsonable():
    rep = euler_check(p2("x^3 - 3*x*y^2 + x*y"), resolution=64)
    data = rep.to_jsonable()
    assert data["pass"] is True and data["k_formula"] == 6
    assert len(data["singular"]) == 2
    assert data["singular"][1]["order"] == 2


def test_euler_rejects_bad_input():
    with pytest.raises(ValueError):
        euler_check(p2("x^2"))
    with pytest.raises(ValueError):
        euler_check(p2("5"))
    with pytest.raises(ValueError):
        euler_check(parse_polynomial("x*y*z", 3))


def test_euler_random_corpus():
    rng = random.Random(90210)
    done = 0
    while done < 8:
        u = random_harmonic(2, rng.randint(1, 4), rng, constant_chance=0.5)
        try:
            rep = euler_check(u, resolution=64)
        except (DegenerateNodalSetError, UnresolvedCountError):
            continue
        assert rep.ok, str(u)
        done += 1


def test_class_bounds_frozen():
    assert class_bounds(p2("x^3 - 3*x*y^2"), 64) == ClassBounds(6, 3, True, True)
    assert class_bounds(p2("x^3 - 3*x*y^2 + 1"), 64) == ClassBounds(4, 3, True, True)
    assert class_bounds(p2("x"), 64) == ClassBounds(2, 1, True, True)


def test_rotation_invariance_exact_rotation():
    # rotate by the 3-4-5 angle: an exact orthogonal change of variables
    u = p2("x^3 - 3*x*y^2")
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    rotated = u.compose([x.scale(F(3, 5)) - y.scale(F(4, 5)),
                         x.scale(F(4, 5)) + y.scale(F(3, 5))])
    assert rotated.is_harmonic and rotated != u
    pts = singular_points(rotated)
    assert [(s.location, s.order) for s in pts] == [((0, 0), 3)]
    rep = euler_check(rotated, resolution=64)
    assert rep.ok and rep.k_floodfill == 6
    a = nodal_length(rotated, F(1, 2), 64)
    b = nodal_length(u, F(1, 2), 64)
    assert abs(a - b) < 0.02 * b


def test_enclosing_radius_frozen():
    assert enclosing_radius(p2("x^3 - 3*x*y^2")) == 1
    assert enclosing_radius(p2("x^3 - 3*x*y^2 + 1")) == F(5, 4)
    assert enclosing_radius(p2("x^3 - 3*x*y^2 + x^2 - y^2")) == F(5, 2)
    with pytest.raises(ValueError):
        enclosing_radius(p2("3"))


# ----------------------------------------------------------------- arc length


def test_nodal_length_frozen():
    assert nodal_length(p2("x"), F(1, 2)) == 1.0
    assert nodal_length(p2("x^2 - y^2"), F(1, 2)) == pytest.approx(2.0, rel=1e-9)
    assert nodal_length(p2("x^3 - 3*x*y^2"), F(1, 2)) == pytest.approx(3.0, rel=5e-3)
    assert nodal_length(p2("x^2 - y^2 + 10"), F(1, 2)) == 0.0


def test_length_profile_ladder():
    value, ladder = length_profile(p2("x^2 - y^2"), F(1, 2), resolution=32)
    assert ladder[0][0] == 32
    assert value == ladder[-1][1]
    assert len(ladder) >= 2


def test_length_scales_linearly():
    # homogeneous zero sets are unions of rays, so length is linear in radius
    u = p2("x^3 - 3*x*y^2")
    one = nodal_length(u, 1)
    half = nodal_length(u, F(1, 2))
    assert one == pytest.approx(2 * half, rel=1e-2)


def test_length_validation():
    with pytest.raises(ValueError):
        nodal_length(p2("x"), 0)
    with pytest.raises(ValueError):
        nodal_length(p2("x"), 1, resolution=8)
    with pytest.raises(ValueError):
        nodal_length(parse_polynomial("x", 3), 1)
