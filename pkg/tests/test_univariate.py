"""Exact one-variable root machinery: Sturm counts, isolation, refinement."""

import random
from fractions import Fraction as F

import pytest

from nodalkit.univariate import (
    bisect_refine,
    cauchy_bound,
    count_roots,
    degree,
    derivative,
    evaluate,
    exact_div,
    isolate_real_roots,
    isolate_squarefree,
    poly_gcd,
    primitive,
    refine_root,
    squarefree_part,
    sturm_chain,
    trim,
)


def from_roots(roots):
    """Integer coefficients (ascending) of prod (x - r) for integer roots."""
    c = [F(1)]
    for r in roots:
        c = [F(0)] + c
        for i in range(len(c) - 1):
            c[i] -= r * c[i + 1]
    return [int(v) for v in c]


def test_basic_helpers():
    assert trim([1, 2, 0, 0]) == [1, 2]
    assert trim([0, 0]) == []
    assert degree([3]) == 0 and degree([]) == -1 and degree([0, 0, 1]) == 2
    assert evaluate([1, 2, 3], F(1, 2)) == 1 + 1 + F(3, 4)
    assert derivative([5, 1, 4]) == [1, 8]
    assert primitive([6, -9, 12]) == [2, -3, 4]
    assert primitive([-4, -8]) == [-1, -2]  # sign preserved, only magnitude scaled


def test_sturm_counts_exactly():
    # 3x^3 - 4x^2 - 5x + 2 = (3x - 1)(x - 2)(x + 1): roots -1, 1/3, 2
    c = [2, -5, -4, 3]
    assert evaluate([F(v) for v in c], F(1, 3)) == 0
    chain = sturm_chain(c)
    b = cauchy_bound(c)
    assert count_roots(chain, -b, b) == 3
    assert count_roots(chain, F(0), b) == 2
    assert count_roots(chain, F(-3), F(0)) == 1
    assert count_roots(chain, F(1, 2), F(3, 4)) == 0


def test_isolation_reconstructs_rational_roots():
    coeffs = [F(v) for v in [2, -5, -4, 3]]
    boxes = isolate_real_roots(coeffs)
    assert len(boxes) == 3
    found = []
    for lo, hi in boxes:
        lo, hi = refine_root(coeffs, lo, hi, F(1, 10**12))
        cand = F((lo + hi) / 2).limit_denominator(10**6)
        assert lo <= cand <= hi and evaluate(coeffs, cand) == 0
        found.append(cand)
    assert sorted(found) == [F(-1), F(1, 3), F(2)]


def test_isolation_with_repeated_roots():
    # (x - 1)^2 (x + 1): isolation sees the squarefree part
    c = [F(v) for v in from_roots([1, 1, -1])]
    boxes = isolate_real_roots(c)
    assert len(boxes) == 2


def test_irrational_root_refinement():
    coeffs = [F(-2), F(0), F(1)]  # x^2 - 2
    boxes = isolate_real_roots(coeffs)
    assert len(boxes) == 2
    lo, hi = next(b for b in boxes if b[1] > 0)  # interval holding +sqrt(2)
    lo, hi = refine_root(coeffs, lo, hi, F(1, 10**11))
    mid = float((lo + hi) / 2)
    assert abs(mid - 2**0.5) < 1e-10


def test_no_real_roots():
    assert isolate_real_roots([F(1), F(0), F(1)]) == []
    assert isolate_squarefree([1, 1, 1]) == []


def test_exact_division_and_gcd():
    a = from_roots([1, 2, 3])
    b = from_roots([1, 2])
    assert poly_gcd(a, b) == b or poly_gcd(a, b) == primitive(b)
    q = exact_div(a, b)
    assert trim(q) == [F(-3), F(1)]
    with pytest.raises(ArithmeticError):
        exact_div(from_roots([1, 2]), [1, 1])


def test_squarefree_part():
    sq = squarefree_part(from_roots([2, 2, 2, -1]))
    chain = sturm_chain(sq)
    b = cauchy_bound(sq)
    assert count_roots(chain, -b, b) == 2
    assert degree(sq) == 2


def test_bisect_refine_exact_hit():
    lo, hi = bisect_refine([-1, 0, 1], F(0), F(2), F(1, 10**6))
    assert lo == hi == 1  # lands exactly on the root


def test_random_integer_root_corpus():
    rng = random.Random(1234)
    for _ in range(20):
        roots = sorted(rng.sample(range(-8, 9), rng.randint(1, 5)))
        coeffs = [F(v) for v in from_roots(roots)]
        boxes = isolate_real_roots(coeffs)
        assert len(boxes) == len(roots)
        for (lo, hi), r in zip(sorted(boxes), roots):
            lo, hi = refine_root(coeffs, lo, hi, F(1, 10**9))
            assert lo <= r <= hi
