"""Exact univariate helpers: Sturm chains, real-root isolation, refinement.

Polynomials are coefficient lists in ascending degree order.  The public
entry points take ``Fraction`` coefficients; internally everything is scaled
to primitive integer lists (positive scaling preserves signs, hence Sturm
counts and root sets).  Used by the singular-point solver, which needs the
real roots of exact resultants.
"""

from __future__ import annotations

import math
from fractions import Fraction


def trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def degree(c: list) -> int:
    return len(c) - 1


def evaluate(c: list, x):
    """Horner evaluation; exact for Fraction/int arguments."""
    out = 0 * x if c else 0
    for a in reversed(c):
        out = out * x + a
    return out


def derivative(c: list) -> list:
    return [i * a for i, a in enumerate(c)][1:]


def clear_denominators(coeffs: list[Fraction]) -> list[int]:
    """Scale by the positive lcm of denominators: integer coefficients."""
    fracs = [Fraction(a) for a in coeffs]
    lcm = 1
    for a in fracs:
        lcm = lcm * a.denominator // math.gcd(lcm, a.denominator)
    return trim([int(a * lcm) for a in fracs])


def primitive(c: list[int]) -> list[int]:
    c = trim(list(c))
    if not c:
        return c
    g = 0
    for a in c:
        g = math.gcd(g, abs(a))
    return [a // g for a in c]


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = trim([Fraction(v) for v in a])
    b = trim([Fraction(v) for v in b])
    db, lb = degree(b), b[-1]
    while len(a) - 1 >= db and trim(a):
        da, la = degree(a), a[-1]
        f = la / lb
        for i in range(db + 1):
            a[da - db + i] -= f * b[i]
        a = trim(a)
        if not a:
            break
    return a


def sturm_chain(c: list[int]) -> list[list[int]]:
    p0 = primitive(c)
    if degree(p0) < 1:
        return [p0] if p0 else []
    chain = [p0, primitive(derivative(p0))]
    while True:
        r = _frac_rem([Fraction(v) for v in chain[-2]], [Fraction(v) for v in chain[-1]])
        if not r:
            break
        chain.append([-v for v in primitive(clear_denominators(r))])
        if degree(chain[-1]) == 0:
            break
    return chain


def _sign(v) -> int:
    return 0 if v == 0 else (1 if v > 0 else -1)


def _variations(chain: list[list[int]], x: Fraction) -> int:
    signs = [s for s in (_sign(evaluate(c, x)) for c in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain: list[list[int]], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in (lo, hi]; endpoints must not be roots of chain[0]."""
    return _variations(chain, lo) - _variations(chain, hi)


def cauchy_bound(c: list[int]) -> Fraction:
    c = trim(list(c))
    lead = abs(c[-1])
    if len(c) == 1:
        return Fraction(1)
    return 1 + max(Fraction(abs(a), lead) for a in c[:-1])


def poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd via the Euclidean remainder sequence."""
    a, b = primitive(a), primitive(b)
    while b:
        r = _frac_rem([Fraction(v) for v in a], [Fraction(v) for v in b])
        a, b = b, primitive(clear_denominators(r)) if r else []
    out = primitive(a)
    if out and out[-1] < 0:
        out = [-v for v in out]
    return out


def exact_div(a: list[int], b: list[int]) -> list[Fraction]:
    """Exact division a/b over the rationals; raises if not divisible."""
    r = [Fraction(v) for v in a]
    q = [Fraction(0)] * (max(degree(a) - degree(b), -1) + 1)
    db, lb = degree(b), Fraction(b[-1])
    while trim(r) and degree(r) >= db:
        da = degree(r)
        f = r[-1] / lb
        q[da - db] = f
        for i in range(db + 1):
            r[da - db + i] -= f * b[i]
        r = trim(r)
    if trim(r):
        raise ArithmeticError("polynomials do not divide exactly")
    return q


def squarefree_part(c: list[int]) -> list[int]:
    c = primitive(c)
    if degree(c) < 2:
        return c
    g = poly_gcd(c, derivative(c))
    if degree(g) < 1:
        return c
    return primitive(clear_denominators(exact_div(c, g)))


def _nonroot_point(sf: list[int], lo: Fraction, hi: Fraction) -> Fraction:
    """A point strictly inside (lo, hi) that is not a root of sf."""
    for k in (Fraction(1, 2), Fraction(13, 27), Fraction(5, 11), Fraction(7, 17), Fraction(11, 23)):
        m = lo + (hi - lo) * k
        if evaluate(sf, m) != 0:
            return m
    # finitely many roots: a fine enough grid must succeed
    for j in range(1, 64):
        m = lo + (hi - lo) * Fraction(2 * j - 1, 128)
        if evaluate(sf, m) != 0:
            return m
    raise ArithmeticError("could not find a non-root interior point")


def isolate_real_roots(coeffs: list[Fraction]) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, each holding exactly one real root.

    The input need not be square-free; multiplicities collapse.  Exact
    rational roots discovered during bisection come back as zero-width
    intervals (r, r).
    """
    ints = clear_denominators([Fraction(v) for v in coeffs])
    if not ints:
        raise ValueError("the zero polynomial has every root")
    if degree(ints) == 0:
        return []
    return isolate_squarefree(squarefree_part(ints))


def isolate_squarefree(sf: list[int]) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for a square-free primitive integer polynomial."""
    if degree(sf) < 1:
        return []
    chain = sturm_chain(sf)
    bound = cauchy_bound(sf) + 1
    lo, hi = -bound, bound
    while evaluate(sf, lo) == 0:
        lo -= 1
    while evaluate(sf, hi) == 0:
        hi += 1
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        k = count_roots(chain, a, b)
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        m = _nonroot_point(sf, a, b)
        stack.append((a, m))
        stack.append((m, b))
    out.sort()
    return out


def refine_root(coeffs: list[Fraction], lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval below ``width`` by exact bisection.

    Returns a zero-width interval when the root is hit exactly.  The input
    interval must bracket a sign change of the square-free part (as produced
    by :func:`isolate_real_roots`).
    """
    sf = squarefree_part(clear_denominators([Fraction(v) for v in coeffs]))
    return bisect_refine(sf, lo, hi, width)


def bisect_refine(sf: list[int], lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Same contract as :func:`refine_root` with the square-free part given."""
    if lo == hi:
        return lo, hi
    s_lo = _sign(evaluate(sf, lo))
    if s_lo == 0:
        return lo, lo
    if _sign(evaluate(sf, hi)) == 0:
        return hi, hi
    while hi - lo > width:
        m = (lo + hi) / 2
        s_m = _sign(evaluate(sf, m))
        if s_m == 0:
            return m, m
        if s_m == s_lo:
            lo = m
        else:
            hi = m
    return lo, hi
