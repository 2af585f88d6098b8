"""Plane nodal-set analysis: singular points, domain counts, length.

The solver pipeline is exact end to end until reporting: gradient systems
are reduced by Sylvester resultants over the integers, real roots are
isolated with Sturm sequences, and coordinate candidates are paired by
evaluating the gradient on shrinking rational boxes.  Grid scans (domain
counting, arc length) are floating point but must pass stability ladders
before their numbers are trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import univariate as uv
from ._kernels import label_cells, marching_segments
from .grids import abs_eval_on_axes, eval_at_points, eval_on_axes, exact_sign, fraction_axis
from .poly import Polynomial


class DegenerateNodalSetError(ValueError):
    """The critical set is not a finite set of points."""


class UnresolvedCountError(RuntimeError):
    """A grid scan failed its stability ladder at the maximum refinement."""


# --------------------------------------------------------------------------
# exact critical-point solver


def _as_coeff_lists(p: Polynomial, main: int) -> list[list[Fraction]]:
    """Write ``p`` as a polynomial in variable ``main``.

    Entry ``[k]`` is the ascending coefficient list, in the other variable,
    of ``main^k``.
    """
    other = 1 - main
    dm = max((m[main] for m in p.terms), default=0)
    do = max((m[other] for m in p.terms), default=0)
    out = [[Fraction(0)] * (do + 1) for _ in range(dm + 1)]
    for mono, c in p.terms.items():
        out[mono[main]][mono[other]] = c
    while len(out) > 1 and all(v == 0 for v in out[-1]):
        out.pop()
    return out


def _cleared_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    lcm = 1
    for row in rows:
        for v in row:
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    return [uv.trim([int(v * lcm) for v in row]) for row in rows]


def _int_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return uv.trim(out)


def _int_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return uv.trim(out)


def sylvester_resultant(pc: list[list[int]], qc: list[list[int]]) -> list[int]:
    """Resultant eliminating the main variable of two coefficient tables.

    ``pc[k]`` is the coefficient (an integer polynomial in the kept
    variable) of ``main^k``.  Returns the determinant of the Sylvester
    matrix, computed by subset dynamic programming over polynomial entries;
    an empty list means the resultant is identically zero.
    """
    dp, dq = len(pc) - 1, len(qc) - 1
    m = dp + dq
    if m == 0:
        return [1]
    rows: list[list[list[int]]] = [[[] for _ in range(m)] for _ in range(m)]
    for r in range(dq):
        for k in range(dp + 1):
            rows[r][r + k] = pc[dp - k]
    for r in range(dp):
        for k in range(dq + 1):
            rows[dq + r][r + k] = qc[dq - k]
    prev: dict[int, list[int]] = {0: [1]}
    for row in range(m):
        cur: dict[int, list[int]] = {}
        for mask, val in prev.items():
            for c in range(m):
                bit = 1 << c
                if mask & bit or not rows[row][c]:
                    continue
                term = _int_mul(val, rows[row][c])
                if (mask >> (c + 1)).bit_count() % 2:
                    term = [-t for t in term]
                key = mask | bit
                acc = cur.get(key)
                cur[key] = term if acc is None else _int_add(acc, term)
        prev = {k: v for k, v in cur.items() if v}
        if not prev:
            return []
    return prev.get((1 << m) - 1, [])


def _axis_candidates(p: Polynomial, q: Polynomial, axis: int):
    """Isolating intervals for one coordinate of the common zeros of p, q.

    Eliminates the other variable by resultant.  Returns (intervals,
    squarefree integer resultant); raises when the common zero set has a
    positive-dimensional component in this direction.
    """
    other = 1 - axis
    pc = _cleared_rows(_as_coeff_lists(p, main=other))
    qc = _cleared_rows(_as_coeff_lists(q, main=other))
    if len(pc) == 1 and len(qc) == 1:
        # neither gradient component involves the eliminated variable
        g = uv.poly_gcd(pc[0], qc[0])
        if uv.degree(g) >= 1 and uv.isolate_real_roots([Fraction(v) for v in g]):
            raise DegenerateNodalSetError("critical set contains a full line")
        return [], []
    res = sylvester_resultant(pc, qc)
    if not res:
        raise DegenerateNodalSetError(
            "gradient components share a factor: critical set is a curve"
        )
    if uv.degree(res) == 0:
        return [], []
    sf = uv.squarefree_part(res)
    return uv.isolate_squarefree(sf), sf


_BOX_WIDTH = Fraction(1, 10**20)


def _refine_axis(sf: list[int], interval) -> tuple[Fraction, Fraction, bool]:
    """(midpoint, half width, exact?) for one isolated coordinate root."""
    lo, hi = uv.bisect_refine(sf, interval[0], interval[1], _BOX_WIDTH)
    if lo == hi:
        return lo, Fraction(0), True
    mid = (lo + hi) / 2
    cand = mid.limit_denominator(10**6)
    if lo <= cand <= hi and uv.evaluate(sf, cand) == 0:
        return cand, Fraction(0), True
    return mid, (hi - lo) / 2, False


def _abs_poly(g: Polynomial) -> Polynomial:
    return Polynomial(g.dimension, {m: abs(c) for m, c in g.terms.items()})


def _box_drift(g: Polynomial, mx: Fraction, my: Fraction, dx: Fraction, dy: Fraction) -> Fraction:
    """Bound for |g(point) - g(midpoint)| over the rational box."""
    if dx == 0 and dy == 0:
        return Fraction(0)
    cx, cy = abs(mx) + dx, abs(my) + dy
    bx = _abs_poly(g.derivative(0)).evaluate((cx, cy))
    by = _abs_poly(g.derivative(1)).evaluate((cx, cy))
    return bx * dx + by * dy


@dataclass(frozen=True)
class _Candidate:
    """A certified common zero of the gradient, as a rational box."""

    mx: Fraction
    my: Fraction
    dx: Fraction
    dy: Fraction
    exact: bool
    on_zero: bool
    order: int

    def point(self):
        if self.exact:
            return self.mx, self.my
        return float(self.mx), float(self.my)

    def radius_squared(self) -> Fraction:
        return self.mx * self.mx + self.my * self.my


def _vanishing_level(u: Polynomial, cand_mx, cand_my, dx, dy, exact: bool) -> int:
    """Order of vanishing of u - u(point) at the (boxed) point."""
    deg = u.degree
    if exact:
        shifted = u.shift_scale((cand_mx, cand_my))
        centered = shifted - Polynomial.constant(2, shifted.coefficient((0, 0)))
        if centered.is_zero:
            raise DegenerateNodalSetError("constant input")
        order, _ = centered.lowest_part()
        return order
    partials = {(0, 0): u}

    def partial(ax: int, ay: int) -> Polynomial:
        key = (ax, ay)
        if key not in partials:
            if ax:
                partials[key] = partial(ax - 1, ay).derivative(0)
            else:
                partials[key] = partial(ax, ay - 1).derivative(1)
        return partials[key]

    for k in range(1, deg + 1):
        for ax in range(k + 1):
            ay = k - ax
            g = partial(ax, ay)
            fact = math.factorial(ax) * math.factorial(ay)
            val = abs(g.evaluate((cand_mx, cand_my))) / fact
            drift = _box_drift(g, cand_mx, cand_my, dx, dy) / fact
            if val > 2 * drift:
                return k
    raise UnresolvedCountError("could not resolve the vanishing order")


def _critical_points(u: Polynomial) -> list[_Candidate]:
    if u.dimension != 2:
        raise ValueError("critical-point analysis is implemented for two variables")
    if u.degree < 1:
        raise DegenerateNodalSetError("constant input has no isolated critical points")
    p, q = u.derivative(0), u.derivative(1)
    if p.is_zero or q.is_zero:
        # u depends on a single variable: critical sets are unions of lines
        g = p if q.is_zero else q
        main = 0 if q.is_zero else 1
        coeffs = [row[0] for row in _as_coeff_lists(g, main=main)]
        if uv.isolate_real_roots(coeffs):
            raise DegenerateNodalSetError("critical set contains a full line")
        return []
    x_int, x_sf = _axis_candidates(p, q, axis=0)
    y_int, y_sf = _axis_candidates(p, q, axis=1)
    if not x_int or not y_int:
        return []
    xs = [_refine_axis(x_sf, iv) for iv in x_int]
    ys = [_refine_axis(y_sf, iv) for iv in y_int]
    out: list[_Candidate] = []
    for mx, dx, xex in xs:
        for my, dy, yex in ys:
            cand = _accept_pair(u, p, q, mx, dx, xex, my, dy, yex)
            if cand is not None:
                out.append(cand)
    out.sort(key=lambda c: (float(c.mx), float(c.my)))
    return out


def _accept_pair(u, p, q, mx, dx, xex, my, dy, yex) -> _Candidate | None:
    vp = p.evaluate((mx, my))
    vq = q.evaluate((mx, my))
    bp = _box_drift(p, mx, my, dx, dy)
    bq = _box_drift(q, mx, my, dx, dy)
    if abs(vp) > bp or abs(vq) > bq:
        return None
    exact = xex and yex
    if exact and (vp != 0 or vq != 0):
        return None
    vu = u.evaluate((mx, my))
    bu = _box_drift(u, mx, my, dx, dy)
    on_zero = (vu == 0) if exact else (abs(vu) <= bu)
    order = _vanishing_level(u, mx, my, dx, dy, exact)
    return _Candidate(mx, my, dx, dy, exact, on_zero, order)


CERTIFICATION_TOL = 1e-10


@dataclass(frozen=True)
class SingularPoint:
    """A zero of u where the gradient also vanishes (order >= 2).

    Coordinates are exact rationals when the solver certified them
    symbolically, floats otherwise.  ``residual`` is the floating-point
    check max(|u|, |du/dx|, |du/dy|) at the reported location.
    """

    x: Fraction | float
    y: Fraction | float
    order: int
    residual: float
    exact: bool

    @property
    def location(self) -> tuple:
        return (self.x, self.y)

    def to_jsonable(self) -> dict:
        return {
            "x": self.x if isinstance(self.x, Fraction) else float(self.x),
            "y": self.y if isinstance(self.y, Fraction) else float(self.y),
            "order": self.order,
            "residual": self.residual,
            "exact": self.exact,
        }


def _in_closed_disk(cand: _Candidate, radius: Fraction) -> bool:
    if cand.exact:
        return cand.radius_squared() <= Fraction(radius) ** 2
    r2 = float(cand.mx) ** 2 + float(cand.my) ** 2
    return r2 <= float(radius) ** 2 + 1e-9


def _to_singular(u: Polynomial, cand: _Candidate) -> SingularPoint:
    fx, fy = float(cand.mx), float(cand.my)
    residual = max(
        abs(u.evaluate((fx, fy))),
        abs(u.derivative(0).evaluate((fx, fy))),
        abs(u.derivative(1).evaluate((fx, fy))),
    )
    if residual >= CERTIFICATION_TOL:
        raise UnresolvedCountError(
            f"refined point ({fx}, {fy}) fails certification: residual {residual:.3e}"
        )
    if cand.order < 2:
        raise UnresolvedCountError("gradient zero with vanishing order < 2")
    x = cand.mx if cand.exact else fx
    y = cand.my if cand.exact else fy
    return SingularPoint(x, y, cand.order, residual, cand.exact)


def singular_points(u: Polynomial, radius=Fraction(1)) -> list[SingularPoint]:
    """Common real zeros of the gradient lying on the zero set of u.

    By default only points inside the closed unit disk are reported; pass
    ``radius=None`` for the whole plane, or another radius for other disks.
    Raises :class:`DegenerateNodalSetError` when the critical set is not a
    finite set of points.
    """
    if u.is_zero or u.degree == 0:
        raise DegenerateNodalSetError("need a nonconstant polynomial")
    out = []
    for cand in _critical_points(u):
        if not cand.on_zero:
            continue
        if radius is not None and not _in_closed_disk(cand, Fraction(radius)):
            continue
        out.append(_to_singular(u, cand))
    return out


# --------------------------------------------------------------------------
# flood-fill domain counting


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


_SUSPECT_REL = 1e-13


def _sign_grid(u: Polynomial, axf: list[Fraction]) -> np.ndarray:
    ax = np.array([float(v) for v in axf])
    vals = eval_on_axes(u, [ax, ax])
    gauge = abs_eval_on_axes(u, [ax, ax])
    signs = np.sign(vals).astype(np.int8)
    suspect = np.abs(vals) <= gauge * _SUSPECT_REL
    for i, j in np.argwhere(suspect):
        signs[i, j] = exact_sign(u, (axf[int(i)], axf[int(j)]))
    return signs


def _patch_signs(u: Polynomial, axf: list[Fraction], i: int, j: int, rr: float) -> np.ndarray:
    """4x4 subcell sign grid (0 = mixed/inactive) for one refined cell."""
    xs = [axf[i] + (axf[i + 1] - axf[i]) * Fraction(k, 4) for k in range(5)]
    ys = [axf[j] + (axf[j + 1] - axf[j]) * Fraction(k, 4) for k in range(5)]
    fx = np.array([float(v) for v in xs])
    fy = np.array([float(v) for v in ys])
    vals = eval_on_axes(u, [fx, fy])
    gauge = abs_eval_on_axes(u, [fx, fy])
    signs = np.sign(vals).astype(np.int8)
    for a, b in np.argwhere(np.abs(vals) <= gauge * _SUSPECT_REL):
        signs[a, b] = exact_sign(u, (xs[int(a)], ys[int(b)]))
    inside = (fx[:, None] ** 2 + fy[None, :] ** 2) <= rr * rr * (1 + 1e-12)
    s00, s10 = signs[:-1, :-1], signs[1:, :-1]
    s01, s11 = signs[:-1, 1:], signs[1:, 1:]
    active = inside[:-1, :-1] & inside[1:, :-1] & inside[:-1, 1:] & inside[1:, 1:]
    pure = (s00 == s10) & (s00 == s01) & (s00 == s11) & (s00 != 0) & active
    return np.where(pure, s00, 0).astype(np.int8)


def _count_once(u: Polynomial, radius: Fraction, cells: int, sing: list[tuple[float, float]]) -> int:
    axf = fraction_axis(Fraction(0), Fraction(radius), cells)
    ax = np.array([float(v) for v in axf])
    rr = float(radius)
    signs = _sign_grid(u, axf)
    inside = (ax[:, None] ** 2 + ax[None, :] ** 2) <= rr * rr * (1 + 1e-12)
    s00, s10 = signs[:-1, :-1], signs[1:, :-1]
    s01, s11 = signs[:-1, 1:], signs[1:, 1:]
    active = inside[:-1, :-1] & inside[1:, :-1] & inside[:-1, 1:] & inside[1:, 1:]
    pure = (s00 == s10) & (s00 == s01) & (s00 == s11) & (s00 != 0) & active
    cell_sign = np.where(pure, s00, 0).astype(np.int8)

    h = 2.0 * rr / cells
    flagged: set[tuple[int, int]] = set()
    for px, py in sing:
        ic = int(math.floor((px + rr) / h))
        jc = int(math.floor((py + rr) / h))
        for i in range(max(0, ic - 4), min(cells, ic + 5)):
            for j in range(max(0, jc - 4), min(cells, jc + 5)):
                dx = max(ax[i] - px, px - ax[i + 1], 0.0)
                dy = max(ax[j] - py, py - ax[j + 1], 0.0)
                if dx * dx + dy * dy <= (2.0 * h) ** 2 * (1 + 1e-9):
                    flagged.add((i, j))

    base = cell_sign.copy()
    for i, j in flagged:
        base[i, j] = 0
    labels, nlab = label_cells(base)

    flist = sorted(flagged)
    findex = {c: k for k, c in enumerate(flist)}
    dsu = _DisjointSet(nlab + 16 * len(flist))
    patches = {c: _patch_signs(u, axf, c[0], c[1], rr) for c in flist}

    def sub_id(cell: tuple[int, int], a: int, b: int) -> int:
        return nlab + 16 * findex[cell] + 4 * a + b

    used: set[int] = set(range(nlab))
    for cell in flist:
        i, j = cell
        sgn = patches[cell]
        for a in range(4):
            for b in range(4):
                s = int(sgn[a, b])
                if s == 0:
                    continue
                sid = sub_id(cell, a, b)
                used.add(sid)
                if a < 3 and sgn[a + 1, b] == s:
                    dsu.union(sid, sub_id(cell, a + 1, b))
                if b < 3 and sgn[a, b + 1] == s:
                    dsu.union(sid, sub_id(cell, a, b + 1))
                # seams with the neighboring cells
                if a == 3 and i + 1 < cells:
                    nb = (i + 1, j)
                    if nb in findex:
                        if patches[nb][0, b] == s:
                            dsu.union(sid, sub_id(nb, 0, b))
                    elif cell_sign[nb] == s:
                        dsu.union(sid, int(labels[nb]))
                if a == 0 and i > 0:
                    nb = (i - 1, j)
                    if nb not in findex and cell_sign[nb] == s:
                        dsu.union(sid, int(labels[nb]))
                if b == 3 and j + 1 < cells:
                    nb = (i, j + 1)
                    if nb in findex:
                        if patches[nb][a, 0] == s:
                            dsu.union(sid, sub_id(nb, a, 0))
                    elif cell_sign[nb] == s:
                        dsu.union(sid, int(labels[nb]))
                if b == 0 and j > 0:
                    nb = (i, j - 1)
                    if nb not in findex and cell_sign[nb] == s:
                        dsu.union(sid, int(labels[nb]))
    return len({dsu.find(i) for i in used})


def count_domains(
    u: Polynomial,
    radius,
    resolution: int = 128,
    singular: list | None = None,
) -> int:
    """Connected components of {u != 0} within the disk of the given radius.

    Sign grid plus 4-connected flood fill, with 4x local refinement in cells
    near singular points.  The count must agree between the requested
    resolution and its doubling (one extra doubling is attempted), otherwise
    :class:`UnresolvedCountError` is raised.
    """
    if u.dimension != 2:
        raise ValueError("domain counting is implemented for two variables")
    if resolution < 64:
        raise ValueError("resolution must be at least 64")
    radius = Fraction(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    if singular is None:
        try:
            singular = singular_points(u, radius=None)
        except DegenerateNodalSetError:
            singular = []
    locs = [(float(s.x), float(s.y)) if hasattr(s, "x") else (float(s[0]), float(s[1]))
            for s in singular]
    counts = [_count_once(u, radius, resolution, locs),
              _count_once(u, radius, resolution * 2, locs)]
    if counts[0] == counts[1]:
        return counts[1]
    third = _count_once(u, radius, resolution * 4, locs)
    if third == counts[1]:
        return third
    raise UnresolvedCountError(
        f"domain count unresolved: {counts + [third]} at resolutions "
        f"{resolution}, {resolution * 2}, {resolution * 4}"
    )


# --------------------------------------------------------------------------
# enclosing radius and the count identity


def enclosing_radius(u: Polynomial, periphery_samples: int | None = None) -> Fraction:
    """A radius beyond which the top-degree part dominates the tail.

    Outside this disk the zero set consists of 2*deg(u) outward arcs, so
    the flood-fill count inside it equals the global domain count.  The
    dominance |top| > |tail| is checked at sampled angles (4*deg by
    default) and reconfirmed at twice the radius with twice the samples.
    """
    deg = u.degree
    if u.dimension != 2 or deg < 1:
        raise ValueError("need a nonconstant polynomial in two variables")
    top = u.top_part()
    tail = u - top
    if tail.is_zero:
        return Fraction(1)
    crit_r = 0.0
    try:
        for cand in _critical_points(u):
            crit_r = max(crit_r, math.hypot(float(cand.mx), float(cand.my)))
    except DegenerateNodalSetError:
        pass

    def dominates(r: float, samples: int) -> bool:
        theta = 2.0 * math.pi * (np.arange(samples) + 0.37) / samples
        pts = np.stack([r * np.cos(theta), r * np.sin(theta)], axis=1)
        return bool(np.all(np.abs(eval_at_points(top, pts)) > np.abs(eval_at_points(tail, pts))))

    m = periphery_samples or 4 * deg
    radius = Fraction(math.ceil(5.0 * max(1.0, crit_r))) / 4
    for _ in range(24):
        if dominates(float(radius), m) and dominates(2.0 * float(radius), 2 * m):
            return radius
        radius *= 2
    raise UnresolvedCountError("no dominance radius found")


@dataclass(frozen=True)
class NodalReport:
    """Combined domain-count report for a harmonic polynomial."""

    poly: str
    degree: int
    N_infinity: int
    singular_points: tuple[SingularPoint, ...]
    k_formula: int
    k_floodfill: int
    radius: Fraction
    resolution: int
    regular_vertices_note: str
    ok: bool

    def to_jsonable(self) -> dict:
        return {
            "poly": self.poly,
            "degree": self.degree,
            "N_infinity": self.N_infinity,
            "singular": [s.to_jsonable() for s in self.singular_points],
            "k_formula": self.k_formula,
            "k_floodfill": self.k_floodfill,
            "radius": float(self.radius),
            "resolution": self.resolution,
            "regular_vertices_note": self.regular_vertices_note,
            "pass": self.ok,
        }


_RV_NOTE = (
    "counts of boundary vertices on the compactified sphere are out of scope; "
    "only the plane quantities (degree, singular orders, domain count) are computed"
)


def euler_check(u: Polynomial, resolution: int = 128) -> NodalReport:
    """Check count = 1 + degree + sum(order - 1) over singular points.

    The flood-fill count runs on a disk large enough that the top-degree
    part dominates, so it sees every domain of the polynomial in the plane.
    """
    if u.dimension != 2:
        raise ValueError("the count identity is a two-variable statement")
    if not u.is_harmonic:
        raise ValueError("the count identity needs a harmonic polynomial")
    deg = u.degree
    if deg < 1:
        raise ValueError("need a nonconstant polynomial")
    cands = _critical_points(u)
    sing = [_to_singular(u, c) for c in cands if c.on_zero]
    k_formula = 1 + deg + sum(s.order - 1 for s in sing)
    radius = enclosing_radius(u)
    locs = [(float(s.x), float(s.y)) for s in sing]
    count = count_domains(u, radius, resolution, singular=locs)
    return NodalReport(
        poly=str(u),
        degree=deg,
        N_infinity=deg,
        singular_points=tuple(sing),
        k_formula=k_formula,
        k_floodfill=count,
        radius=radius,
        resolution=resolution,
        regular_vertices_note=_RV_NOTE,
        ok=(count == k_formula),
    )


class ClassBounds(NamedTuple):
    k: int
    N_infinity: int
    lower_ok: bool   # k <= 2 * N_infinity
    upper_ok: bool   # N_infinity <= k - 1


def class_bounds(u: Polynomial, resolution: int = 128) -> ClassBounds:
    """Verify k <= 2*deg and deg <= k-1 for the flood-fill domain count."""
    report = euler_check(u, resolution)
    k, n_inf = report.k_floodfill, report.N_infinity
    return ClassBounds(k, n_inf, k <= 2 * n_inf, n_inf <= k - 1)


# --------------------------------------------------------------------------
# arc length


def _length_once(u: Polynomial, radius: float, cells: int) -> float:
    ax = np.linspace(-radius, radius, cells + 1)
    vals = eval_on_axes(u, [ax, ax])
    seg = marching_segments(vals)
    if seg.shape[0] == 0:
        return 0.0
    h = 2.0 * radius / cells
    a = seg[:, 0:2] * h - radius
    b = seg[:, 2:4] * h - radius
    d = b - a
    dd = np.einsum("ij,ij->i", d, d)
    ad = np.einsum("ij,ij->i", a, d)
    aa = np.einsum("ij,ij->i", a, a)
    lengths = np.zeros(seg.shape[0])
    straight = dd <= 1e-300
    # clip each segment to the disk: |a + t d|^2 <= r^2 on t in [0, 1]
    disc = ad * ad - dd * (aa - radius * radius)
    ok = (~straight) & (disc > 0)
    sq = np.sqrt(np.maximum(disc[ok], 0.0))
    t0 = np.clip((-ad[ok] - sq) / dd[ok], 0.0, 1.0)
    t1 = np.clip((-ad[ok] + sq) / dd[ok], 0.0, 1.0)
    lengths[ok] = np.sqrt(dd[ok]) * np.maximum(t1 - t0, 0.0)
    return float(lengths.sum())


def nodal_length(u: Polynomial, radius, resolution: int = 128) -> float:
    """Marching-squares estimate of the zero-set length inside a disk.

    Refines until two successive estimates agree within 2 percent; raises
    :class:`UnresolvedCountError` when the ladder does not stabilize.
    """
    value, _ = length_profile(u, radius, resolution)
    return value


def length_profile(u: Polynomial, radius, resolution: int = 128):
    """(stabilized length, [(cells, estimate), ...] ladder actually run)."""
    if u.dimension != 2:
        raise ValueError("length estimation is implemented for two variables")
    r = float(radius)
    if r <= 0:
        raise ValueError("radius must be positive")
    cells = int(resolution)
    if cells < 16:
        raise ValueError("resolution must be at least 16")
    ladder = [(cells, _length_once(u, r, cells))]
    for _ in range(5):
        cells *= 2
        ladder.append((cells, _length_once(u, r, cells)))
        prev, cur = ladder[-2][1], ladder[-1][1]
        if abs(cur - prev) <= 0.02 * max(abs(cur), 1e-12):
            return cur, ladder
    raise UnresolvedCountError(f"length estimate did not stabilize: {ladder}")
