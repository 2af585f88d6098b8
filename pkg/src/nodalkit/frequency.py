"""Frequency analysis of polynomials: exact heights, energies and the
Almgren-type quotient N(x0, u, r) = r * D / H.

For a polynomial ``u`` both H (height: boundary integral of u^2 over the
sphere of radius r) and D (energy: ball integral of |grad u|^2) are, after
recentering, polynomials in r with rational coefficients times the symbolic
sphere-area unit.  The quotient is therefore an exact rational function of
r: every value on a rational radius is an exact ``Fraction``, the limit at
0+ is computed symbolically, and monotonicity checks are exact comparisons.

Vanishing order, doubling witnesses, non-degeneracy margins, blow-up
rescalings and the blow-down degree are all derived from the same two exact
series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import ClassParams, ExactMeasure, Polynomial, unit_sphere_moment
from .reports import frac_str, point_str, write_csv


class FrequencyDegenerateError(ValueError):
    """The height H vanishes at a requested radius (u is zero on that sphere)."""


def _as_center(u: Polynomial, center: Sequence) -> list[Fraction]:
    if len(center) != u.dimension:
        raise ValueError("center length does not match the polynomial dimension")
    return [Fraction(c) for c in center]


def _even_series(p: Polynomial) -> dict[int, Fraction]:
    """Sphere moments of ``p`` grouped by total degree.

    Returns {degree e: sum of c_mono * moment(mono) over |mono| = e}; only
    even degrees can appear because odd monomials have zero sphere average.
    """
    out: dict[int, Fraction] = {}
    for mono, c in p.terms.items():
        m = unit_sphere_moment(mono)
        if m == 0:
            continue
        e = sum(mono)
        out[e] = out.get(e, Fraction(0)) + c * m
    return {e: v for e, v in out.items() if v != 0}


@dataclass(frozen=True)
class FrequencyFunction:
    """Exact representation of r -> N(center, u, r) as a rational function.

    ``N(r) = r^2 * num(r) / den(r)`` where num/den are polynomials in r with
    the stored (even-degree) coefficients: ``den`` collects the height series
    of u^2 and ``num`` the energy series of |grad u|^2 (each moment already
    divided by its ball-integration factor).
    """

    dimension: int
    num: dict[int, Fraction]
    den: dict[int, Fraction]

    def value(self, radius) -> Fraction:
        r = Fraction(radius)
        if r <= 0:
            raise ValueError("radius must be positive")
        den = sum(c * r**e for e, c in self.den.items())
        if den == 0:
            raise FrequencyDegenerateError(
                f"height vanishes at radius {r}; frequency undefined there"
            )
        num = sum(c * r**e for e, c in self.num.items())
        return r * r * num / den

    def limit_at_zero(self) -> Fraction:
        """Exact one-sided limit of N at r -> 0+."""
        if not self.den:
            raise FrequencyDegenerateError("zero polynomial has no frequency")
        if not self.num:
            return Fraction(0)
        e_num = min(self.num)
        e_den = min(self.den)
        gap = 2 + e_num - e_den
        if gap > 0:
            return Fraction(0)
        if gap == 0:
            return self.num[e_num] / self.den[e_den]
        raise FrequencyDegenerateError("frequency diverges at 0 (non-polynomial input?)")

    def limit_at_infinity(self) -> Fraction:
        if not self.den:
            raise FrequencyDegenerateError("zero polynomial has no frequency")
        if not self.num:
            return Fraction(0)
        e_num = max(self.num)
        e_den = max(self.den)
        if 2 + e_num == e_den:
            return self.num[e_num] / self.den[e_den]
        if 2 + e_num < e_den:
            return Fraction(0)
        raise FrequencyDegenerateError("frequency diverges at infinity")


def frequency_function(u: Polynomial, center: Sequence) -> FrequencyFunction:
    """Build the exact rational-function form of the frequency at a center."""
    if u.is_zero:
        raise ValueError("frequency of the zero polynomial is undefined")
    c = _as_center(u, center)
    shifted = u.shift_scale(c)
    n = u.dimension
    den = _even_series(shifted * shifted)
    num_raw = _even_series(shifted.gradient_squared())
    num = {e: v / (e + n) for e, v in num_raw.items()}
    return FrequencyFunction(n, num, den)


def height_energy(u: Polynomial, center: Sequence, radius) -> tuple[ExactMeasure, ExactMeasure]:
    """Exact (H, D): sphere integral of u^2 and ball integral of |grad u|^2.

    Both are rational multiples of the symbolic unit sphere area, so the
    frequency r*D/H is an exact rational number.
    """
    if u.is_zero:
        raise ValueError("height/energy of the zero polynomial is degenerate")
    r = Fraction(radius)
    if r <= 0:
        raise ValueError("radius must be positive")
    c = _as_center(u, center)
    shifted = u.shift_scale(c)
    n = u.dimension
    h = Fraction(0)
    for e, v in _even_series(shifted * shifted).items():
        h += v * r ** (e + n - 1)
    d = Fraction(0)
    for e, v in _even_series(shifted.gradient_squared()).items():
        d += v * r ** (e + n) / (e + n)
    return ExactMeasure(h, n), ExactMeasure(d, n)


def frequency_value(u: Polynomial, center: Sequence, radius) -> Fraction:
    """Exact frequency N(center, u, radius) as a Fraction."""
    return frequency_function(u, center).value(radius)


@dataclass(frozen=True)
class FrequencyCurve:
    """Frequency values along a radius ladder, with an exact monotone flag."""

    center: tuple[Fraction, ...]
    radii: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    monotone_nondecreasing: bool

    def write_csv(self, path: str):
        rows = [
            [point_str(self.center), frac_str(r), frac_str(v), float(v)]
            for r, v in zip(self.radii, self.values)
        ]
        write_csv(path, ["center", "r", "N", "N_float"], rows)


def frequency_curve(u: Polynomial, center: Sequence, radii: Sequence) -> FrequencyCurve:
    """Exact frequency along increasing radii; all comparisons exact."""
    rs = sorted(Fraction(r) for r in radii)
    if not rs:
        raise ValueError("need at least one radius")
    if len(set(rs)) != len(rs):
        raise ValueError("radii must be distinct")
    fn = frequency_function(u, center)
    values = tuple(fn.value(r) for r in rs)
    monotone = all(a <= b for a, b in zip(values, values[1:]))
    c = tuple(_as_center(u, center))
    return FrequencyCurve(c, tuple(rs), values, monotone)


def vanishing_order(u: Polynomial, center: Sequence) -> tuple[int, Polynomial]:
    """Order of vanishing at the center and the leading homogeneous part.

    The order is the degree of the lowest nonzero homogeneous component of
    the recentered polynomial; for harmonic input the leading part is itself
    harmonic (verified) and the order equals the exact limit of the
    frequency at 0+.
    """
    if u.is_zero:
        raise ValueError("the zero polynomial vanishes to every order")
    shifted = u.shift_scale(_as_center(u, center))
    order, leading = shifted.lowest_part()
    if u.is_harmonic and not leading.is_harmonic:
        raise RuntimeError("internal inconsistency: harmonic input with non-harmonic leading part")
    return order, leading


@dataclass(frozen=True)
class DoublingReport:
    """Exact ball-integral growth witness between two radii."""

    center: tuple[Fraction, ...]
    r: Fraction
    R: Fraction
    mass_r: ExactMeasure
    mass_R: ExactMeasure
    witness: float
    reference: float
    ok: bool


def _ball_mass(u: Polynomial, n: int, radius: Fraction) -> Fraction:
    total = Fraction(0)
    for e, v in _even_series(u * u).items():
        total += v * radius ** (e + n) / (e + n)
    return total


def doubling_check(u: Polynomial, center: Sequence, r, R, slack: float = 1e-9) -> DoublingReport:
    """Compare the growth exponent of ball masses of u^2 against n + 2N(R).

    witness = log(I(R)/I(r)) / log(R/r) computed from exact integrals; for
    harmonic u the bound  witness <= n + 2*N(center, u, R)  holds with
    constant one.
    """
    rr, RR = Fraction(r), Fraction(R)
    if not 0 < rr < RR:
        raise ValueError("need 0 < r < R")
    c = _as_center(u, center)
    shifted = u.shift_scale(c)
    n = u.dimension
    m_r = _ball_mass(shifted, n, rr)
    m_R = _ball_mass(shifted, n, RR)
    if m_r == 0 or m_R == 0:
        raise FrequencyDegenerateError("zero mass: u vanishes identically")
    witness = math.log(m_R / m_r) / math.log(RR / rr)
    reference = n + 2.0 * float(frequency_value(u, center, RR))
    return DoublingReport(
        tuple(c), rr, RR,
        ExactMeasure(m_r, n), ExactMeasure(m_R, n),
        witness, reference, witness <= reference + slack,
    )


@dataclass(frozen=True)
class NondegeneracyReport:
    """lhs = local mass at radius r; rhs = r^(n + 2*nbar0) * unit-ball mass."""

    radius: Fraction
    lhs: ExactMeasure
    rhs_base: ExactMeasure
    exponent: Fraction
    margin: object  # Fraction when the exponent is an integer, float otherwise

    @property
    def rhs_float(self) -> float:
        return float(self.rhs_base) * float(self.radius) ** float(self.exponent)


def nondegeneracy_check(
    u: Polynomial, center: Sequence, radius, params: ClassParams
) -> NondegeneracyReport:
    """Exact lower-bound margin  (mass at x0, r) / (r^(n+2*nbar0) * mass in B1).

    The margin is an exact positive rational when n + 2*nbar0 is an integer,
    a float otherwise; it stays bounded away from zero along shrinking radii
    for polynomials in the stated frequency class.
    """
    r = Fraction(radius)
    if not 0 < r <= Fraction(1, 8):
        raise ValueError("radius must lie in (0, 1/8]")
    c = _as_center(u, center)
    if sum(v * v for v in c) > Fraction(9, 16):
        raise ValueError("center must lie in the closed ball of radius 3/4")
    n = u.dimension
    shifted = u.shift_scale(c)
    lhs = _ball_mass(shifted, n, r)
    base = _ball_mass(u, n, Fraction(1))
    if base == 0:
        raise FrequencyDegenerateError("u vanishes identically")
    exponent = Fraction(n) + 2 * Fraction(params.nbar0)
    if exponent.denominator == 1:
        margin = lhs / (base * r ** int(exponent))
    else:
        margin = float(lhs) / (float(base) * float(r) ** float(exponent))
    return NondegeneracyReport(r, ExactMeasure(lhs, n), ExactMeasure(base, n), exponent, margin)


@dataclass(frozen=True)
class BlowUpResult:
    """Recentered/rescaled polynomial with its exact height normalization.

    ``rescaled(x) = u(center + radius * x)`` kept with rational coefficients;
    the blown-up function is ``rescaled / sqrt(normalization)`` where
    ``normalization`` is the exact height of ``rescaled`` at radius one, so
    the normalized function has unit height at radius one by construction.
    """

    center: tuple[Fraction, ...]
    radius: Fraction
    rescaled: Polynomial
    normalization: ExactMeasure

    def normalized_coefficients(self) -> dict[tuple[int, ...], float]:
        """Coefficients of the unit-height rescaling.

        A common factor (unit sphere area)^(-1/2) is left implicit, so these
        are only meaningful in comparisons sharing the same dimension.
        """
        scale = 1.0 / math.sqrt(float(self.normalization.coefficient))
        return {m: float(c) * scale for m, c in self.rescaled.terms.items()}


def blow_up(u: Polynomial, center: Sequence, radius) -> BlowUpResult:
    """Exact blow-up step: recenter, rescale, record the height normalizer."""
    r = Fraction(radius)
    if r <= 0:
        raise ValueError("radius must be positive")
    c = _as_center(u, center)
    rescaled = u.shift_scale(c, r)
    if rescaled.is_zero:
        raise ValueError("blow-up of the zero polynomial is undefined")
    n = u.dimension
    height = Fraction(0)
    for e, v in _even_series(rescaled * rescaled).items():
        height += v
    return BlowUpResult(tuple(c), r, rescaled, ExactMeasure(height, n))


@dataclass(frozen=True)
class BlowDownReport:
    """Frequency along growing radii, its exact limit, and the degree gap."""

    degree: int
    radii: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    limit: Fraction
    gap: Fraction  # degree - value at the largest tested radius


def blow_down_degree(u: Polynomial, radii: Sequence | None = None) -> BlowDownReport:
    """For harmonic u: frequency increases along radii with limit deg(u).

    The limit is read off symbolically from the exact rational function; the
    gap at the largest tested radius quantifies the approach.
    """
    if u.is_zero:
        raise ValueError("blow-down of the zero polynomial is undefined")
    if not u.is_harmonic:
        raise ValueError("blow-down degree statement needs harmonic input")
    rs = tuple(Fraction(r) for r in (radii or (1, 10, 100, 1000)))
    if any(b <= a for a, b in zip(rs, rs[1:])):
        raise ValueError("radii must be strictly increasing")
    fn = frequency_function(u, (0,) * u.dimension)
    values = tuple(fn.value(r) for r in rs)
    if any(b < a for a, b in zip(values, values[1:])):
        raise RuntimeError("internal inconsistency: frequency decreased for harmonic input")
    limit = fn.limit_at_infinity()
    degree = int(u.degree)
    if limit != degree:
        raise RuntimeError("internal inconsistency: blow-down limit differs from the degree")
    return BlowDownReport(degree, rs, values, limit, Fraction(degree) - values[-1])


@dataclass(frozen=True)
class FrequencySup:
    value: Fraction
    center: tuple[Fraction, ...]
    radius: Fraction
    table: tuple = field(default_factory=tuple)


def default_center_grid(dimension: int = 2) -> list[tuple[Fraction, ...]]:
    """3-per-axis rational grid intersected with the 7/8 ball."""
    axis = [Fraction(-1, 2), Fraction(0), Fraction(1, 2)]
    out = []

    def rec(prefix):
        if len(prefix) == dimension:
            if sum(c * c for c in prefix) <= Fraction(49, 64):
                out.append(tuple(prefix))
            return
        for a in axis:
            rec(prefix + [a])

    rec([])
    return out


def frequency_sup(
    u: Polynomial,
    centers: Sequence | None = None,
    radii: Sequence | None = None,
) -> FrequencySup:
    """Exact maximum of the frequency over a center grid and small radii.

    Centers must lie in the closed 7/8 ball and radii must not exceed 1/16;
    defaults are the 3^n grid with spacing 1/2 and radii {1/32, 1/16}.
    """
    cs = [tuple(Fraction(x) for x in c) for c in centers] if centers else default_center_grid(u.dimension)
    rs = sorted(Fraction(r) for r in (radii or (Fraction(1, 32), Fraction(1, 16))))
    for c in cs:
        if sum(x * x for x in c) > Fraction(49, 64):
            raise ValueError(f"center {c} lies outside the 7/8 ball")
    for r in rs:
        if not 0 < r <= Fraction(1, 16):
            raise ValueError("radii must lie in (0, 1/16]")
    best = None
    table = []
    for c in cs:
        fn = frequency_function(u, c)
        for r in rs:
            v = fn.value(r)
            table.append((c, r, v))
            if best is None or v > best[0]:
                best = (v, c, r)
    assert best is not None
    return FrequencySup(best[0], best[1], best[2], tuple(table))
