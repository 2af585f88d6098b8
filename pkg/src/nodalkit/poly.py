"""Exact multivariate polynomial arithmetic over the rationals.

This module is the foundation of the toolkit: sparse polynomials with
``fractions.Fraction`` coefficients, a small parser/printer pair with a
canonical graded-lexicographic form, exact calculus (derivatives, Laplacian,
affine substitution), exact sphere/ball integrals of polynomials via the
classical moment rule, bases of homogeneous harmonic polynomials, graded-lex
polynomial division, and the linear space of polynomial ratios ``R`` such
that ``u * R`` is harmonic.

Everything here is exact: no floats enter unless the caller evaluates at a
float point.  Sphere and ball integrals carry the (n-1)-sphere area as a
symbolic unit (:class:`ExactMeasure`) so that ratios of integrals are exact
rational numbers.

All objects are immutable by convention; operations return new values, which
keeps the module safe for process-level parallel fan-out.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

Term = tuple[int, ...]

NEG_INF = float("-inf")

_VAR_NAMES = ("x", "y", "z")


def _grlex_key(mono: Term) -> tuple[int, Term]:
    """Sort key realizing graded lexicographic order (larger = later)."""
    return (sum(mono), mono)


class PolynomialSyntaxError(ValueError):
    """Raised on malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples (length ``dimension``) to nonzero
    ``Fraction`` coefficients.  Treat instances as immutable.
    """

    __slots__ = ("dimension", "terms")

    def __init__(self, dimension: int, terms: dict[Term, Fraction] | None = None):
        if dimension < 1:
            raise ValueError("dimension must be a positive integer")
        clean: dict[Term, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != dimension:
                raise ValueError(f"exponent tuple {mono} does not match dimension {dimension}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = Fraction(coeff)
            if c != 0:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if clean[mono] == 0:
                    del clean[mono]
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Polynomial is immutable")

    # ------------------------------------------------------------------ basics

    @classmethod
    def zero(cls, dimension: int) -> "Polynomial":
        return cls(dimension, {})

    @classmethod
    def constant(cls, dimension: int, value) -> "Polynomial":
        return cls(dimension, {(0,) * dimension: Fraction(value)})

    @classmethod
    def variable(cls, dimension: int, index: int) -> "Polynomial":
        if not 0 <= index < dimension:
            raise ValueError(f"variable index {index} out of range for dimension {dimension}")
        mono = tuple(1 if i == index else 0 for i in range(dimension))
        return cls(dimension, {mono: Fraction(1)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        """Total degree; the zero polynomial reports the -infinity sentinel."""
        if not self.terms:
            return NEG_INF
        return max(sum(m) for m in self.terms)

    def coefficient(self, mono: Term) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def leading_term(self) -> tuple[Term, Fraction]:
        """Graded-lex leading (monomial, coefficient); error on zero."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self.terms, key=_grlex_key)
        return mono, self.terms[mono]

    # -------------------------------------------------------------- arithmetic

    def _check_dim(self, other: "Polynomial"):
        if self.dimension != other.dimension:
            raise ValueError("dimension mismatch")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dimension == other.dimension and self.terms == other.terms

    def __hash__(self):
        return hash((self.dimension, frozenset(self.terms.items())))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_dim(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return Polynomial(self.dimension, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.dimension, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check_dim(other)
            out: dict[Term, Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    out[m] = out.get(m, Fraction(0)) + c1 * c2
            return Polynomial(self.dimension, out)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, factor) -> "Polynomial":
        f = Fraction(factor)
        return Polynomial(self.dimension, {m: c * f for m, c in self.terms.items()})

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial power needs a non-negative integer exponent")
        out = Polynomial.constant(self.dimension, 1)
        for _ in range(exponent):
            out = out * self
        return out

    # ---------------------------------------------------------------- calculus

    def derivative(self, index: int) -> "Polynomial":
        out: dict[Term, Fraction] = {}
        for mono, c in self.terms.items():
            e = mono[index]
            if e == 0:
                continue
            m = list(mono)
            m[index] = e - 1
            key = tuple(m)
            out[key] = out.get(key, Fraction(0)) + c * e
        return Polynomial(self.dimension, out)

    def gradient(self) -> list["Polynomial"]:
        return [self.derivative(i) for i in range(self.dimension)]

    def laplacian(self) -> "Polynomial":
        out = Polynomial.zero(self.dimension)
        for i in range(self.dimension):
            out = out + self.derivative(i).derivative(i)
        return out

    @property
    def is_harmonic(self) -> bool:
        return self.laplacian().is_zero

    def gradient_squared(self) -> "Polynomial":
        out = Polynomial.zero(self.dimension)
        for g in self.gradient():
            out = out + g * g
        return out

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        """Split into homogeneous parts, keyed by total degree."""
        parts: dict[int, dict[Term, Fraction]] = {}
        for mono, c in self.terms.items():
            parts.setdefault(sum(mono), {})[mono] = c
        return {d: Polynomial(self.dimension, t) for d, t in sorted(parts.items())}

    def lowest_part(self) -> tuple[int, "Polynomial"]:
        """(degree, component) of the lowest nonzero homogeneous part."""
        if not self.terms:
            raise ValueError("zero polynomial has no lowest part")
        comps = self.homogeneous_components()
        d = min(comps)
        return d, comps[d]

    def top_part(self) -> "Polynomial":
        comps = self.homogeneous_components()
        return comps[max(comps)]

    def shift_scale(self, center: Sequence, scale=1) -> "Polynomial":
        """Exact substitution ``x_i -> center_i + scale * x_i``."""
        if len(center) != self.dimension:
            raise ValueError("center length does not match dimension")
        c = [Fraction(v) for v in center]
        s = Fraction(scale)
        terms = {m: v for m, v in self.terms.items()}
        for i in range(self.dimension):
            if all(m[i] == 0 for m in terms):
                continue
            new: dict[Term, Fraction] = {}
            for mono, coeff in terms.items():
                e = mono[i]
                base = list(mono)
                # (c_i + s x_i)^e expanded with binomial coefficients
                for j in range(e + 1):
                    base[i] = j
                    w = coeff * math.comb(e, j) * c[i] ** (e - j) * s**j
                    if w == 0:
                        continue
                    key = tuple(base)
                    new[key] = new.get(key, Fraction(0)) + w
            terms = {m: v for m, v in new.items() if v != 0}
        return Polynomial(self.dimension, terms)

    def compose(self, args: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``x_i -> args[i]``; all args share one dimension."""
        if len(args) != self.dimension:
            raise ValueError("need one substitution polynomial per variable")
        dim = args[0].dimension
        if any(a.dimension != dim for a in args):
            raise ValueError("substitution polynomials must share a dimension")
        # cache powers of each argument
        max_e = [0] * self.dimension
        for mono in self.terms:
            for i, e in enumerate(mono):
                max_e[i] = max(max_e[i], e)
        powers: list[list[Polynomial]] = []
        for i, a in enumerate(args):
            row = [Polynomial.constant(dim, 1)]
            for _ in range(max_e[i]):
                row.append(row[-1] * a)
            powers.append(row)
        out = Polynomial.zero(dim)
        for mono, c in self.terms.items():
            term = Polynomial.constant(dim, c)
            for i, e in enumerate(mono):
                if e:
                    term = term * powers[i][e]
            out = out + term
        return out

    # -------------------------------------------------------------- evaluation

    def evaluate(self, point: Sequence):
        """Evaluate at a point; exact when every coordinate is int/Fraction."""
        if len(point) != self.dimension:
            raise ValueError("point length does not match dimension")
        exact = all(isinstance(v, (int, Fraction)) for v in point)
        coords = [Fraction(v) for v in point] if exact else [float(v) for v in point]
        total = Fraction(0) if exact else 0.0
        for mono, c in self.terms.items():
            v = c if exact else float(c)
            for x, e in zip(coords, mono):
                if e:
                    v = v * x**e
            total += v
        return total

    # ---------------------------------------------------------------- printing

    def _var_name(self, index: int) -> str:
        if self.dimension <= 3:
            return _VAR_NAMES[index]
        return f"x{index + 1}"

    def __str__(self) -> str:
        """Canonical form: graded-lex descending, explicit ``*`` and ``^``."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for mono in sorted(self.terms, key=_grlex_key, reverse=True):
            coeff = self.terms[mono]
            factors = []
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(self._var_name(i))
                elif e > 1:
                    factors.append(f"{self._var_name(i)}^{e}")
            mag = abs(coeff)
            body = "*".join(factors)
            if not factors:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if coeff > 0 else '-'} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self.dimension}, {self})"


# ---------------------------------------------------------------------- parser


class _Parser:
    """Recursive-descent parser for the expression grammar.

    expr   := ('+'|'-')? term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := rational | var | '(' expr ')'
    """

    def __init__(self, text: str, dimension: int):
        self.text = text
        self.n = len(text)
        self.pos = 0
        self.dim = dimension

    def fail(self, message: str, pos: int | None = None):
        raise PolynomialSyntaxError(message, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < self.n and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < self.n else ""

    def parse(self) -> Polynomial:
        result = self.parse_expr()
        self.skip_ws()
        if self.pos != self.n:
            self.fail(f"unexpected character {self.text[self.pos]!r}")
        return result

    def parse_expr(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            if self.text[self.pos] == "-":
                sign = -1
            self.pos += 1
        total = self.parse_term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            term = self.parse_term()
            total = total + (term if op == "+" else -term)
        return total

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while self.peek() == "*":
            self.pos += 1
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> Polynomial:
        base = self.parse_base()
        if self.peek() == "^":
            caret = self.pos
            self.pos += 1
            ch = self.peek()
            if ch == "-":
                self.fail("negative exponent", caret + 1)
            if not ch.isdigit():
                self.fail("exponent must be an unsigned integer", self.pos)
            e = self.parse_uint()
            if self.pos < self.n and self.text[self.pos] == "/":
                self.fail("fractional exponent", self.pos)
            return base**e
        return base

    def parse_base(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.parse_expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.pos += 1
            return inner
        if ch.isdigit():
            num = self.parse_uint()
            if self.pos < self.n and self.text[self.pos] == "/":
                self.pos += 1
                if self.pos >= self.n or not self.text[self.pos].isdigit():
                    self.fail("expected denominator digits")
                den = self.parse_uint()
                if den == 0:
                    self.fail("zero denominator", self.pos - 1)
                return Polynomial.constant(self.dim, Fraction(num, den))
            return Polynomial.constant(self.dim, num)
        if ch.isalpha():
            return self.parse_var()
        if ch == "":
            self.fail("unexpected end of input")
        self.fail(f"unexpected character {ch!r}")

    def parse_uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < self.n and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected digits")
        return int(self.text[start:self.pos])

    def parse_var(self) -> Polynomial:
        start = self.pos
        name = self.text[self.pos]
        self.pos += 1
        digits = ""
        while self.pos < self.n and self.text[self.pos].isdigit():
            digits += self.text[self.pos]
            self.pos += 1
        if name == "x" and digits:
            index = int(digits) - 1
            if not 0 <= index < self.dim:
                self.fail(f"unknown variable x{digits}", start)
        elif not digits and name in _VAR_NAMES:
            index = _VAR_NAMES.index(name)
            if index >= self.dim:
                self.fail(f"unknown variable {name!r}", start)
        else:
            self.fail(f"unknown variable {name + digits!r}", start)
        return Polynomial.variable(self.dim, index)


def parse_polynomial(text: str, dimension: int) -> Polynomial:
    """Parse polynomial text into its exact representation.

    Accepts rationals like ``3/4``, variables ``x, y, z`` (for dimension <= 3)
    or ``x1..xn``, ``+ - * ^`` and parentheses.  Raises
    :class:`PolynomialSyntaxError` with a position on malformed input.
    """
    return _Parser(text, dimension).parse()


# ------------------------------------------------------------- exact measures


@dataclass(frozen=True)
class ExactMeasure:
    """A rational multiple of the unit (n-1)-sphere area, kept symbolic.

    Ratios of two measures with the same ``sphere_dim`` are exact rationals;
    ``float()`` substitutes the numeric sphere area 2*pi^(n/2)/Gamma(n/2).
    """

    coefficient: Fraction
    sphere_dim: int

    def _check(self, other: "ExactMeasure"):
        if self.sphere_dim != other.sphere_dim:
            raise ValueError("cannot combine measures with different sphere units")

    def __add__(self, other: "ExactMeasure") -> "ExactMeasure":
        self._check(other)
        return ExactMeasure(self.coefficient + other.coefficient, self.sphere_dim)

    def __sub__(self, other: "ExactMeasure") -> "ExactMeasure":
        self._check(other)
        return ExactMeasure(self.coefficient - other.coefficient, self.sphere_dim)

    def scale(self, factor) -> "ExactMeasure":
        return ExactMeasure(self.coefficient * Fraction(factor), self.sphere_dim)

    def __mul__(self, factor):
        if isinstance(factor, (int, Fraction)):
            return self.scale(factor)
        return NotImplemented

    __rmul__ = __mul__

    def ratio(self, other: "ExactMeasure") -> Fraction:
        """Exact rational ratio self/other (the symbolic unit cancels)."""
        self._check(other)
        if other.coefficient == 0:
            raise ZeroDivisionError("ratio against a zero measure")
        return self.coefficient / other.coefficient

    @property
    def unit_area(self) -> float:
        n = self.sphere_dim
        return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)

    def __float__(self) -> float:
        return float(self.coefficient) * self.unit_area

    def __repr__(self) -> str:
        return f"({self.coefficient})*omega_{self.sphere_dim - 1}"


def _double_factorial(k: int) -> int:
    # (-1)!! == 1 by convention
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def unit_sphere_moment(mono: Term) -> Fraction:
    """Exact coefficient c with  integral_{S^(n-1)} x^mono dsigma = c * omega_{n-1}.

    Zero unless every exponent is even; otherwise the classical moment rule
    prod_i (a_i - 1)!!  /  [n (n+2) ... (n + |a| - 2)].
    """
    n = len(mono)
    if any(e % 2 for e in mono):
        return Fraction(0)
    total = sum(mono)
    num = 1
    for e in mono:
        num *= _double_factorial(e - 1)
    den = 1
    for k in range(n, n + total - 1, 2):
        den *= k
    return Fraction(num, den)


def sphere_ball_integral(p: Polynomial, radius, region: str = "sphere") -> ExactMeasure:
    """Exact integral of ``p`` over a sphere or ball of the given radius.

    ``region`` is ``"sphere"`` (surface measure on the radius-r sphere
    centered at the origin) or ``"ball"`` (volume measure).  The result is an
    :class:`ExactMeasure`: a rational number times the symbolic unit-sphere
    area, so ratios of integrals are exact.
    """
    if region not in ("sphere", "ball"):
        raise ValueError("region must be 'sphere' or 'ball'")
    r = Fraction(radius)
    if r <= 0:
        raise ValueError("radius must be positive")
    n = p.dimension
    total = Fraction(0)
    for mono, c in p.terms.items():
        m = unit_sphere_moment(mono)
        if m == 0:
            continue
        d = sum(mono)
        if region == "sphere":
            total += c * m * r ** (d + n - 1)
        else:
            total += c * m * r ** (d + n) / (d + n)
    return ExactMeasure(total, n)


# ---------------------------------------------------------- linear elimination


def _null_space(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Exact rational null-space basis (free-variable parametrization)."""
    mat = [list(row) for row in rows]
    pivots: list[int] = []
    row_i = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(row_i, len(mat)):
            if mat[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[row_i], mat[pivot_row] = mat[pivot_row], mat[row_i]
        inv = 1 / mat[row_i][col]
        mat[row_i] = [v * inv for v in mat[row_i]]
        for r in range(len(mat)):
            if r != row_i and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row_i])]
        pivots.append(col)
        row_i += 1
        if row_i == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][fc]
        basis.append(vec)
    return basis


def monomials_of_degree(dimension: int, degree: int) -> list[Term]:
    """All exponent tuples of the given total degree, grlex-descending."""
    out: list[Term] = []

    def rec(prefix: list[int], remaining: int, slot: int):
        if slot == dimension - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, slot + 1)

    if degree < 0:
        return []
    rec([], degree, 0)
    return out


def monomials_up_to_degree(dimension: int, degree: int) -> list[Term]:
    out: list[Term] = []
    for d in range(degree + 1):
        out.extend(monomials_of_degree(dimension, d))
    return out


def harmonic_basis(dimension: int, degree: int) -> list[Polynomial]:
    """Exact rational basis of homogeneous harmonic polynomials.

    For dimension 2 the basis is the real/imaginary parts of ``(x + i y)^k``;
    for higher dimensions it is computed as the exact null space of the
    Laplacian on homogeneous monomials of the given degree.
    """
    n, k = dimension, degree
    if n < 2:
        raise ValueError("dimension must be at least 2")
    if k < 0:
        raise ValueError("degree must be non-negative")
    if k == 0:
        return [Polynomial.constant(n, 1)]
    if n == 2:
        re: dict[Term, Fraction] = {}
        im: dict[Term, Fraction] = {}
        for j in range(k + 1):
            c = Fraction(math.comb(k, j))
            mono = (k - j, j)
            if j % 4 == 0:
                re[mono] = c
            elif j % 4 == 1:
                im[mono] = c
            elif j % 4 == 2:
                re[mono] = -c
            else:
                im[mono] = -c
        return [Polynomial(2, re), Polynomial(2, im)]
    cols = monomials_of_degree(n, k)
    rows_index = {m: i for i, m in enumerate(monomials_of_degree(n, k - 2))}
    matrix = [[Fraction(0)] * len(cols) for _ in rows_index]
    for j, mono in enumerate(cols):
        lap = Polynomial(n, {mono: Fraction(1)}).laplacian()
        for m, c in lap.terms.items():
            matrix[rows_index[m]][j] += c
    basis = _null_space(matrix, len(cols))
    out = []
    for vec in basis:
        out.append(Polynomial(n, {cols[i]: v for i, v in enumerate(vec) if v != 0}))
    return out


def harmonic_dimension(dimension: int, degree: int) -> int:
    """Dimension of the space of homogeneous harmonics (exact count)."""
    n, k = dimension, degree
    if k == 0:
        return 1
    if k == 1:
        return n
    return math.comb(n + k - 1, k) - math.comb(n + k - 3, k - 2)


# ------------------------------------------------------------------- division


def divide(P: Polynomial, Q: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Graded-lex division: returns (R, remainder) with ``P = Q*R + remainder``.

    No remainder term is divisible by the leading monomial of ``Q``; for exact
    multiples the remainder is identically zero.
    """
    if Q.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if P.dimension != Q.dimension:
        raise ValueError("dimension mismatch")
    lmq, lcq = Q.leading_term()
    work = dict(P.terms)
    quot: dict[Term, Fraction] = {}
    rem: dict[Term, Fraction] = {}
    while work:
        mono = max(work, key=_grlex_key)
        coeff = work.pop(mono)
        if coeff == 0:
            continue
        if all(a >= b for a, b in zip(mono, lmq)):
            t = tuple(a - b for a, b in zip(mono, lmq))
            c = coeff / lcq
            quot[t] = quot.get(t, Fraction(0)) + c
            for mq, cq in Q.terms.items():
                if mq == lmq:
                    continue
                m = tuple(a + b for a, b in zip(t, mq))
                work[m] = work.get(m, Fraction(0)) - c * cq
                if work[m] == 0:
                    del work[m]
        else:
            rem[mono] = rem.get(mono, Fraction(0)) + coeff
    return Polynomial(P.dimension, quot), Polynomial(P.dimension, rem)


@dataclass(frozen=True)
class LiouvilleResult:
    """Outcome of the divisibility/growth check for a candidate ratio v/u."""

    ok: bool
    ratio: Polynomial | None
    degree_bound: int
    reason: str | None = None
    remainder: Polynomial | None = None


def liouville_ratio(u: Polynomial, v: Polynomial, gamma) -> LiouvilleResult:
    """Check that ``v = u * R`` exactly with ``deg R <= floor(gamma)``.

    Both inputs must be harmonic and ``u`` nonzero.  On failure the result
    records whether divisibility (nonzero remainder) or the growth bound
    (ratio degree exceeding ``floor(gamma)``) is violated.
    """
    if u.is_zero:
        raise ValueError("u must not be the zero polynomial")
    if not u.is_harmonic or not v.is_harmonic:
        raise ValueError("u and v must both be harmonic")
    g = Fraction(gamma)
    if g < 0:
        raise ValueError("growth exponent must be non-negative")
    bound = math.floor(g)
    ratio, rem = divide(v, u)
    if not rem.is_zero:
        return LiouvilleResult(False, None, bound, "nonzero_remainder", rem)
    if not v.is_zero and ratio.degree > bound:
        return LiouvilleResult(False, ratio, bound, "degree_exceeds_bound")
    return LiouvilleResult(True, ratio, bound)


def ratio_space(u: Polynomial, max_degree: int) -> list[Polynomial]:
    """Basis of ``{R : deg R <= max_degree and u*R is harmonic}``.

    Computed as the exact null space of ``R -> lap(u * R)``, i.e. of
    ``2 grad(u) . grad(R) + u lap(R)`` when ``u`` itself is harmonic.  The
    span always contains the constants when ``u`` is harmonic.
    """
    if u.is_zero:
        raise ValueError("u must not be the zero polynomial")
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    n = u.dimension
    cols = monomials_up_to_degree(n, max_degree)
    images = []
    row_monos: dict[Term, int] = {}
    for mono in cols:
        img = (u * Polynomial(n, {mono: Fraction(1)})).laplacian()
        images.append(img)
        for m in img.terms:
            row_monos.setdefault(m, len(row_monos))
    matrix = [[Fraction(0)] * len(cols) for _ in row_monos]
    for j, img in enumerate(images):
        for m, c in img.terms.items():
            matrix[row_monos[m]][j] += c
    basis_vecs = _null_space(matrix, len(cols))
    out = [
        Polynomial(n, {cols[i]: v for i, v in enumerate(vec) if v != 0})
        for vec in basis_vecs
    ]
    out.sort(key=lambda p: (p.degree, p.leading_term()[0]))
    return out


# ------------------------------------------------------------------ parameters


@dataclass(frozen=True)
class ClassParams:
    """Shared class parameters: dimension, frequency bound, uniform bound.

    ``nbar0`` dominates ``n0``; for degree-bounded harmonic polynomials the
    frequency at every center/radius is at most the degree, so
    ``nbar0 = n0 = max(degree, 1)`` is admissible.
    """

    dimension: int
    n0: Fraction
    nbar0: Fraction

    def __post_init__(self):
        if self.dimension < 2:
            raise ValueError("dimension must be at least 2")
        n0 = Fraction(self.n0)
        nbar0 = Fraction(self.nbar0)
        object.__setattr__(self, "n0", n0)
        object.__setattr__(self, "nbar0", nbar0)
        if n0 <= 0:
            raise ValueError("n0 must be positive")
        if nbar0 < n0:
            raise ValueError("nbar0 must dominate n0")

    @classmethod
    def for_polynomial(cls, u: Polynomial, n0=None) -> "ClassParams":
        if u.is_zero:
            raise ValueError("zero polynomial has no frequency class")
        bound = Fraction(n0) if n0 is not None else Fraction(max(int(u.degree), 1))
        return cls(u.dimension, bound, bound)

    @property
    def a_s(self) -> Fraction:
        """Weight-exponent threshold min(1, 2/nbar0)."""
        return min(Fraction(1), Fraction(2) / self.nbar0)


# ------------------------------------------------------------- random corpora


def random_harmonic(
    dimension: int,
    max_degree: int,
    rng: random.Random,
    constant_chance: float = 0.0,
) -> Polynomial:
    """Seeded random harmonic polynomial with small rational coefficients.

    Draws a rational combination of the homogeneous harmonic bases up to
    ``max_degree`` (guaranteeing a nonzero top-degree component, so the
    degree is exactly ``max_degree``), plus an optional rational constant.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    out = Polynomial.zero(dimension)
    for k in range(1, max_degree + 1):
        basis = harmonic_basis(dimension, k)
        picked_top = False
        for b in basis:
            if k < max_degree and rng.random() < 0.45:
                continue
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            if c == 0 and k == max_degree and not picked_top:
                c = Fraction(1)
            if c != 0:
                picked_top = picked_top or k == max_degree
                out = out + b.scale(c)
        if k == max_degree and not picked_top:
            out = out + basis[0]
    if constant_chance > 0 and rng.random() < constant_chance:
        c = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        if c != 0:
            out = out + Polynomial.constant(dimension, c)
    return out


def random_rational(rng: random.Random, span: int = 9, max_den: int = 4) -> Fraction:
    """Small random rational, deterministic for a seeded ``rng``."""
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))
