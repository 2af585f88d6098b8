"""Internal float-grid helpers: vectorized polynomial evaluation, midpoint
quadrature grids on disks/balls, and exact-sign backup at rational nodes.

The exact modules never import this; it exists for the numeric probes and
the nodal-geometry estimators, which work on numpy grids.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .poly import Polynomial


def eval_on_axes(p: Polynomial, axes: list[np.ndarray]) -> np.ndarray:
    """Evaluate ``p`` on the tensor grid spanned by 1-D coordinate axes."""
    if len(axes) != p.dimension:
        raise ValueError("need one axis per variable")
    n = p.dimension
    shaped = []
    for i, ax in enumerate(axes):
        shape = [1] * n
        shape[i] = -1
        shaped.append(np.asarray(ax, dtype=np.float64).reshape(shape))
    out = np.zeros(tuple(len(ax) for ax in axes), dtype=np.float64)
    powers: list[dict[int, np.ndarray]] = [{} for _ in range(n)]

    def power(i: int, e: int) -> np.ndarray:
        if e not in powers[i]:
            powers[i][e] = shaped[i] ** e
        return powers[i][e]

    for mono, c in p.terms.items():
        term = np.full((1,) * n, float(c))
        for i, e in enumerate(mono):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


def eval_at_points(p: Polynomial, pts: np.ndarray) -> np.ndarray:
    """Evaluate ``p`` at an (N, dim) array of points."""
    pts = np.asarray(pts, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[None, :]
    out = np.zeros(pts.shape[0], dtype=np.float64)
    cache: dict[tuple[int, int], np.ndarray] = {}

    def power(i: int, e: int) -> np.ndarray:
        key = (i, e)
        if key not in cache:
            cache[key] = pts[:, i] ** e
        return cache[key]

    for mono, c in p.terms.items():
        term = np.full(pts.shape[0], float(c))
        for i, e in enumerate(mono):
            if e:
                term = term * power(i, e)
        out += term
    return out


def abs_eval_on_axes(p: Polynomial, axes: list[np.ndarray]) -> np.ndarray:
    """Evaluate sum |c| * |x|^mono: a conservative rounding-error gauge."""
    q = Polynomial(p.dimension, {m: abs(c) for m, c in p.terms.items()})
    return eval_on_axes(q, [np.abs(np.asarray(a, dtype=np.float64)) for a in axes])


def fraction_axis(center: Fraction, half_side: Fraction, cells: int) -> list[Fraction]:
    """Exact node coordinates center - half .. center + half (cells+1 nodes)."""
    step = 2 * Fraction(half_side) / cells
    lo = Fraction(center) - Fraction(half_side)
    return [lo + i * step for i in range(cells + 1)]


def exact_sign(p: Polynomial, point: list[Fraction]) -> int:
    v = p.evaluate(point)
    return 0 if v == 0 else (1 if v > 0 else -1)


def disk_midpoints(radius: float, cells: int, center=(0.0, 0.0)):
    """Midpoint-rule sample points covering the disk of the given radius.

    Returns ``(pts, weight)``: an (N, 2) array of cell centers whose distance
    to ``center`` is at most ``radius``, and the scalar cell area.
    """
    r = float(radius)
    h = 2.0 * r / cells
    ax = np.linspace(-r + h / 2.0, r - h / 2.0, cells)
    X, Y = np.meshgrid(ax, ax, indexing="ij")
    inside = X**2 + Y**2 <= r * r
    pts = np.stack([X[inside] + center[0], Y[inside] + center[1]], axis=1)
    return pts, h * h


def ball_midpoints(radius: float, cells: int):
    """Midpoint-rule sample points covering the 3-ball (origin centered)."""
    r = float(radius)
    h = 2.0 * r / cells
    ax = np.linspace(-r + h / 2.0, r - h / 2.0, cells)
    X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
    inside = X**2 + Y**2 + Z**2 <= r * r
    pts = np.stack([X[inside], Y[inside], Z[inside]], axis=1)
    return pts, h**3
