"""numpy/scipy implementations of the grid kernels.

Semantics match ``_core.pyx`` exactly (segment order, label numbering and
endpoint arithmetic), so the two implementations are interchangeable.
"""

from __future__ import annotations

import numpy as np
from scipy import ndimage

IMPLEMENTATION = "fallback"

_CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=np.uint8)

# segment templates per marching-squares case: list of (edge_a, edge_b) pairs.
# Edges: 0 bottom (a-b), 1 right (b-c), 2 top (d-c), 3 left (a-d), with
# corners a=(i,j) b=(i+1,j) c=(i+1,j+1) d=(i,j+1) in index coordinates.
_CASES: dict[int, list[tuple[int, int]]] = {
    1: [(3, 0)],
    2: [(0, 1)],
    3: [(3, 1)],
    4: [(1, 2)],
    6: [(0, 2)],
    7: [(3, 2)],
    8: [(2, 3)],
    9: [(0, 2)],
    11: [(1, 2)],
    12: [(3, 1)],
    13: [(0, 1)],
    14: [(3, 0)],
}


def label_cells(signs: np.ndarray) -> tuple[np.ndarray, int]:
    """4-connected components of equal-sign nonzero cells.

    ``signs`` is an int8 array with values in {-1, 0, +1}.  Returns
    ``(labels, count)`` where ``labels`` is int32 with -1 on zero cells and
    component ids 0..count-1 elsewhere, numbered by first raster encounter.
    """
    signs = np.ascontiguousarray(signs, dtype=np.int8)
    labels = np.full(signs.shape, -1, dtype=np.int32)
    pos, _ = ndimage.label(signs > 0, structure=_CROSS)
    neg, _ = ndimage.label(signs < 0, structure=_CROSS)
    combined = np.where(signs > 0, pos, -neg).ravel()
    nz = np.nonzero(combined)[0]
    if nz.size == 0:
        return labels, 0
    # renumber jointly by first raster encounter so numbering matches _core
    vals = combined[nz]
    uniq, first = np.unique(vals, return_index=True)
    rank = np.empty(uniq.shape, dtype=np.int32)
    rank[np.argsort(first, kind="stable")] = np.arange(uniq.size, dtype=np.int32)
    labels.ravel()[nz] = rank[np.searchsorted(uniq, vals)]
    return labels, int(uniq.size)


def _edge_points(edge: np.ndarray, i: np.ndarray, j: np.ndarray,
                 a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray):
    x = np.empty(edge.shape, dtype=np.float64)
    y = np.empty(edge.shape, dtype=np.float64)
    for e in range(4):
        m = edge == e
        if not m.any():
            continue
        if e == 0:
            x[m] = i[m] + a[m] / (a[m] - b[m])
            y[m] = j[m]
        elif e == 1:
            x[m] = i[m] + 1.0
            y[m] = j[m] + b[m] / (b[m] - c[m])
        elif e == 2:
            x[m] = i[m] + d[m] / (d[m] - c[m])
            y[m] = j[m] + 1.0
        else:
            x[m] = i[m]
            y[m] = j[m] + a[m] / (a[m] - d[m])
    return x, y


def marching_segments(values: np.ndarray, level: float = 0.0) -> np.ndarray:
    """Zero-crossing segments of the bilinear interpolant at ``level``.

    ``values[i, j]`` holds the node value at index point (i, j).  Returns an
    (K, 4) float64 array of segments (x0, y0, x1, y1) in index coordinates,
    ordered by (cell i, cell j, template slot).  Nodes with value exactly at
    the level count as the negative side.  Saddle cells are disambiguated by
    the cell-center average.
    """
    v = np.asarray(values, dtype=np.float64) - float(level)
    a = v[:-1, :-1]
    b = v[1:, :-1]
    c = v[1:, 1:]
    d = v[:-1, 1:]
    case = (
        (a > 0).astype(np.int8)
        + 2 * (b > 0).astype(np.int8)
        + 4 * (c > 0).astype(np.int8)
        + 8 * (d > 0).astype(np.int8)
    )
    ii, jj = np.meshgrid(
        np.arange(a.shape[0]), np.arange(a.shape[1]), indexing="ij"
    )
    rows: list[np.ndarray] = []

    def emit(mask: np.ndarray, pairs: list[tuple[int, int]]):
        if not mask.any():
            return
        im = ii[mask].astype(np.float64)
        jm = jj[mask].astype(np.float64)
        am, bm, cm, dm = a[mask], b[mask], c[mask], d[mask]
        for slot, (e0, e1) in enumerate(pairs):
            x0, y0 = _edge_points(np.full(im.shape, e0, dtype=np.int8), im, jm, am, bm, cm, dm)
            x1, y1 = _edge_points(np.full(im.shape, e1, dtype=np.int8), im, jm, am, bm, cm, dm)
            seg = np.stack([x0, y0, x1, y1], axis=1)
            key = np.stack([im, jm, np.full(im.shape, slot)], axis=1)
            rows.append(np.concatenate([key, seg], axis=1))

    for code, pairs in _CASES.items():
        emit(case == code, pairs)
    center = a + b + c + d
    emit((case == 5) & (center > 0), [(0, 1), (2, 3)])
    emit((case == 5) & (center <= 0), [(3, 0), (1, 2)])
    emit((case == 10) & (center > 0), [(3, 0), (1, 2)])
    emit((case == 10) & (center <= 0), [(0, 1), (2, 3)])

    if not rows:
        return np.empty((0, 4), dtype=np.float64)
    allrows = np.concatenate(rows, axis=0)
    order = np.lexsort((allrows[:, 2], allrows[:, 1], allrows[:, 0]))
    return np.ascontiguousarray(allrows[order][:, 3:])
