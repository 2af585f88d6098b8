# cython: language_level=3
"""Compiled grid kernels: cell labeling and marching-squares extraction.

Mirrors ``_fallback`` exactly: same label numbering (first raster
encounter), same segment order (cell-major, template slot), same endpoint
arithmetic and the same saddle rule (cell-center average, ties negative).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

IMPLEMENTATION = "compiled"


def label_cells(signs):
    """4-connected components of equal-sign nonzero cells (see _fallback)."""
    cdef cnp.int8_t[:, ::1] s = np.ascontiguousarray(signs, dtype=np.int8)
    cdef Py_ssize_t nx = s.shape[0], ny = s.shape[1]
    labels_arr = np.full((nx, ny), -1, dtype=np.int32)
    cdef cnp.int32_t[:, ::1] lab = labels_arr
    stack_arr = np.empty(nx * ny, dtype=np.int64)
    cdef cnp.int64_t[::1] stack = stack_arr
    cdef Py_ssize_t i, j, ci, cj, top
    cdef cnp.int32_t next_id = 0
    cdef cnp.int8_t sign
    for i in range(nx):
        for j in range(ny):
            if s[i, j] == 0 or lab[i, j] >= 0:
                continue
            sign = s[i, j]
            top = 0
            stack[top] = i * ny + j
            top += 1
            lab[i, j] = next_id
            while top > 0:
                top -= 1
                ci = stack[top] // ny
                cj = stack[top] % ny
                if ci > 0 and lab[ci - 1, cj] < 0 and s[ci - 1, cj] == sign:
                    lab[ci - 1, cj] = next_id
                    stack[top] = (ci - 1) * ny + cj
                    top += 1
                if ci + 1 < nx and lab[ci + 1, cj] < 0 and s[ci + 1, cj] == sign:
                    lab[ci + 1, cj] = next_id
                    stack[top] = (ci + 1) * ny + cj
                    top += 1
                if cj > 0 and lab[ci, cj - 1] < 0 and s[ci, cj - 1] == sign:
                    lab[ci, cj - 1] = next_id
                    stack[top] = ci * ny + cj - 1
                    top += 1
                if cj + 1 < ny and lab[ci, cj + 1] < 0 and s[ci, cj + 1] == sign:
                    lab[ci, cj + 1] = next_id
                    stack[top] = ci * ny + cj + 1
                    top += 1
            next_id += 1
    return labels_arr, int(next_id)


cdef inline void _edge_point(int edge, double i, double j,
                             double a, double b, double c, double d,
                             double* x, double* y) nogil:
    if edge == 0:
        x[0] = i + a / (a - b)
        y[0] = j
    elif edge == 1:
        x[0] = i + 1.0
        y[0] = j + b / (b - c)
    elif edge == 2:
        x[0] = i + d / (d - c)
        y[0] = j + 1.0
    else:
        x[0] = i
        y[0] = j + a / (a - d)


# per-case segment templates, -1 padded: (e0, e1, e0', e1')
cdef int[16][4] _CASES
_tmpl = {
    0: (-1, -1, -1, -1), 1: (3, 0, -1, -1), 2: (0, 1, -1, -1), 3: (3, 1, -1, -1),
    4: (1, 2, -1, -1), 6: (0, 2, -1, -1), 7: (3, 2, -1, -1), 8: (2, 3, -1, -1),
    9: (0, 2, -1, -1), 11: (1, 2, -1, -1), 12: (3, 1, -1, -1), 13: (0, 1, -1, -1),
    14: (3, 0, -1, -1), 15: (-1, -1, -1, -1),
    5: (0, 0, 0, 0), 10: (0, 0, 0, 0),  # saddles resolved at run time
}
for _k, _v in _tmpl.items():
    for _s in range(4):
        _CASES[_k][_s] = _v[_s]


def marching_segments(values, double level=0.0):
    """Zero-crossing segments at ``level`` (see _fallback for the contract)."""
    cdef cnp.float64_t[:, ::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t nx = v.shape[0] - 1, ny = v.shape[1] - 1
    out_arr = np.empty((2 * nx * ny if nx > 0 and ny > 0 else 0, 4), dtype=np.float64)
    cdef cnp.float64_t[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, k = 0
    cdef double a, b, c, d, x0, y0, x1, y1
    cdef int case, e0, e1, e2, e3, slot
    for i in range(nx):
        for j in range(ny):
            a = v[i, j] - level
            b = v[i + 1, j] - level
            c = v[i + 1, j + 1] - level
            d = v[i, j + 1] - level
            case = (1 if a > 0 else 0) + (2 if b > 0 else 0) \
                + (4 if c > 0 else 0) + (8 if d > 0 else 0)
            if case == 0 or case == 15:
                continue
            if case == 5:
                if a + b + c + d > 0:
                    e0, e1, e2, e3 = 0, 1, 2, 3
                else:
                    e0, e1, e2, e3 = 3, 0, 1, 2
            elif case == 10:
                if a + b + c + d > 0:
                    e0, e1, e2, e3 = 3, 0, 1, 2
                else:
                    e0, e1, e2, e3 = 0, 1, 2, 3
            else:
                e0 = _CASES[case][0]
                e1 = _CASES[case][1]
                e2 = _CASES[case][2]
                e3 = _CASES[case][3]
            _edge_point(e0, <double> i, <double> j, a, b, c, d, &x0, &y0)
            _edge_point(e1, <double> i, <double> j, a, b, c, d, &x1, &y1)
            out[k, 0] = x0
            out[k, 1] = y0
            out[k, 2] = x1
            out[k, 3] = y1
            k += 1
            if e2 >= 0 and (case == 5 or case == 10):
                _edge_point(e2, <double> i, <double> j, a, b, c, d, &x0, &y0)
                _edge_point(e3, <double> i, <double> j, a, b, c, d, &x1, &y1)
                out[k, 0] = x0
                out[k, 1] = y0
                out[k, 2] = x1
                out[k, 3] = y1
                k += 1
    return out_arr[:k].copy()
