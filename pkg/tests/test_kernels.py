"""The compiled kernels and the numpy fallback must agree bit for bit."""

import numpy as np
import pytest

from nodalkit import _kernels
from nodalkit._kernels import _fallback


def _random_sign_grids(seed, count, shape):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield rng.integers(-1, 2, size=shape).astype(np.int8)


def _random_value_grids(seed, count, shape):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        g = rng.normal(size=shape)
        # sprinkle exact zeros to exercise the on-the-level convention
        g[rng.random(size=shape) < 0.05] = 0.0
        yield g


def test_label_cells_handmade():
    signs = np.array(
        [
            [1, 1, 0, -1],
            [0, 1, 0, -1],
            [-1, 0, 1, 1],
            [-1, -1, 0, 1],
        ],
        dtype=np.int8,
    )
    labels, count = _kernels.label_cells(signs)
    assert count == 4
    assert labels[0, 0] == labels[0, 1] == labels[1, 1] == 0
    assert labels[0, 3] == labels[1, 3] == 1
    assert labels[2, 0] == labels[3, 0] == labels[3, 1] == 2
    assert labels[2, 2] == labels[2, 3] == labels[3, 3] == 3
    assert (labels[signs == 0] == -1).all()


def test_label_cells_empty_and_uniform():
    z = np.zeros((3, 3), dtype=np.int8)
    labels, count = _kernels.label_cells(z)
    assert count == 0 and (labels == -1).all()
    ones = np.ones((3, 3), dtype=np.int8)
    labels, count = _kernels.label_cells(ones)
    assert count == 1 and (labels == 0).all()


def test_marching_segments_single_cell():
    # one cell, left side negative: a=-1 b=1 c=1 d=-1 -> vertical-ish chord
    vals = np.array([[-1.0, -1.0], [1.0, 1.0]])
    seg = _kernels.marching_segments(vals)
    assert seg.shape == (1, 4)
    np.testing.assert_allclose(seg[0], [0.5, 0.0, 0.5, 1.0])


def test_marching_segments_empty():
    assert _kernels.marching_segments(np.ones((4, 4))).shape == (0, 4)
    assert _kernels.marching_segments(-np.ones((4, 4))).shape == (0, 4)


def test_marching_zero_nodes_count_negative():
    # the zero node joins the negative side, so an all-zero row yields no
    # crossing against a negative row but does cross a positive one
    vals = np.array([[0.0, 0.0], [-1.0, -1.0]])
    assert _kernels.marching_segments(vals).shape == (0, 4)
    vals = np.array([[0.0, 0.0], [1.0, 1.0]])
    assert _kernels.marching_segments(vals).shape == (1, 4)


@pytest.mark.skipif(
    _kernels.IMPLEMENTATION == "fallback",
    reason="compiled extension unavailable; nothing to cross-check",
)
def test_implementations_agree_on_labels():
    assert _fallback.IMPLEMENTATION == "fallback"
    for signs in _random_sign_grids(31, 25, (17, 23)):
        la, ca = _kernels.label_cells(signs)
        lb, cb = _fallback.label_cells(signs)
        assert ca == cb
        assert la.dtype == lb.dtype == np.int32
        np.testing.assert_array_equal(la, lb)


@pytest.mark.skipif(
    _kernels.IMPLEMENTATION == "fallback",
    reason="compiled extension unavailable; nothing to cross-check",
)
def test_implementations_agree_on_segments():
    for vals in _random_value_grids(77, 25, (19, 21)):
        sa = _kernels.marching_segments(vals)
        sb = _fallback.marching_segments(vals)
        assert sa.shape == sb.shape
        np.testing.assert_array_equal(sa, sb)


def test_compiled_extension_is_active():
    # the build ships the extension; fail loudly if the import silently fell
    # back (the env override is exercised by the benchmark instead)
    import os

    if os.environ.get("NODALKIT_FORCE_FALLBACK"):
        pytest.skip("fallback forced via environment")
    assert _kernels.IMPLEMENTATION == "compiled"
