"""Grid hot-loop kernels: compiled extension with a pure numpy fallback.

The compiled Cython module ``_core`` is preferred when present; setting the
environment variable ``NODALKIT_FORCE_FALLBACK`` (to any non-empty value)
forces the numpy/scipy implementation, which the benchmark and the
cross-validation tests use.
"""

from __future__ import annotations

import os

if os.environ.get("NODALKIT_FORCE_FALLBACK"):
    from . import _fallback as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _fallback as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
label_cells = _impl.label_cells
marching_segments = _impl.marching_segments

__all__ = ["IMPLEMENTATION", "label_cells", "marching_segments"]
