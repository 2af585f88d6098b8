"""Build script for the optional compiled kernels.

The package is pure Python plus one optional Cython extension
(``nodalkit._kernels._core``).  If Cython or a C compiler is missing the
extension is skipped and the package falls back to the numpy/scipy kernel
implementations at import time.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "nodalkit._kernels._core",
                ["src/nodalkit/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:  # pragma: no cover - build-environment dependent
    ext_modules = []

setup(ext_modules=ext_modules)
