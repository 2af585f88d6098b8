"""nodalkit: verification toolkit for nodal sets of harmonic polynomials.

Submodules
----------
poly        exact rational polynomial arithmetic, bases, division, integrals
frequency   Almgren-type frequency as an exact rational function of the radius
nodal       singular points, nodal domain counting, Euler-type count identity
weighted    weighted Sobolev exponent algebra and numeric inequality probes
degenerate  certified harmonic pairs, degenerate finite-volume solver, ratios
cli         the ``nodal-kit`` command line front end
"""

__version__ = "0.1.0"

from .poly import (  # noqa: F401
    ClassParams,
    ExactMeasure,
    Polynomial,
    PolynomialSyntaxError,
    divide,
    harmonic_basis,
    liouville_ratio,
    parse_polynomial,
    ratio_space,
    sphere_ball_integral,
)
