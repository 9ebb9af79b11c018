"""Constrained polynomial approximation of rational triangular Bezier patches."""

__version__ = "0.1.0"

from ._accel import BACKEND
from .approximator import (
    ApproximationProblem,
    ApproximationResult,
    approximate,
    approximate_patch,
    error_grid,
    error_l2,
    error_max,
)
from .constraints import boundary_constraints, c1_constraints
from .core import (
    MultiIndex,
    PolynomialPatch,
    RationalPatch,
    eval_polynomial,
    eval_rational,
    index_sets,
    theta,
)
from .dualbernstein import E_table, clenshaw_hahn, hahn_eval
from .patchfile import read_constraints, read_patch, write_constraints, write_patch
from .quadrature import QuadratureError, integral_collection, single_integral

__all__ = [
    "BACKEND",
    "ApproximationProblem",
    "ApproximationResult",
    "approximate",
    "approximate_patch",
    "error_grid",
    "error_l2",
    "error_max",
    "boundary_constraints",
    "c1_constraints",
    "MultiIndex",
    "PolynomialPatch",
    "RationalPatch",
    "eval_polynomial",
    "eval_rational",
    "index_sets",
    "theta",
    "E_table",
    "clenshaw_hahn",
    "hahn_eval",
    "read_constraints",
    "read_patch",
    "write_constraints",
    "write_patch",
    "QuadratureError",
    "integral_collection",
    "single_integral",
]
