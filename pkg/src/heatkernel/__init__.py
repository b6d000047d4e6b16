"""Dirichlet heat equation on [0, 1] via an explicit frequency-axis kernel.

The package evaluates the boundary-value-problem kernel g(m, x, y), its
complex continuation along the imaginary frequency axis, and both solution
representations of the heat problem: the principal-value frequency inversion
(with Duhamel composition for forcings) and the classical eigenmode series
used as an independent cross-check.  A small expression language and a
problem catalog feed the command-line front end.
"""

from .errors import HeatKernelError, NumericalFailure, ToleranceNotReached
from .expr import ExprError, ExprEvalError, ExprSyntaxError, evaluate, parse, to_callable
from .kernel import (
    KernelValue,
    SpatialPair,
    bvp_solution,
    g1_closed,
    g2_closed,
    green_complex,
    green_real,
    modulus_closed,
)
from .laplace import (
    DuhamelResult,
    InversionConfig,
    InversionResult,
    TransformSlice,
    limit_study,
    transform_at,
    transform_slice,
    u1_laplace,
    u1_laplace_grid,
    u2_laplace,
    u2_laplace_grid,
)
from .problems import (
    AdmissibilityReport,
    CatalogEntry,
    ExactSolution,
    HeatProblem,
    catalog,
    catalog_names,
    check_admissible,
    get_problem,
)
from .series import (
    SeriesConfig,
    l1_bound_check,
    sine_coefficients,
    u1_series,
    u1_series_grid,
    u2_series,
    u2_series_grid,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "HeatKernelError",
    "NumericalFailure",
    "ToleranceNotReached",
    "ExprError",
    "ExprSyntaxError",
    "ExprEvalError",
    "parse",
    "evaluate",
    "to_callable",
    "KernelValue",
    "SpatialPair",
    "green_real",
    "green_complex",
    "g1_closed",
    "g2_closed",
    "modulus_closed",
    "bvp_solution",
    "SeriesConfig",
    "sine_coefficients",
    "u1_series",
    "u1_series_grid",
    "u2_series",
    "u2_series_grid",
    "l1_bound_check",
    "InversionConfig",
    "InversionResult",
    "DuhamelResult",
    "TransformSlice",
    "transform_at",
    "transform_slice",
    "u1_laplace",
    "u1_laplace_grid",
    "u2_laplace",
    "u2_laplace_grid",
    "limit_study",
    "HeatProblem",
    "ExactSolution",
    "AdmissibilityReport",
    "CatalogEntry",
    "catalog",
    "catalog_names",
    "check_admissible",
    "get_problem",
]
