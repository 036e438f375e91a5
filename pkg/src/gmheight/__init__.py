"""Certified heights, auxiliary polynomials and explicit lower bounds for points and curves of the torus G_m^2."""

from types import ModuleType as _ModuleType

from .algebra import cyclotomic_order, cyclotomic_polynomial, factor_univariate, is_irreducible, primes_upto
from .analytic import RootCluster, isolate_roots, kronecker_test, log_mahler_1d
from .balls import ComplexBall, RealBall, default_precision
from .bounds import (
    BoundReport,
    ParamSchedule,
    audit_inequalities,
    bound_value,
    param_schedule,
    verify_bound,
)
from .curves import (
    Curve,
    TorsionCurveData,
    ecc_cardinality_ok,
    ecc_primes,
    is_torsion_curve,
    normalized_height_curve,
    power_image,
    power_image_poly,
)
from .errors import (
    BoundUnmet,
    DomainError,
    GmHeightError,
    IndeterminateDegree,
    InternalError,
    ParseError,
    PrecisionExhausted,
    RamifiedPrime,
)
from .extrapolation import ExtrapolationReport, extrapolation_report, frobenius_apply, vanishing_order
from .fields import FieldElement, NumberField, compositum, minimal_polynomial
from .heights import Point2, height_algebraic, is_torsion_point, point_height, power_point
from .kpoly import KPoly2
from .obstruction import JetMatrix, extension_degree, jet_matrix, jet_space_dim, obstruction_index
from .polys import IntPoly1, IntPoly2, parse_poly
from .siegel import SiegelResult, construct_auxiliary, construct_auxiliary_multi, polynomial_height

__version__ = "0.1.0"

__all__ = [name for name, obj in dict(globals()).items() if not name.startswith("_") and not isinstance(obj, _ModuleType)]
