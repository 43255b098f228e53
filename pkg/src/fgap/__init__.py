"""Elliptic fixed points of Fuchsian groups: geometry engine and bound checks."""

from .bounds import (
    BoundReport,
    Claim,
    MinMaxResult,
    check_main_theorem,
    check_nonelementary_bound,
    check_proposition,
    minimize_minmax,
    theorem_constant,
    theorem_sinh_constant,
    yamada_constant,
)
from .elementary import PairDiagnosis, diagnose_pair, order_two_product_residual, shares_fixed_point
from .groups import (
    EllipticPointSet,
    EnumConfig,
    GapResult,
    GroupPreset,
    elliptic_fixed_points,
    enumerate_elements,
    hecke_group,
    min_elliptic_gap,
    modular_group,
    parse_preset,
    systole_estimate,
    triangle_group,
)
from .metric import (
    GeodesicSegment,
    displacement_identity_residual,
    distance,
    geodesic_point,
    half_displacement,
)
from .moebius import (
    ElementClass,
    EllipticDatum,
    GroupElement,
    UhpPoint,
    apply,
    axis,
    classify,
    compose,
    elliptic_datum,
    elliptic_from,
    inverse,
    translation_length,
)
from .report import RunConfig, VerifyReport, analyze, verify

__version__ = "0.1.0"
