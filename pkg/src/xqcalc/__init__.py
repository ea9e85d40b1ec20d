"""Calculus of compactly supported distributions with exact pairings.

Distributions (extensive quantities) are finite expression trees paired
against polynomial test functions exactly, or against arbitrary smooth
callables through composite Gauss-Legendre quadrature.  On top of the core
calculus sit the scaled sphere and ball families, the divergence theorem
on the unit ball, wave-equation fundamental solutions in dimensions 1-3,
their formal series on nilpotent time, and a seeded verification CLI.
"""

from importlib import metadata

try:
    __version__ = metadata.version("xqcalc")
except metadata.PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .distributions import (
    BallUnit,
    Box,
    CisNode,
    DiffOperator,
    Dirac,
    Dist,
    ExactPairingError,
    ExtProduct,
    HomothetyNode,
    Interval,
    LinComb,
    MultFn,
    NumericPairing,
    OpImage,
    PolyMapNode,
    ProjectionNode,
    Pushforward,
    SphNode,
    SphereUnit,
    apply_operator,
    ball_moment,
    box_boundary,
    ddx_op,
    dir_deriv_op,
    dist_from_json,
    dist_to_json,
    ibs_pair,
    laplacian_op,
    pair,
    pair_callable,
    pair_numeric,
    pushforward,
    scaled,
    sphere_moment,
    total,
    zero,
)
from .parsing import PolyParseError, format_poly, parse_poly
from .polynomials import (
    DimensionMismatchError,
    Poly,
    PolyMap,
    UniPoly,
    VectorFieldPoly,
    divergence,
    gradient,
    laplacian,
    wallis_full,
    wallis_half,
)
from .quadrature import (
    DEFAULT_CONFIG,
    QuadConfig,
    SmoothFn,
    gauss_legendre,
    integrate_1d,
    integrate_nd,
    smoothfn_from_poly,
)
from .spheres import (
    Family,
    FamilyKind,
    ball_as_integral_check,
    ball_unit,
    family_at,
    flux_unit_sphere,
    homothety_scaling_checks,
    pair_family,
    sphere_unit,
)
from .verify import (
    CheckRecord,
    VerifyReport,
    report_to_json,
    run_flux,
    run_suite,
)
from .wave import (
    InitialState,
    Jet,
    SolutionKind,
    initial_state_dists,
    initial_state_pair,
    jet_first_order,
    jet_pairing,
    jet_second_order,
    jet_vs_solution,
    pair_solution,
    radial_bump,
    solution_at,
    solution_jet,
    wave_residual,
)

__all__ = [
    "__version__",
    # polynomials
    "Poly",
    "UniPoly",
    "PolyMap",
    "VectorFieldPoly",
    "DimensionMismatchError",
    "gradient",
    "divergence",
    "laplacian",
    "wallis_full",
    "wallis_half",
    # parsing
    "parse_poly",
    "format_poly",
    "PolyParseError",
    # quadrature
    "QuadConfig",
    "DEFAULT_CONFIG",
    "SmoothFn",
    "gauss_legendre",
    "integrate_1d",
    "integrate_nd",
    "smoothfn_from_poly",
    # distributions
    "Dist",
    "Dirac",
    "Interval",
    "Box",
    "SphereUnit",
    "BallUnit",
    "Pushforward",
    "MultFn",
    "OpImage",
    "LinComb",
    "ExtProduct",
    "PolyMapNode",
    "HomothetyNode",
    "ProjectionNode",
    "CisNode",
    "SphNode",
    "DiffOperator",
    "laplacian_op",
    "dir_deriv_op",
    "ddx_op",
    "apply_operator",
    "pair",
    "pair_callable",
    "pair_numeric",
    "NumericPairing",
    "total",
    "pushforward",
    "scaled",
    "zero",
    "box_boundary",
    "ibs_pair",
    "sphere_moment",
    "ball_moment",
    "dist_to_json",
    "dist_from_json",
    "ExactPairingError",
    # spheres
    "Family",
    "FamilyKind",
    "sphere_unit",
    "ball_unit",
    "pair_family",
    "family_at",
    "ball_as_integral_check",
    "flux_unit_sphere",
    "homothety_scaling_checks",
    # wave
    "SolutionKind",
    "pair_solution",
    "solution_at",
    "wave_residual",
    "initial_state_pair",
    "initial_state_dists",
    "InitialState",
    "Jet",
    "jet_first_order",
    "jet_second_order",
    "jet_pairing",
    "jet_vs_solution",
    "solution_jet",
    "radial_bump",
    # verify
    "CheckRecord",
    "VerifyReport",
    "run_suite",
    "run_flux",
    "report_to_json",
]
