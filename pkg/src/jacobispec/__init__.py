"""Exact computational engine for spectral curves of finite Jacobi pencils."""

from .errors import (
    ExactDivisionError,
    JacobiSpecError,
    NotSquarefreeError,
    TagMismatchError,
    TrackingError,
    UnsupportedPencilError,
)
from .exactpoly import (
    BiPoly,
    T_FORM,
    UniPoly,
    W_FORM,
    discriminant_in_lambda,
    divide_exact_lambda,
    format_rational,
    gcd_in_lambda,
    parse_rational,
    resultant_in_lambda,
    to_t_form,
    to_w_form,
)
from .pencil import (
    Block,
    JacobiPencil,
    charpoly_oracle,
    continuant,
    curve_t,
    curve_w,
    extract_block,
    pencil,
    symbolic_det,
)
from .mechanisms import (
    Certificate,
    MechanismReport,
    apply_all,
    coupling_charpoly,
    detect_constant_branches,
    detect_cuts,
    detect_palindrome,
    detect_scalar_blocks,
    scalar_block_certificate,
)
from .hensel import (
    Decision,
    IRREDUCIBLE,
    LiftState,
    REDUCIBLE,
    SubsetSplit,
    canonical_subsets,
    decide,
    lift_subset,
    obstruction_profile,
)
from .monodromy import (
    ComplexApprox,
    MonodromyReport,
    branch_points,
    monodromy_group,
    orbit_factor_degrees,
    track_loop,
)
from .experiments import (
    Campaign,
    CampaignReport,
    classify,
    run_campaign,
    run_codim_probe,
    run_coprime_sweep,
    run_d2_grid,
    run_degree8_scan,
    run_generic,
)

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "Block",
    "Campaign",
    "CampaignReport",
    "Certificate",
    "ComplexApprox",
    "Decision",
    "ExactDivisionError",
    "IRREDUCIBLE",
    "JacobiPencil",
    "JacobiSpecError",
    "LiftState",
    "MechanismReport",
    "MonodromyReport",
    "NotSquarefreeError",
    "REDUCIBLE",
    "SubsetSplit",
    "T_FORM",
    "TagMismatchError",
    "TrackingError",
    "UniPoly",
    "UnsupportedPencilError",
    "W_FORM",
    "apply_all",
    "branch_points",
    "canonical_subsets",
    "charpoly_oracle",
    "classify",
    "continuant",
    "coupling_charpoly",
    "curve_t",
    "curve_w",
    "decide",
    "detect_constant_branches",
    "detect_cuts",
    "detect_palindrome",
    "detect_scalar_blocks",
    "discriminant_in_lambda",
    "divide_exact_lambda",
    "extract_block",
    "format_rational",
    "gcd_in_lambda",
    "lift_subset",
    "monodromy_group",
    "obstruction_profile",
    "orbit_factor_degrees",
    "parse_rational",
    "pencil",
    "resultant_in_lambda",
    "run_campaign",
    "run_codim_probe",
    "run_coprime_sweep",
    "run_d2_grid",
    "run_degree8_scan",
    "run_generic",
    "scalar_block_certificate",
    "symbolic_det",
    "to_t_form",
    "to_w_form",
    "track_loop",
    "__version__",
]
