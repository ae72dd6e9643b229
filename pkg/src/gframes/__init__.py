"""Finite-dimensional reconstruction systems (g-frames).

Block families, their duals, robustness of blind reconstruction to single
erasures, stability under dropping blocks, nearest projective approximation,
and structured constructions (group orbits, commuting projections,
minimal-redundancy systems).
"""

from .approx import (
    PolarFactorization,
    is_weighted_coisometry,
    nearest_projective,
    polar_coisometry,
)
from .constructions import (
    GroupSystemReport,
    RieszDualCheck,
    RieszIndexCheck,
    UnitaryRepresentation,
    commuting_projective_dual,
    cyclic_shift_representation,
    direct_product,
    fixtures,
    group_rs,
    group_rs_checks,
    riesz_projective_dual_check,
    unit_sum_coefficients,
)
from .core import (
    DEFAULT_TOLERANCE,
    ReconstructionSystem,
    RSSignature,
    SystemClassification,
    analysis_apply,
    analysis_matrix,
    blockwise_distance,
    classify,
    frame_operator,
    synthesis_apply,
    synthesis_matrix,
    system_from_synthesis,
)
from .duals import (
    DualCandidate,
    DualManifold,
    canonical_dual,
    dual_manifold,
    dual_manifold_sample,
    inverse_frame_operator,
    verify_dual,
)
from .erasure import (
    ErasureMask,
    ErrorReport,
    blind_reconstruct,
    error_report,
    optimal_dual_two_error,
    wce_condition,
    wce_minimize,
)
from .errors import (
    GFramesError,
    NotReconstructionSystemError,
    PreconditionError,
    SamplingError,
    StructuralError,
)
from .serialize import (
    dumps_canonical,
    load_system,
    save_system,
    system_from_dict,
    system_to_dict,
)
from .stability import (
    TruncationReport,
    ck_sufficient_condition,
    truncate,
    truncated_canonical_dual,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOLERANCE",
    "DualCandidate",
    "DualManifold",
    "ErasureMask",
    "ErrorReport",
    "GFramesError",
    "GroupSystemReport",
    "NotReconstructionSystemError",
    "PolarFactorization",
    "PreconditionError",
    "RSSignature",
    "ReconstructionSystem",
    "RieszDualCheck",
    "RieszIndexCheck",
    "SamplingError",
    "StructuralError",
    "SystemClassification",
    "TruncationReport",
    "UnitaryRepresentation",
    "analysis_apply",
    "analysis_matrix",
    "blind_reconstruct",
    "blockwise_distance",
    "canonical_dual",
    "ck_sufficient_condition",
    "classify",
    "commuting_projective_dual",
    "cyclic_shift_representation",
    "direct_product",
    "dual_manifold",
    "dual_manifold_sample",
    "dumps_canonical",
    "error_report",
    "fixtures",
    "frame_operator",
    "group_rs",
    "group_rs_checks",
    "inverse_frame_operator",
    "is_weighted_coisometry",
    "load_system",
    "nearest_projective",
    "optimal_dual_two_error",
    "polar_coisometry",
    "riesz_projective_dual_check",
    "save_system",
    "synthesis_apply",
    "synthesis_matrix",
    "system_from_dict",
    "system_from_synthesis",
    "system_to_dict",
    "truncate",
    "truncated_canonical_dual",
    "unit_sum_coefficients",
    "verify_dual",
    "wce_condition",
    "wce_minimize",
]
