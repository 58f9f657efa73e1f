"""Fractional positivity toolkit.

Admissibility tests at fractional levels, closed-form noise and fidelity
thresholds with their inverses, Choi-matrix machinery, isotropic witnesses,
a multistart form optimizer, brute-force oracles, and two counterexample
constructions, all behind a small CLI (``fracpos``).
"""

from .admissibility import (
    AdmissibilityReport,
    FractionalLevel,
    extremal_spectrum,
    extremal_vector,
    is_admissible_matrix,
    is_admissible_vector,
    ky_fan_ratio_check,
    make_level,
    matrix_report,
    report_from_spectrum,
    strict_inclusion_pair,
    vector_report,
)
from .choi import (
    KrausCertificate,
    apply_choi,
    apply_kraus,
    choi_depolarizing,
    choi_from_action,
    choi_from_kraus,
    choi_postcompose,
    choi_to_kraus,
    verify_fractional_kraus,
)
from .cones import (
    FormMinimum,
    IsotropicCoefficients,
    OptimizerConfig,
    depolarizing_form_minimum,
    isotropic_bp_membership,
    isotropic_k_membership,
    max_omega_overlap,
    maximize_form,
    minimize_form,
    twirl_isotropic,
    witness_operator,
)
from .counterexamples import (
    CpFailureCertificate,
    StrictInclusionReport,
    demo_cp_failure,
    demo_strict_inclusion,
)
from .io import (
    SchemaError,
    dump_matrix,
    kraus_from_obj,
    load_kraus,
    load_matrix,
    load_vector,
    matrix_from_obj,
    matrix_to_obj,
    profile_to_csv,
    vector_from_obj,
    vector_to_obj,
)
from .linalg import (
    BipartiteDims,
    ky_fan_norm,
    matricize,
    maximally_entangled,
    omega_projector,
    quadratic_form,
    schmidt_frames,
    schmidt_spectrum,
    square_dims,
    trace_norm,
    unvec_col,
    vec_col,
    vectorize,
)
from .oracles import (
    GridSpec,
    form_minimum_bruteforce_2x2,
    kernel_backend,
    max_omega_overlap_bruteforce,
)
from .thresholds import (
    ThresholdProfile,
    depolarizing_threshold,
    fidelity_threshold,
    fractional_schmidt_number,
    profile_sweep,
    stability_index,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityReport",
    "BipartiteDims",
    "CpFailureCertificate",
    "FormMinimum",
    "FractionalLevel",
    "GridSpec",
    "IsotropicCoefficients",
    "KrausCertificate",
    "OptimizerConfig",
    "SchemaError",
    "StrictInclusionReport",
    "ThresholdProfile",
    "apply_choi",
    "apply_kraus",
    "choi_depolarizing",
    "choi_from_action",
    "choi_from_kraus",
    "choi_postcompose",
    "choi_to_kraus",
    "demo_cp_failure",
    "demo_strict_inclusion",
    "depolarizing_form_minimum",
    "depolarizing_threshold",
    "dump_matrix",
    "extremal_spectrum",
    "extremal_vector",
    "fidelity_threshold",
    "form_minimum_bruteforce_2x2",
    "fractional_schmidt_number",
    "is_admissible_matrix",
    "is_admissible_vector",
    "isotropic_bp_membership",
    "isotropic_k_membership",
    "kernel_backend",
    "kraus_from_obj",
    "ky_fan_norm",
    "ky_fan_ratio_check",
    "load_kraus",
    "load_matrix",
    "load_vector",
    "make_level",
    "matricize",
    "matrix_from_obj",
    "matrix_report",
    "matrix_to_obj",
    "max_omega_overlap",
    "max_omega_overlap_bruteforce",
    "maximally_entangled",
    "maximize_form",
    "minimize_form",
    "omega_projector",
    "profile_sweep",
    "profile_to_csv",
    "quadratic_form",
    "report_from_spectrum",
    "schmidt_frames",
    "schmidt_spectrum",
    "square_dims",
    "stability_index",
    "strict_inclusion_pair",
    "trace_norm",
    "twirl_isotropic",
    "unvec_col",
    "vec_col",
    "vector_from_obj",
    "vector_report",
    "vector_to_obj",
    "vectorize",
    "verify_fractional_kraus",
    "witness_operator",
]
