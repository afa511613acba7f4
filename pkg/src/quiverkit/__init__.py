"""Exact computations with finite acyclic quivers and their representations."""

from .dimvec import (
    ExposureBound,
    PositivityScan,
    RegularityCertificate,
    RootClass,
    RootKind,
    Verdict,
    classify_root,
    conjecture_scan,
    coxeter_apply,
    coxeter_inverse_matrix,
    coxeter_matrix,
    is_zero_root,
    nakayama_defect,
    positivity_scan,
    proper_multiple_of_zero_root,
    regularity_check,
    simple_reflection,
    summand_exposure_bound,
)
from .errors import QuiverError
from .functors import (
    DefectReport,
    HomWitness,
    ScanVerdict,
    SummandScan,
    ar_translate,
    ar_translate_inverse,
    coxeter_minus,
    coxeter_plus,
    reflect_sink,
    reflect_source,
    regular_hom_witness,
    summand_defect_scan,
)
from .linalg import (
    GF,
    QQ,
    ExactMatrix,
    cokernel_dim,
    kernel_basis,
    mat_inverse,
    mat_mul,
    mat_power,
    mat_transpose,
    rank,
)
from .quiver import (
    Arrow,
    Quiver,
    QuiverType,
    classify_type,
    definiteness_certificate,
    euler_form,
    euler_matrix,
    inj_dim_vector,
    load_quiver,
    parse_quiver,
    proj_dim_vector,
    symmetric_form,
    tits_form,
    validate_quiver,
)
from .representation import (
    HomExtResult,
    Representation,
    build_injective,
    build_projective,
    build_simple,
    delta_matrix,
    direct_sum,
    end_dim,
    general_position_sample,
    hom_dim,
    hom_ext,
    load_rep,
    random_rep,
    rep_from_json,
    rep_to_json,
)

__version__ = "0.1.0"
