"""relintlab: exact polyhedral convex analysis.

Decidable oracles for relative, intrinsic relative, and quasi relative
interior membership on rational polyhedra, with normal cones, polars, proper
separation certificates, piecewise linear Fenchel conjugates, a strong
duality verifier, and closed-form sequence-space counterexample checks.

Everything computes over exact rationals.  The submodules `jsonio`,
`generator`, and `suite` hold the serialization layer, the seeded instance
generators, and the batch property suite; they are importable but not
flattened into the package namespace.
"""

from .errors import (
    DeskScaleError,
    DimensionMismatch,
    EmptySetError,
    IndeterminateForm,
    InputError,
    InternalInconsistency,
    NotMemberError,
    PreconditionFailed,
    PropertyViolation,
    QualificationError,
    RelintError,
)
from .ratlp import (
    LPOutcome,
    LPProblem,
    Rat,
    cone_is_subspace,
    cone_member,
    dot,
    feasible_point,
    fmt_rat,
    mat,
    nullspace,
    rank,
    rat,
    solve_linear,
    solve_lp,
    vec,
)
from .sets import (
    AffineFlat,
    HPolyhedron,
    PolyCone,
    VPolyhedron,
    affine_hull,
    cartesian_product,
    difference_cone,
    extreme_rays,
    h_to_v,
    linear_image,
    minimal_face_dim,
    sample_points,
    set_equal,
    translate,
    v_to_h,
)
from .interiors import (
    iri_member,
    is_quasi_regular,
    normal_cone,
    polar,
    polar_set,
    qri_member,
    relatively_absorbing,
    ri_member,
    segment_check,
)
from .separation import (
    SeparationCertificate,
    properly_separate_point,
    properly_separate_sets,
    ri_intersection_nonempty,
    verify_separation_certificate,
)
from .functions import (
    PLConcaveFunction,
    PLConvexFunction,
    concave_conjugate,
    conjugate,
    continuity_diagnostics,
    epigraph,
    evaluate,
    hypograph,
)
from .duality import (
    DualityReport,
    extract_dual_certificate,
    qualification_report,
    solve_dual,
    solve_primal,
    verify_fenchel_rockafellar,
)
from .graphs_orders import (
    CEpigraphResult,
    LexEpiReport,
    OrderingCone,
    PLVectorFunction,
    PolySetValuedMap,
    c_convexity_check,
    c_epigraph,
    check_graph_equality,
    check_graph_iri_inclusion,
    check_graph_qri_inclusion,
    check_iri_c_epi,
    lex_epi_analysis,
    map_domain,
    map_slice,
)
from .seqlab import (
    IriRefutationWitness,
    TailSequence,
    ell1ball_iri,
    ell1ball_normal_test,
    ell1ball_qri,
    inner,
    nonneg_ball_iri_refutation,
    sign_vector,
)
from .calculus import (
    DifferenceInteriorCheck,
    ImageInteriorCheck,
    check_image_iri,
    check_image_qri,
    check_translation_equivariance,
    qri_of_difference,
    qri_of_product,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "RelintError", "InputError", "DimensionMismatch", "DeskScaleError",
    "EmptySetError", "NotMemberError", "PreconditionFailed",
    "IndeterminateForm", "PropertyViolation", "QualificationError",
    "InternalInconsistency",
    # rational arithmetic and LP
    "Rat", "rat", "fmt_rat", "vec", "mat", "dot", "rank", "nullspace",
    "solve_linear", "LPProblem", "LPOutcome", "solve_lp", "feasible_point",
    "cone_member", "cone_is_subspace",
    # sets
    "HPolyhedron", "VPolyhedron", "PolyCone", "AffineFlat", "extreme_rays",
    "h_to_v", "v_to_h", "affine_hull", "difference_cone", "linear_image",
    "translate", "cartesian_product", "set_equal", "minimal_face_dim",
    "sample_points",
    # interior oracles
    "ri_member", "iri_member", "qri_member", "relatively_absorbing",
    "normal_cone", "polar", "polar_set", "is_quasi_regular", "segment_check",
    # separation
    "SeparationCertificate", "properly_separate_point",
    "properly_separate_sets", "ri_intersection_nonempty",
    "verify_separation_certificate",
    # piecewise linear functions and duality
    "PLConvexFunction", "PLConcaveFunction", "evaluate", "epigraph",
    "hypograph", "conjugate", "concave_conjugate", "continuity_diagnostics",
    "DualityReport", "solve_primal", "solve_dual", "qualification_report",
    "verify_fenchel_rockafellar", "extract_dual_certificate",
    # set-valued maps and ordering cones
    "PolySetValuedMap", "OrderingCone", "PLVectorFunction", "map_domain",
    "map_slice", "check_graph_qri_inclusion", "check_graph_iri_inclusion",
    "check_graph_equality", "c_convexity_check", "CEpigraphResult",
    "c_epigraph", "check_iri_c_epi", "LexEpiReport", "lex_epi_analysis",
    # sequence lab
    "TailSequence", "inner", "sign_vector", "ell1ball_iri", "ell1ball_qri",
    "ell1ball_normal_test", "IriRefutationWitness",
    "nonneg_ball_iri_refutation",
    # interior calculus
    "ImageInteriorCheck", "check_image_iri", "check_image_qri",
    "qri_of_product", "DifferenceInteriorCheck", "qri_of_difference",
    "check_translation_equivariance",
]
