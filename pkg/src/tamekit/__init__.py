"""tamekit: exact tools for graded polynomial automorphisms.

Polynomials over the rationals in two or three variables, polynomial
maps and their composition algebra, Z-gradings and their classification
into wild-admitting and tame-only, explicit graded-wild witnesses with
low-degree certificates, and constructive decomposition into elementary
and linear factors (the plane Newton-polygon descent plus the graded
three-variable pipelines).
"""

from .errors import (
    ArityMismatch,
    CertifiedWildMap,
    ConstantPolynomial,
    EmptySequence,
    GcdPrecondition,
    LastVariableNotFixed,
    LiftFailure,
    MoreThanOneMixedSignPattern,
    NotAnAutomorphism,
    NotGraded,
    NotGradedChain,
    NotGradedPlane,
    NotHomogeneous,
    NotLiftable,
    NotWildAdmitting,
    OriginNotPreserved,
    ParseError,
    QHatNotOne,
    TamekitError,
    ThirdCoordinateNotScalar,
    UnknownName,
    WildAdmittingUndecided,
    WrongShape,
    ZeroPolynomial,
)
from .grading import (
    Grading,
    NormalizedGrading,
    ResidueGrading,
    l_hat,
    normalize_weights,
    plane_residue_grading,
    q_hat,
)
from .jung import (
    decompose_plane,
    decompose_plane_graded,
    decompose_plane_origin,
    invert_plane,
    is_plane_automorphism,
)
from .maps import (
    ElementaryDetail,
    FactorChain,
    MapClass,
    PolynomialMap,
    classify_map,
    compose,
    compose_chain,
    constant_jacobian,
    identity_map,
    invert_factor,
    plane_swap,
    verify_inverse_pair,
)
from .named import NamedExample, example_names, get_example, nagata_pair
from .newton import analyze_top_edge, newton_area, newton_polygon, polygon_area
from .parsing import (
    MapDocument,
    parse_map,
    parse_polynomial,
    parse_weights,
)
from .poly import Polynomial
from .space import (
    GradingClassification,
    GradingReason,
    GradingVerdict,
    LiftObstruction,
    LiftReport,
    ObstructionKind,
    WildWitness,
    WildnessCertificate,
    ZeroWeightShape,
    classify_grading,
    decompose_graded,
    decompose_positive,
    decompose_qhat_low,
    decompose_zero_cases,
    invert_graded,
    lift_plane_map,
    restrict_to_plane,
    rewrite_liftable_chain,
    split_z_scaling,
    wild_witness,
    wildness_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "CertifiedWildMap",
    "ConstantPolynomial",
    "ElementaryDetail",
    "EmptySequence",
    "FactorChain",
    "GcdPrecondition",
    "Grading",
    "GradingClassification",
    "GradingReason",
    "GradingVerdict",
    "LastVariableNotFixed",
    "LiftFailure",
    "LiftObstruction",
    "LiftReport",
    "MapClass",
    "MapDocument",
    "MoreThanOneMixedSignPattern",
    "NamedExample",
    "NormalizedGrading",
    "NotAnAutomorphism",
    "NotGraded",
    "NotGradedChain",
    "NotGradedPlane",
    "NotHomogeneous",
    "NotLiftable",
    "NotWildAdmitting",
    "ObstructionKind",
    "OriginNotPreserved",
    "ParseError",
    "Polynomial",
    "PolynomialMap",
    "QHatNotOne",
    "ResidueGrading",
    "TamekitError",
    "ThirdCoordinateNotScalar",
    "UnknownName",
    "WildAdmittingUndecided",
    "WildWitness",
    "WildnessCertificate",
    "WrongShape",
    "ZeroPolynomial",
    "ZeroWeightShape",
    "analyze_top_edge",
    "classify_grading",
    "classify_map",
    "compose",
    "compose_chain",
    "constant_jacobian",
    "decompose_graded",
    "decompose_plane",
    "decompose_plane_graded",
    "decompose_plane_origin",
    "decompose_positive",
    "decompose_qhat_low",
    "decompose_zero_cases",
    "example_names",
    "get_example",
    "identity_map",
    "invert_factor",
    "invert_graded",
    "invert_plane",
    "is_plane_automorphism",
    "l_hat",
    "lift_plane_map",
    "nagata_pair",
    "newton_area",
    "newton_polygon",
    "normalize_weights",
    "parse_map",
    "parse_polynomial",
    "parse_weights",
    "plane_residue_grading",
    "plane_swap",
    "polygon_area",
    "q_hat",
    "restrict_to_plane",
    "rewrite_liftable_chain",
    "split_z_scaling",
    "verify_inverse_pair",
    "wild_witness",
    "wildness_certificate",
    "__version__",
]
