"""Tripartite key exchange over nilpotency-class-2 matrix groups.

The package builds p x p matrix representations of extraspecial groups
of order p**3 over small prime fields, runs a three-party one-round key
exchange whose shared key lives in the center, and ships the desk-scale
attacks (center reduction plus baby-step giant-step) that break it at
toy sizes.  A separate presentation-based layer checks the class-2
power identities and measures which exponent maps are endomorphisms.
"""

from .attacks import (
    DlpInstance,
    DlpResult,
    KeyRecoveryReport,
    cdh_note,
    dlp_bsgs,
    dlp_exhaustive,
    reduce_to_center,
    semigroup_search,
)
from .errors import (
    InternalCheckError,
    NilkexError,
    NotInGroupError,
    ParameterError,
    ProtocolError,
    SearchExhaustedError,
    ShapeError,
    SingularMatrixError,
    SizeGuardError,
)
from .field import (
    FieldElement,
    FieldSpec,
    GroupParams,
    Polynomial,
    ff_pow,
    make_field,
    mult_order,
    param_search,
    root_of_unity,
)
from .matgroup import (
    SquareMatrix,
    char_poly,
    commutator,
    element_order,
    kronecker,
    mat_inv,
    mat_mul,
    mat_pow,
)
from .oracle import (
    IdentityReport,
    NormalForm,
    PresentationParams,
    SemigroupShape,
    check_class2_identities,
    exponent_semigroup_brute,
    nf_commutator,
    nf_mul,
    nf_pow,
    validate_exponent,
)
from .protocol import (
    Broadcast,
    PrivateKey,
    PublicBase,
    Transcript,
    default_base,
    derive_key,
    keygen,
    publish,
    run_tripartite,
)
from .representation import (
    RelationReport,
    Representation,
    TensorReport,
    build_rho_extension,
    build_sigma,
    conjugation_check,
    tensor_analysis,
    verify_relations,
    word_image,
)

__version__ = "0.1.0"

__all__ = [
    "Broadcast",
    "DlpInstance",
    "DlpResult",
    "FieldElement",
    "FieldSpec",
    "GroupParams",
    "IdentityReport",
    "InternalCheckError",
    "KeyRecoveryReport",
    "NilkexError",
    "NormalForm",
    "NotInGroupError",
    "ParameterError",
    "Polynomial",
    "PresentationParams",
    "PrivateKey",
    "ProtocolError",
    "PublicBase",
    "RelationReport",
    "Representation",
    "SearchExhaustedError",
    "SemigroupShape",
    "ShapeError",
    "SingularMatrixError",
    "SizeGuardError",
    "SquareMatrix",
    "TensorReport",
    "Transcript",
    "build_rho_extension",
    "build_sigma",
    "cdh_note",
    "char_poly",
    "check_class2_identities",
    "commutator",
    "conjugation_check",
    "default_base",
    "derive_key",
    "dlp_bsgs",
    "dlp_exhaustive",
    "element_order",
    "exponent_semigroup_brute",
    "ff_pow",
    "keygen",
    "kronecker",
    "make_field",
    "mat_inv",
    "mat_mul",
    "mat_pow",
    "mult_order",
    "nf_commutator",
    "nf_mul",
    "nf_pow",
    "param_search",
    "publish",
    "reduce_to_center",
    "root_of_unity",
    "run_tripartite",
    "semigroup_search",
    "tensor_analysis",
    "validate_exponent",
    "verify_relations",
    "word_image",
]
