"""Exact computations with n-Hom-Lie algebras.

Scalars are exact (Q or Q(i)); no floating point anywhere.  The package
covers: n-ary skew-symmetric brackets with twisting maps, Hom-Nambu-Filippov
verification (brute force and shape-specific polynomial systems), derived and
central series, centers, nilpotency and solvability, and the isomorphism
classification of the 4-dimensional ternary family with one nilpotent twist
of kernel dimension two.
"""

from .classify import (
    CanonicalForm,
    ClassReport,
    MinorTable,
    canonical_reduce,
    classify_report,
    commutant_matrix,
    congruent_bmatrix,
    enumerate_grid,
    isomorphic,
    minors,
    subclass,
)
from .fields import (
    QI,
    QQ,
    GaussianRational,
    Scalar,
    field_of,
    get_field,
    is_square,
    sqrt_exact,
    square_class,
)
from .homalg import (
    BMatrix,
    Bracket,
    FamilyAlgebra,
    HomAlgebra,
    NotWeakMorphismError,
    basis_vector,
    change_basis,
    family_alpha,
    from_bmatrix,
    is_morphism,
    permute_basis,
    to_bmatrix,
    yau_twist,
)
from .identity import (
    InternalCheckError,
    TwistShape,
    check_hnf_bruteforce,
    check_hnf_polynomial,
    check_multiplicative,
    detect_shape,
    hnf_defect,
)
from .linalg import Matrix, Subspace
from .structure import (
    NilpotencyReport,
    SeriesReport,
    SubspaceStatus,
    bracket_span,
    center,
    full_space,
    nilpotency_profile,
    series,
    subspace_status,
)

__version__ = "0.1.0"

__all__ = [
    "BMatrix",
    "Bracket",
    "CanonicalForm",
    "ClassReport",
    "FamilyAlgebra",
    "GaussianRational",
    "HomAlgebra",
    "InternalCheckError",
    "Matrix",
    "MinorTable",
    "NilpotencyReport",
    "NotWeakMorphismError",
    "QI",
    "QQ",
    "Scalar",
    "SeriesReport",
    "Subspace",
    "SubspaceStatus",
    "TwistShape",
    "basis_vector",
    "bracket_span",
    "canonical_reduce",
    "center",
    "change_basis",
    "check_hnf_bruteforce",
    "check_hnf_polynomial",
    "check_multiplicative",
    "classify_report",
    "commutant_matrix",
    "congruent_bmatrix",
    "detect_shape",
    "enumerate_grid",
    "family_alpha",
    "field_of",
    "from_bmatrix",
    "full_space",
    "get_field",
    "hnf_defect",
    "is_morphism",
    "is_square",
    "isomorphic",
    "minors",
    "nilpotency_profile",
    "permute_basis",
    "series",
    "sqrt_exact",
    "square_class",
    "subclass",
    "subspace_status",
    "to_bmatrix",
    "yau_twist",
    "__version__",
]
