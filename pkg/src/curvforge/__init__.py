"""curvforge: exact reconstruction and verification of algebraic curvature
tensors from Jacobi-operator data, on definite and indefinite scalar
product spaces.

All structural arithmetic is exact (``fractions.Fraction``); floating
point only ever appears in the optional spectral fallback for tensors
whose characteristic polynomials do not split over the rationals.
"""

from .core import (
    Matrix,
    Scalar,
    ScalarProduct,
    Vector,
    VectorClass,
    as_fraction,
    char_poly,
    classify_vector,
    distinct_root_count,
    is_self_adjoint,
    matrix,
    orthogonal_complement_basis,
    rational_roots,
    squared_norm,
    squarefree_part,
    standard_basis,
    vector,
)
from .errors import (
    AxiomRejectionError,
    CurvforgeError,
    DegenerateMetricError,
    DimensionMismatchError,
    FamilyDomainError,
    IrrationalSpectrumError,
    PreconditionError,
    SchemaError,
    SingularMatrixError,
    StructuralError,
    ValidationError,
)
from .families import (
    AxiomReport,
    JacobiFamily,
    Witness,
    admissible_extension_vectors,
    check_annihilation,
    check_cocycle,
    check_compatibility,
    check_homogeneity,
    check_scaling_interpolation,
    check_self_adjointness,
    epsilon_identity_family,
    extend_to_null,
    mu_form,
    null_extension_from,
    run_axiom_suite,
    table_family,
    totalize,
)
from .osserman import (
    CliffordSpec,
    OssermanVerdict,
    SpectralDecomposition,
    build_clifford,
    check_proportionality,
    check_two_root_proportionality,
    complement_projector,
    eigen_substitute,
    is_jacobi_diagonalizable,
    is_osserman,
    normalized_char_poly,
    reduced_jacobi,
    spectral_decomposition,
    spectral_projectors,
    validate_clifford_spec,
)
from .sampling import null_directions, random_nonnull_vector, random_null_vector, random_vector
from .tensors import (
    CurvatureTensor,
    SymmetryReport,
    SymmetryViolation,
    constant_curvature,
    from_components,
    jacobi_family_of,
    jacobi_operator,
    mu_second_difference,
    operator_difference_value,
    random_quadruples,
    reconstruct,
    tensor_from_skew_structure,
    tensor_from_symmetric_form,
    tensor_linear_combo,
    verify_mu_equivalence,
    verify_symmetries,
    zero_tensor,
)
from .testkit import (
    GeneratorConfig,
    oracle_contract,
    quaternion_structures,
    random_act,
    random_clifford_spec,
    standard_complex_structure,
)

__version__ = "0.1.0"
