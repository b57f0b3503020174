"""Spectral analysis of Jacobi operators on definite and indefinite spaces.

For a verified curvature tensor and a nonnull X, the Jacobi operator
restricts to the hyperplane g-orthogonal to X (the reduced operator).
A tensor is called Osserman when the normalized characteristic polynomial
det(lambda*id - J_X / eps_X) does not depend on the nonnull X; here this
is certified by exact agreement of the polynomial over seeded samples -
a sampling certificate, never a proof, and the verdict records how many
samples backed it.

The module also builds the classical Osserman examples (combinations of
the constant-curvature tensor with tensors of anticommuting skew-adjoint
complex or product structures) and implements the eigenvalue-substitution
construction: keep the eigenspaces of a diagonalizable, proportional
Osserman tensor and replace its reduced eigenvalues by arbitrary rational
values, producing a family whose reconstruction is again Osserman with
the prescribed spectrum and the original multiplicities.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    Matrix,
    ScalarProduct,
    Vector,
    VectorClass,
    as_fraction,
    char_poly,
    classify_vector,
    determinant,
    identity_matrix,
    inverse,
    mat_add,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_vec,
    matrix,
    nullspace,
    orthogonal_complement_basis,
    poly_apply,
    primitive_vector,
    rational_roots,
    squarefree_part,
    standard_basis,
    transpose,
    vec_add,
    vec_scale,
    vector,
    zero_matrix,
)
from .errors import (
    IrrationalSpectrumError,
    PreconditionError,
    StructuralError,
    ValidationError,
)
from .families import DOMAIN_NONNULL, JacobiFamily
from .sampling import random_nonnull_vector
from .tensors import (
    CurvatureTensor,
    constant_curvature,
    jacobi_operator,
    tensor_from_skew_structure,
    tensor_linear_combo,
)

ZERO = Fraction(0)
ONE = Fraction(1)

KIND_COMPLEX = "complex"
KIND_PRODUCT = "product"


# ---------------------------------------------------------------------------
# Reduced operators and the Osserman certificate
# ---------------------------------------------------------------------------


def reduced_jacobi(r: CurvatureTensor, x) -> Matrix:
    """Matrix of J_X restricted to the complement of a nonnull X, in the
    deterministic complement basis of ``orthogonal_complement_basis``."""
    x = vector(x)
    g = r.space
    if classify_vector(g, x) is not VectorClass.NONNULL:
        raise PreconditionError("reduced operator requires a nonnull vector")
    comp = orthogonal_complement_basis(g, x)
    j = jacobi_operator(r, x)
    # coordinates with respect to (comp..., x); the x-component of J b is 0
    frame = transpose(tuple(comp) + (x,))
    frame_inv = inverse(frame)
    cols = []
    for b in comp:
        coords = mat_vec(frame_inv, mat_vec(j, b))
        assert coords[-1] == 0
        cols.append(coords[:-1])
    return transpose(tuple(cols))


def normalized_char_poly(r: CurvatureTensor, x) -> tuple[Fraction, ...]:
    """Exact coefficients of det(lambda*id - J_X / eps_X) on the full space."""
    x = vector(x)
    g = r.space
    eps = g.squared_norm(x)
    if eps == 0:
        raise PreconditionError("normalization requires a nonnull vector")
    return char_poly(mat_scale(ONE / eps, jacobi_operator(r, x)))


def _reduced_poly(full: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    # J_X annihilates X, so the full polynomial has a zero constant term;
    # dividing out one lambda factor is a coefficient shift.
    assert full[-1] == 0
    return full[:-1]


@dataclass(frozen=True)
class OssermanVerdict:
    """Sampling certificate for spectrum independence.

    ``reference_char_poly`` holds the (full, normalized) polynomial of
    the first sample; ``counterexample`` replays the first disagreeing
    sample when the verdict is negative.
    """

    is_osserman: bool
    reference_char_poly: tuple[Fraction, ...]
    k_root: int | None
    diagonalizable: bool | None
    samples_used: int
    seed: int
    counterexample: tuple[Vector, tuple[Fraction, ...]] | None = None


def _nonnull_samples(g: ScalarProduct, count: int, rng: random.Random) -> list[Vector]:
    samples = [e for e in standard_basis(g.dim) if g.squared_norm(e) != 0]
    while len(samples) < count:
        samples.append(random_nonnull_vector(g, rng))
    return samples[:count]


def is_osserman(r: CurvatureTensor, samples: int = 32, seed: int = 0) -> OssermanVerdict:
    """Certify spectrum independence on ``samples`` seeded nonnull vectors.

    All characteristic polynomials are exact, so agreement is bit-exact
    equality of coefficient lists; the first disagreement is returned as
    a replayable counterexample.
    """
    if not r.verified:
        raise PreconditionError("tensor must pass symmetry verification first")
    if samples < 2:
        raise PreconditionError("at least two samples are needed to compare spectra")
    rng = random.Random(seed)
    vectors = _nonnull_samples(r.space, samples, rng)
    reference = normalized_char_poly(r, vectors[0])
    counterexample = None
    for x in vectors[1:]:
        p = normalized_char_poly(r, x)
        if p != reference:
            counterexample = (x, p)
            break
    osserman = counterexample is None
    k_root = distinct_reduced_roots(reference) if osserman else None
    diagonalizable, _ = is_jacobi_diagonalizable(r, samples=min(samples, 8), seed=seed)
    return OssermanVerdict(
        is_osserman=osserman,
        reference_char_poly=reference,
        k_root=k_root,
        diagonalizable=diagonalizable,
        samples_used=samples,
        seed=seed,
        counterexample=counterexample,
    )


def distinct_reduced_roots(full_poly: tuple[Fraction, ...]) -> int:
    """Distinct eigenvalue count of the reduced operator (complex roots
    included, via the squarefree-part degree)."""
    from .core import distinct_root_count

    return distinct_root_count(_reduced_poly(full_poly))


# ---------------------------------------------------------------------------
# Spectral decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigendata of a reduced Jacobi operator at a nonnull base vector.

    Slot 0 of ``eigenspace_bases`` is always span{X}; slots 1..k follow
    ``eigenvalues`` (normalized by eps_X, ascending).  ``exact`` is False
    when the characteristic polynomial does not split over the rationals
    and floating point had to take over; entries are then floats and only
    trustworthy to the tolerance used.
    """

    base_vector: Vector
    eigenvalues: tuple
    multiplicities: tuple[int, ...]
    eigenspace_bases: tuple[tuple, ...]
    exact: bool
    diagonalizable: bool
    degenerate_eigenspaces: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.eigenvalues)


def _gram_det(g: ScalarProduct, vectors_list) -> Fraction:
    gram = tuple(tuple(g.inner(a, b) for b in vectors_list) for a in vectors_list)
    return determinant(gram)


def spectral_decomposition(
    r: CurvatureTensor, x, tol: float = 1e-9, exact_only: bool = False
) -> SpectralDecomposition:
    """Eigenvalues, multiplicities and eigenspace bases of the reduced
    operator at X, exactly when the spectrum is rational.

    Rationality is detected by exact factorization of the characteristic
    polynomial; when it fails and ``exact_only`` is unset, a numpy
    fallback clusters eigenvalues with absolute gap ``tol`` and ascending
    deterministic labels.
    """
    x = vector(x)
    g = r.space
    eps = g.squared_norm(x)
    if eps == 0:
        raise PreconditionError("spectral decomposition requires a nonnull vector")
    comp = orthogonal_complement_basis(g, x)
    reduced = mat_scale(ONE / eps, reduced_jacobi(r, x))
    n1 = len(reduced)
    poly = char_poly(reduced)
    roots = rational_roots(poly)

    if sum(roots.values()) == n1:
        eigenvalues = tuple(sorted(roots))
        multiplicities = tuple(roots[lam] for lam in eigenvalues)
        bases = [(x,)]
        degenerate = []
        diagonalizable = True
        for slot, lam in enumerate(eigenvalues, start=1):
            shifted = mat_sub(reduced, mat_scale(lam, identity_matrix(n1)))
            kernel = nullspace(shifted)
            ambient = tuple(
                primitive_vector(
                    tuple(
                        sum(coord * comp[i][a] for i, coord in enumerate(vec))
                        for a in range(g.dim)
                    )
                )
                for vec in kernel
            )
            bases.append(ambient)
            if len(kernel) != roots[lam]:
                diagonalizable = False
            elif _gram_det(g, ambient) == 0:
                degenerate.append(slot)
                diagonalizable = False
        return SpectralDecomposition(
            base_vector=x,
            eigenvalues=eigenvalues,
            multiplicities=multiplicities,
            eigenspace_bases=tuple(bases),
            exact=True,
            diagonalizable=diagonalizable,
            degenerate_eigenspaces=tuple(degenerate),
        )

    if exact_only:
        raise IrrationalSpectrumError(
            "characteristic polynomial does not split over the rationals"
        )
    return _float_decomposition(g, x, comp, reduced, tol)


def _float_decomposition(g, x, comp, reduced, tol) -> SpectralDecomposition:
    m = np.array([[float(c) for c in row] for row in reduced])
    values, vecs = np.linalg.eig(m)
    real_mask = np.abs(values.imag) <= tol
    diagonalizable = bool(real_mask.all())
    reals = sorted(values[real_mask].real)
    clusters: list[list[float]] = []
    for v in reals:
        if clusters and abs(v - clusters[-1][-1]) <= tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    eigenvalues = tuple(sum(c) / len(c) for c in clusters)
    multiplicities = tuple(len(c) for c in clusters)
    comp_f = np.array([[float(c) for c in b] for b in comp])  # rows = complement basis
    bases = [(x,)]
    metric_f = np.array([[float(c) for c in row] for row in g.metric])
    degenerate = []
    for slot, lam in enumerate(eigenvalues, start=1):
        idx = [i for i, v in enumerate(values) if abs(v.imag) <= tol and abs(v.real - lam) <= tol * max(1.0, abs(lam))]
        ambient = [tuple(float(c) for c in (vecs[:, i].real @ comp_f)) for i in idx]
        bases.append(tuple(ambient))
        if ambient:
            arr = np.array(ambient)
            gram = arr @ metric_f @ arr.T
            if abs(np.linalg.det(gram)) <= tol:
                degenerate.append(slot)
                diagonalizable = False
    return SpectralDecomposition(
        base_vector=x,
        eigenvalues=eigenvalues,
        multiplicities=multiplicities,
        eigenspace_bases=tuple(bases),
        exact=False,
        diagonalizable=diagonalizable,
        degenerate_eigenspaces=tuple(degenerate),
    )


def is_jacobi_diagonalizable(
    r: CurvatureTensor, samples: int = 32, seed: int = 0, tol: float = 1e-9
) -> tuple[bool, list[tuple[Vector, str]]]:
    """Sampled check that every reduced operator admits a g-orthonormal
    eigenbasis.

    Per sample this requires: a squarefree minimal polynomial (tested
    exactly as q(J) = 0 for the squarefree part q of the characteristic
    polynomial), a real spectrum, and g-nondegenerate eigenspaces.  The
    witnesses name the failing condition per base vector.
    """
    if not r.verified:
        raise PreconditionError("tensor must pass symmetry verification first")
    rng = random.Random(seed)
    g = r.space
    witnesses: list[tuple[Vector, str]] = []
    for x in _nonnull_samples(g, samples, rng):
        reduced = reduced_jacobi(r, x)
        poly = char_poly(reduced)
        q = squarefree_part(poly)
        if poly_apply(q, reduced) != zero_matrix(len(reduced)):
            witnesses.append((x, "minimal polynomial is not squarefree"))
            continue
        dec = spectral_decomposition(r, x, tol=tol)
        if not dec.diagonalizable:
            if dec.degenerate_eigenspaces:
                witnesses.append((x, "eigenspace metric is degenerate"))
            elif not dec.exact:
                witnesses.append((x, "spectrum is not real"))
            else:
                witnesses.append((x, "eigenspaces do not fill the complement"))
    return (not witnesses, witnesses)


# ---------------------------------------------------------------------------
# Spectral projectors and proportionality
# ---------------------------------------------------------------------------


def complement_projector(g: ScalarProduct, x: Vector) -> Matrix:
    """g-orthogonal projector onto the complement of a nonnull x."""
    eps = g.squared_norm(x)
    gx = mat_vec(g.metric, x)
    n = g.dim
    return tuple(
        tuple((ONE if a == b else ZERO) - x[a] * gx[b] / eps for b in range(n)) for a in range(n)
    )


def spectral_projectors(
    g: ScalarProduct, jac: Matrix, x: Vector, lambdas
) -> list[Matrix]:
    """Exact Lagrange projectors P_i onto the eigenspaces of the reduced
    operator, as endomorphisms of the whole space (zero on span{x}).

    P_i = prod_{j != i} (J - eps*lambda_j) / (eps*(lambda_i - lambda_j))
    composed with the complement projector; for a diagonalizable J with
    the given spectrum these resolve the complement projector and satisfy
    P_i P_j = delta_ij P_i, all exactly.
    """
    lambdas = [as_fraction(l) for l in lambdas]
    eps = g.squared_norm(x)
    q = complement_projector(g, x)
    n = g.dim
    projectors = []
    for i, li in enumerate(lambdas):
        acc = identity_matrix(n)
        for j, lj in enumerate(lambdas):
            if j == i:
                continue
            factor = mat_sub(jac, mat_scale(eps * lj, identity_matrix(n)))
            acc = mat_scale(ONE / (eps * (li - lj)), mat_mul(acc, factor))
        projectors.append(mat_mul(acc, q))
    return projectors


def _rational_spectrum(r: CurvatureTensor, x) -> list[Fraction] | None:
    full = normalized_char_poly(r, x)
    reduced = _reduced_poly(full)
    roots = rational_roots(reduced)
    if sum(roots.values()) != len(reduced) - 1:
        return None
    return sorted(roots)


def check_proportionality(
    r: CurvatureTensor,
    pairs,
    tol: float = 1e-9,
    exact_only: bool = False,
) -> tuple[bool, list[tuple]]:
    """Verify the eigencomponent norm proportionality for vector pairs.

    Decompose X along the eigenspaces of J_Y and Y along those of J_X
    (eigenvalues matched by value, not position) and check

        eps_X * eps_{Y_i} = eps_Y * eps_{X_i}   for i = 0..k,

    exactly in rational-spectrum mode, else within ``tol``.  Pairs whose
    two spectra disagree raise :class:`StructuralError`: such a tensor is
    already not Osserman on these samples.
    """
    if not r.verified:
        raise PreconditionError("tensor must pass symmetry verification first")
    g = r.space
    witnesses: list[tuple] = []
    for x, y in pairs:
        x, y = vector(x), vector(y)
        if g.squared_norm(x) == 0 or g.squared_norm(y) == 0:
            raise PreconditionError("proportionality requires nonnull vectors")
        px = normalized_char_poly(r, x)
        py = normalized_char_poly(r, y)
        if px != py:
            raise StructuralError(
                "eigenvalue multisets differ between the two base vectors; "
                "tensor is not Osserman on these samples"
            )
        lambdas = _rational_spectrum(r, x)
        if lambdas is None:
            if exact_only:
                raise IrrationalSpectrumError(
                    "proportionality in exact mode needs a rational spectrum"
                )
            if not _float_proportionality(r, x, y, tol):
                witnesses.append((x, y, "float-mode proportionality failed"))
            continue
        eps_x, eps_y = g.squared_norm(x), g.squared_norm(y)
        jx, jy = jacobi_operator(r, x), jacobi_operator(r, y)
        px_list = spectral_projectors(g, jx, x, lambdas)
        py_list = spectral_projectors(g, jy, y, lambdas)
        y_parts = [vec_scale(g.inner(x, y) / eps_x, x)] + [mat_vec(p, y) for p in px_list]
        x_parts = [vec_scale(g.inner(x, y) / eps_y, y)] + [mat_vec(p, x) for p in py_list]
        total_y = y_parts[0]
        for part in y_parts[1:]:
            total_y = vec_add(total_y, part)
        total_x = x_parts[0]
        for part in x_parts[1:]:
            total_x = vec_add(total_x, part)
        if total_y != y or total_x != x:
            raise StructuralError(
                "eigenprojections do not resolve the identity; operator is not "
                "diagonalizable with the reference spectrum at these vectors"
            )
        for i, (yi, xi) in enumerate(zip(y_parts, x_parts)):
            lhs = eps_x * g.squared_norm(yi)
            rhs = eps_y * g.squared_norm(xi)
            if lhs != rhs:
                witnesses.append((x, y, i, lhs, rhs))
    return (not witnesses, witnesses)


def _float_proportionality(r: CurvatureTensor, x, y, tol: float) -> bool:
    g = r.space
    dec_x = spectral_decomposition(r, x, tol=tol)
    dec_y = spectral_decomposition(r, y, tol=tol)
    if not (dec_x.diagonalizable and dec_y.diagonalizable):
        return False
    metric_f = np.array([[float(c) for c in row] for row in g.metric])
    xf = np.array([float(c) for c in x])
    yf = np.array([float(c) for c in y])

    def norms(dec, v):
        out = []
        base = np.array([float(c) for c in dec.base_vector])
        eb = base @ metric_f @ base
        out.append((v @ metric_f @ base) ** 2 / eb)
        for basis_vecs in dec.eigenspace_bases[1:]:
            arr = np.array([[float(c) for c in b] for b in basis_vecs])
            gram = arr @ metric_f @ arr.T
            coords = np.linalg.solve(gram, arr @ metric_f @ v)
            comp = coords @ arr
            out.append(comp @ metric_f @ comp)
        return out

    eps_x = xf @ metric_f @ xf
    eps_y = yf @ metric_f @ yf
    ny = norms(dec_x, yf)
    nx = norms(dec_y, xf)
    if len(ny) != len(nx):
        return False
    scale = max(1.0, abs(eps_x), abs(eps_y))
    return all(abs(eps_x * a - eps_y * b) <= tol * scale for a, b in zip(ny, nx))


# ---------------------------------------------------------------------------
# Clifford-type builders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CliffordSpec:
    """Coefficients mu_0..mu_m and anticommuting skew-adjoint structures.

    ``structures`` holds (matrix, kind) pairs; kind is "complex"
    (J^2 = -id) or "product" (J^2 = +id, neutral signature only).
    """

    coefficients: tuple[Fraction, ...]
    structures: tuple[tuple[Matrix, str], ...]

    @classmethod
    def of(cls, coefficients, structures) -> "CliffordSpec":
        coeffs = tuple(as_fraction(c) for c in coefficients)
        structs = tuple((matrix(m), kind) for m, kind in structures)
        return cls(coeffs, structs)


def validate_clifford_spec(g: ScalarProduct, spec: CliffordSpec):
    """Raise :class:`ValidationError` naming the first violated condition."""
    n = g.dim
    if len(spec.coefficients) != len(spec.structures) + 1:
        raise ValidationError(
            f"expected {len(spec.structures) + 1} coefficients (mu_0..mu_m), "
            f"got {len(spec.coefficients)}"
        )
    p, q = g.signature
    mats = []
    for idx, (j, kind) in enumerate(spec.structures):
        if len(j) != n or any(len(row) != n for row in j):
            raise ValidationError(f"structure {idx} is not {n}x{n}")
        if kind not in (KIND_COMPLEX, KIND_PRODUCT):
            raise ValidationError(f"structure {idx} has unknown kind {kind!r}")
        # neutrality concerns the request itself, so it is checked before
        # any matrix property: product structures only exist when p = q
        if kind == KIND_PRODUCT and p != q:
            raise ValidationError(
                f"structure {idx} violates the neutrality requirement: product "
                f"structures need signature p = q, got ({p}, {q})"
            )
        gj = mat_mul(g.metric, j)
        if mat_add(gj, transpose(gj)) != zero_matrix(n):
            raise ValidationError(f"structure {idx} violates skew-adjointness")
        square = mat_mul(j, j)
        target = mat_scale(-1 if kind == KIND_COMPLEX else 1, identity_matrix(n))
        if square != target:
            raise ValidationError(
                f"structure {idx} violates its square law (expected J^2 = "
                f"{'-id' if kind == KIND_COMPLEX else '+id'})"
            )
        mats.append(j)
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            anti = mat_add(mat_mul(mats[a], mats[b]), mat_mul(mats[b], mats[a]))
            if anti != zero_matrix(n):
                raise ValidationError(f"structures {a} and {b} violate anticommutativity")


def build_clifford(g: ScalarProduct, spec: CliffordSpec) -> CurvatureTensor:
    """mu_0 * (constant-curvature tensor) + sum_i mu_i * (structure tensor).

    The spec is validated first; the output always passes symmetry
    verification and is Osserman and Jacobi-diagonalizable (checked by
    the test suite rather than re-certified on every build).
    """
    validate_clifford_spec(g, spec)
    terms = [(spec.coefficients[0], constant_curvature(g))]
    for mu, (j, _) in zip(spec.coefficients[1:], spec.structures):
        terms.append((mu, tensor_from_skew_structure(g, j)))
    return tensor_linear_combo(terms, space=g)


# ---------------------------------------------------------------------------
# Eigenvalue substitution
# ---------------------------------------------------------------------------


def eigen_substitute(
    r: CurvatureTensor,
    new_eigenvalues,
    samples: int = 32,
    seed: int = 0,
    proportionality_pairs: int = 8,
) -> JacobiFamily:
    """Family K_X = eps_X * sum_i mu_i * P_i(X) with the eigenspaces of R
    and prescribed reduced eigenvalues mu_1..mu_k.

    Requires (and checks on samples): R Osserman with a rational k-point
    reduced spectrum, Jacobi-diagonalizable, and proportional.  The
    returned family is nonnull-only; totalize and reconstruct it to get
    the substituted curvature tensor.
    """
    if not r.verified:
        raise PreconditionError("tensor must pass symmetry verification first")
    verdict = is_osserman(r, samples=samples, seed=seed)
    if not verdict.is_osserman:
        raise StructuralError(
            f"tensor is not Osserman on samples; counterexample at "
            f"{verdict.counterexample[0]}"
        )
    reduced = _reduced_poly(verdict.reference_char_poly)
    roots = rational_roots(reduced)
    if sum(roots.values()) != len(reduced) - 1:
        raise IrrationalSpectrumError(
            "eigenvalue substitution is exact-only and needs a rational spectrum"
        )
    lambdas = sorted(roots)
    mus = [as_fraction(m) for m in new_eigenvalues]
    if len(mus) != len(lambdas):
        raise PreconditionError(
            f"expected {len(lambdas)} replacement eigenvalues, got {len(mus)}"
        )
    if not verdict.diagonalizable:
        raise StructuralError("tensor is not Jacobi-diagonalizable on samples")
    rng = random.Random(seed + 1)
    g = r.space
    pairs = [
        (random_nonnull_vector(g, rng), random_nonnull_vector(g, rng))
        for _ in range(proportionality_pairs)
    ]
    ok, _ = check_proportionality(r, pairs, exact_only=True)
    if not ok:
        raise StructuralError("tensor failed the proportionality hypothesis on samples")

    def evaluate(x: Vector) -> Matrix:
        eps = g.squared_norm(x)
        jac = jacobi_operator(r, x)
        projectors = spectral_projectors(g, jac, x, lambdas)
        acc = zero_matrix(g.dim)
        for mu, proj in zip(mus, projectors):
            acc = mat_add(acc, mat_scale(eps * mu, proj))
        return acc

    return JacobiFamily(g, DOMAIN_NONNULL, evaluate, "eigen-substitution")


def check_two_root_proportionality(
    r: CurvatureTensor, pair_count: int = 20, samples: int = 16, seed: int = 0
) -> bool | None:
    """Proportionality probe for two-root diagonalizable Osserman tensors.

    Returns None (skip) when the preconditions do not hold on samples;
    otherwise the result of :func:`check_proportionality` on seeded
    pairs.
    """
    verdict = is_osserman(r, samples=samples, seed=seed)
    if not (verdict.is_osserman and verdict.k_root == 2 and verdict.diagonalizable):
        return None
    rng = random.Random(seed + 1)
    g = r.space
    pairs = [
        (random_nonnull_vector(g, rng), random_nonnull_vector(g, rng))
        for _ in range(pair_count)
    ]
    ok, _ = check_proportionality(r, pairs)
    return ok
