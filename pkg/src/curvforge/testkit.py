"""Deterministic generators and brute-force oracles for testing.

``random_act`` builds curvature tensors as sums of symmetric-form
tensors, so every output satisfies the symmetry identities by
construction and a generator bug can never masquerade as a verifier bug.
``oracle_contract`` is the independent naive contraction used to check
pipeline contractions against; it deliberately shares no code with the
tensors module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import Matrix, ScalarProduct, Vector, identity_matrix, mat_mul, transpose, vector
from .errors import DimensionMismatchError, PreconditionError
from .osserman import KIND_COMPLEX, CliffordSpec
from .tensors import CurvatureTensor, tensor_from_symmetric_form, tensor_linear_combo


@dataclass(frozen=True)
class GeneratorConfig:
    dim: int
    signature: tuple[int, int]
    seed: int = 0
    num_forms: int = 2
    coefficient_bound: int = 5


def _diag_metric(cfg: GeneratorConfig) -> ScalarProduct:
    p, q = cfg.signature
    if p + q != cfg.dim or p < 0 or q < 0:
        raise PreconditionError(f"signature {cfg.signature} does not match dim {cfg.dim}")
    return ScalarProduct.diagonal([1] * p + [-1] * q)


def random_symmetric_form(rng: random.Random, n: int, bound: int) -> Matrix:
    entries = {}
    for i in range(n):
        for j in range(i, n):
            entries[(i, j)] = Fraction(rng.randint(-bound, bound), rng.choice((1, 2)))
    return tuple(
        tuple(entries[(min(i, j), max(i, j))] for j in range(n)) for i in range(n)
    )


def random_act(cfg: GeneratorConfig) -> CurvatureTensor:
    """Seeded random algebraic curvature tensor on a diag(+-1) metric.

    Sum of ``num_forms`` symmetric-form tensors; identical configs give
    identical components.
    """
    g = _diag_metric(cfg)
    rng = random.Random(cfg.seed)
    terms = [
        (Fraction(1), tensor_from_symmetric_form(g, random_symmetric_form(rng, cfg.dim, cfg.coefficient_bound)))
        for _ in range(cfg.num_forms)
    ]
    return tensor_linear_combo(terms, space=g)


def oracle_contract(r: CurvatureTensor, x, y, z, w) -> Fraction:
    """Naive quadruple-loop contraction sum R[i][j][k][l] x_i y_j z_k w_l.

    Works straight off the component array (no verified flag needed) and
    never calls the curvature module, so it can act as the independent
    side of every contraction check.
    """
    x, y, z, w = vector(x), vector(y), vector(z), vector(w)
    n = len(r.components)
    for v in (x, y, z, w):
        if len(v) != n:
            raise DimensionMismatchError("vector length does not match the component array")
    total = Fraction(0)
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(n):
            if y[j] == 0:
                continue
            for k in range(n):
                if z[k] == 0:
                    continue
                for l in range(n):
                    total += r.components[i][j][k][l] * x[i] * y[j] * z[k] * w[l]
    return total


# ---------------------------------------------------------------------------
# Anticommuting structure families for Clifford-type specs
# ---------------------------------------------------------------------------

_BLOCK = ((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0)))


def standard_complex_structure(n: int) -> Matrix:
    """Block-diagonal rotation structure J with J^2 = -id; n must be even."""
    if n % 2:
        raise PreconditionError("a complex structure needs an even dimension")
    rows = [[Fraction(0)] * n for _ in range(n)]
    for b in range(n // 2):
        rows[2 * b][2 * b + 1] = Fraction(-1)
        rows[2 * b + 1][2 * b] = Fraction(1)
    return tuple(tuple(r) for r in rows)


def quaternion_structures() -> tuple[Matrix, Matrix, Matrix]:
    """The three anticommuting complex structures of dimension four
    (left multiplication by i, j, k on the quaternions)."""
    i = (
        (0, -1, 0, 0),
        (1, 0, 0, 0),
        (0, 0, 0, -1),
        (0, 0, 1, 0),
    )
    j = (
        (0, 0, -1, 0),
        (0, 0, 0, 1),
        (1, 0, 0, 0),
        (0, -1, 0, 0),
    )
    k = (
        (0, 0, 0, -1),
        (0, 0, -1, 0),
        (0, 1, 0, 0),
        (1, 0, 0, 0),
    )
    to_m = lambda m: tuple(tuple(Fraction(c) for c in row) for row in m)
    return to_m(i), to_m(j), to_m(k)


def rational_rotation(n: int, plane: tuple[int, int], params: tuple[int, int]) -> Matrix:
    """Givens rotation with an exact Pythagorean cosine/sine pair."""
    m, k = params
    c = Fraction(m * m - k * k, m * m + k * k)
    s = Fraction(2 * m * k, m * m + k * k)
    rows = [list(row) for row in identity_matrix(n)]
    a, b = plane
    rows[a][a], rows[a][b] = c, -s
    rows[b][a], rows[b][b] = s, c
    return tuple(tuple(r) for r in rows)


def random_rational_orthogonal(n: int, rng: random.Random, rotations: int = 3) -> Matrix:
    """Product of seeded rational Givens rotations (orthogonal for the
    Euclidean metric, exactly)."""
    q = identity_matrix(n)
    for _ in range(rotations):
        a = rng.randrange(n)
        b = rng.randrange(n - 1)
        if b >= a:
            b += 1
        m = rng.randint(2, 5)
        k = rng.randint(1, m - 1)
        q = mat_mul(q, rational_rotation(n, (min(a, b), max(a, b)), (m, k)))
    return q


def random_clifford_spec(dim: int, seed: int = 0, bound: int = 5) -> CliffordSpec:
    """Seeded Clifford spec on the Euclidean metric of dimension 4 or 6.

    Structures come from the quaternion triple (dim 4) or the standard
    complex structure (dim 6), conjugated by a random rational orthogonal
    matrix; coefficients are small nonzero rationals.
    """
    if dim == 4:
        pool = list(quaternion_structures())
    elif dim == 6:
        pool = [standard_complex_structure(6)]
    else:
        raise PreconditionError("random Clifford specs are provided for dims 4 and 6")
    rng = random.Random(seed)
    count = rng.randint(1, len(pool))
    q = random_rational_orthogonal(dim, rng)
    q_inv = transpose(q)  # orthogonal, so the transpose inverts it
    structures = [(mat_mul(mat_mul(q_inv, j), q), KIND_COMPLEX) for j in pool[:count]]
    coefficients = [Fraction(rng.randint(1, bound))]
    for _ in structures:
        c = Fraction(0)
        while c == 0:
            c = Fraction(rng.randint(-bound, bound), rng.choice((1, 2)))
        coefficients.append(c)
    return CliffordSpec.of(coefficients, structures)
