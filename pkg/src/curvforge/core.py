"""Exact rational linear algebra over scalar product spaces.

Everything here is computed in :class:`fractions.Fraction`; no operation
ever rounds.  Vectors are tuples of fractions, matrices are tuples of row
tuples, and all functions are pure, so values can be shared freely across
threads.

The scalar product may be indefinite: any symmetric nondegenerate rational
matrix is accepted, and the signature is derived by exact symmetric
Gaussian reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DegenerateMetricError,
    DimensionMismatchError,
    PreconditionError,
    SingularMatrixError,
)

Scalar = Fraction
Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce ``value`` (Fraction, int, or a "p/q" string) to Fraction.

    Floats are rejected: admitting them would silently break the
    exactness guarantee that the rest of the package relies on.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def vector(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    converted = tuple(tuple(as_fraction(v) for v in row) for row in rows)
    if converted and any(len(row) != len(converted[0]) for row in converted):
        raise DimensionMismatchError("inconsistent row lengths")
    return converted


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def standard_basis(n: int) -> list[Vector]:
    return [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n))


def zero_matrix(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((ZERO,) * m for _ in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    c = as_fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatchError("matrix product shape mismatch")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Matrix, v: Vector) -> Vector:
    if a and len(a[0]) != len(v):
        raise DimensionMismatchError("matrix-vector shape mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, v: Vector) -> Vector:
    c = as_fraction(c)
    return tuple(c * x for x in v)


def is_zero_vector(v: Vector) -> bool:
    return all(x == 0 for x in v)


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def primitive_vector(v: Vector) -> Vector:
    """Scale ``v`` to a primitive integer vector with positive leading entry.

    The zero vector is returned unchanged.  Used to normalize basis
    outputs so that equal one-dimensional subspaces serialize identically.
    """
    if is_zero_vector(v):
        return v
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


# ---------------------------------------------------------------------------
# Gaussian elimination kernels
# ---------------------------------------------------------------------------


def rref(a: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with the deterministic first-nonzero pivot
    rule.  Returns (rows, pivot column indices)."""
    rows = [list(row) for row in a]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def nullspace(a: Matrix) -> list[Vector]:
    """Exact kernel basis of ``a``, one primitive vector per free column,
    ordered by ascending free-column index."""
    if not a:
        return []
    rows, pivots = rref(a)
    ncols = len(a[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(primitive_vector(tuple(v)))
    return basis


def determinant(a: Matrix) -> Fraction:
    rows = [list(row) for row in a]
    n = len(rows)
    det = ONE
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            det = -det
        det *= rows[c][c]
        inv = ONE / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    rows = [list(row) + list(identity_matrix(n)[i]) for i, row in enumerate(a)]
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
        pv = rows[c][c]
        rows[c] = [x / pv for x in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return tuple(tuple(row[n:]) for row in rows)


def congruence_diagonalize(g: Matrix) -> tuple[Matrix, list[Fraction]]:
    """Exact symmetric Gaussian reduction of a symmetric matrix.

    Returns ``(C, d)`` with ``C^T g C = diag(d)``; the columns of ``C``
    are a g-orthogonal basis.  Zero entries in ``d`` witness degeneracy.
    """
    n = len(g)
    a = [list(row) for row in g]
    c = [list(row) for row in identity_matrix(n)]

    def add_col(dst, src, f):
        # column operation on a (and mirror row op), tracked in c
        for i in range(n):
            a[i][dst] += f * a[i][src]
        for j in range(n):
            a[dst][j] += f * a[src][j]
        for i in range(n):
            c[i][dst] += f * c[i][src]

    def swap_cols(i, j):
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        a[i], a[j] = a[j], a[i]
        for r in range(n):
            c[r][i], c[r][j] = c[r][j], c[r][i]

    for k in range(n):
        if a[k][k] == 0:
            j = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if j is not None:
                swap_cols(k, j)
            else:
                # all remaining diagonal entries vanish; borrow an
                # off-diagonal one (2*a[k][j] lands on the diagonal)
                pair = next(
                    ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0),
                    None,
                )
                if pair is None:
                    break  # remaining block is zero; matrix is degenerate
                i, j = pair
                add_col(i, j, ONE)
                if i != k:
                    swap_cols(k, i)
        pivot = a[k][k]
        for j in range(k + 1, n):
            if a[k][j] != 0:
                add_col(j, k, -a[k][j] / pivot)
    diag = [a[i][i] for i in range(n)]
    return tuple(tuple(row) for row in c), diag


def signature_of(g: Matrix) -> tuple[int, int]:
    """Signature (p, q) of a symmetric matrix; raises if degenerate."""
    _, diag = congruence_diagonalize(g)
    p = sum(1 for d in diag if d > 0)
    q = sum(1 for d in diag if d < 0)
    if p + q != len(g):
        raise DegenerateMetricError("metric is degenerate")
    return p, q


# ---------------------------------------------------------------------------
# Scalar products
# ---------------------------------------------------------------------------


class VectorClass(Enum):
    ZERO = "zero"
    NULL = "null"
    NONNULL = "nonnull"


@dataclass(frozen=True)
class ScalarProduct:
    """A nondegenerate symmetric bilinear form of arbitrary signature.

    ``metric`` may be any symmetric rational matrix with nonzero
    determinant, not only a diagonal one.  The signature and the exact
    inverse are derived once at construction.
    """

    metric: Matrix
    dim: int = field(init=False)
    signature: tuple[int, int] = field(init=False)
    inverse: Matrix = field(init=False)

    def __post_init__(self):
        m = matrix(self.metric)
        n = len(m)
        if any(len(row) != n for row in m):
            raise DimensionMismatchError("metric must be square")
        if n == 0:
            raise DegenerateMetricError("metric must have positive dimension")
        if m != transpose(m):
            raise DegenerateMetricError("metric must be symmetric")
        object.__setattr__(self, "metric", m)
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "signature", signature_of(m))
        object.__setattr__(self, "inverse", inverse(m))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "ScalarProduct":
        ents = [as_fraction(e) for e in entries]
        n = len(ents)
        return cls(tuple(tuple(ents[i] if j == i else ZERO for j in range(n)) for i in range(n)))

    def check_dim(self, v: Vector):
        if len(v) != self.dim:
            raise DimensionMismatchError(f"vector has length {len(v)}, metric has dimension {self.dim}")

    def inner(self, x: Vector, y: Vector) -> Fraction:
        self.check_dim(x)
        self.check_dim(y)
        gx = mat_vec(self.metric, y)
        return sum((a * b for a, b in zip(x, gx)), ZERO)

    def squared_norm(self, x: Vector) -> Fraction:
        return self.inner(x, x)


def squared_norm(g: ScalarProduct, x: Vector) -> Fraction:
    """Exact squared norm x^T G x."""
    return g.squared_norm(vector(x))


def classify_vector(g: ScalarProduct, x: Vector) -> VectorClass:
    """Exact trichotomy: zero vector, null (nonzero with vanishing squared
    norm), or nonnull."""
    x = vector(x)
    g.check_dim(x)
    if is_zero_vector(x):
        return VectorClass.ZERO
    return VectorClass.NULL if g.squared_norm(x) == 0 else VectorClass.NONNULL


def is_self_adjoint(g: ScalarProduct, a: Matrix) -> bool:
    """True iff G A = A^T G exactly."""
    a = matrix(a)
    if len(a) != g.dim or any(len(row) != g.dim for row in a):
        raise DimensionMismatchError("endomorphism shape does not match the space")
    return mat_mul(g.metric, a) == mat_mul(transpose(a), g.metric)


def orthogonal_complement_basis(g: ScalarProduct, x: Vector) -> list[Vector]:
    """Deterministic basis of the g-orthogonal complement of a nonnull x.

    Each standard basis vector is projected g-orthogonally away from x in
    index order; the first n-1 independent projections (normalized to
    primitive integer vectors) are returned.  For nonnull x the restricted
    metric on the span is automatically nondegenerate.
    """
    x = vector(x)
    cls = classify_vector(g, x)
    if cls is not VectorClass.NONNULL:
        raise PreconditionError(f"complement requires a nonnull vector, got a {cls.value} one")
    eps = g.squared_norm(x)
    basis: list[Vector] = []
    echelon: list[list[Fraction]] = []
    for e in standard_basis(g.dim):
        v = vec_sub(e, vec_scale(g.inner(x, e) / eps, x))
        # independence test against the vectors collected so far
        row = list(v)
        for er in echelon:
            lead = next(i for i, c in enumerate(er) if c != 0)
            if row[lead] != 0:
                f = row[lead] / er[lead]
                row = [a - f * b for a, b in zip(row, er)]
        if any(c != 0 for c in row):
            echelon.append(row)
            basis.append(primitive_vector(v))
        if len(basis) == g.dim - 1:
            break
    return basis


# ---------------------------------------------------------------------------
# Characteristic polynomials and exact polynomial helpers
# ---------------------------------------------------------------------------
# Polynomials are tuples of Fraction coefficients in descending degree
# order; every characteristic polynomial is monic.


def char_poly(a: Matrix) -> tuple[Fraction, ...]:
    """Exact coefficients of det(lambda*I - A) by the Faddeev-LeVerrier
    recursion (division by the step index is exact over the rationals)."""
    a = matrix(a)
    n = len(a)
    if any(len(row) != n for row in a):
        raise DimensionMismatchError("characteristic polynomial requires a square matrix")
    coeffs = [ONE]
    m = identity_matrix(n)
    for k in range(1, n + 1):
        am = mat_mul(a, m)
        c = -trace(am) / k
        coeffs.append(c)
        m = mat_add(am, mat_scale(c, identity_matrix(n)))
    return tuple(coeffs)


def poly_eval(p: Sequence[Fraction], x) -> Fraction:
    x = as_fraction(x)
    acc = ZERO
    for c in p:
        acc = acc * x + c
    return acc


def poly_derivative(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = len(p) - 1
    if n <= 0:
        return (ZERO,)
    return tuple(c * (n - i) for i, c in enumerate(p[:-1]))


def poly_trim(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return tuple(p[i:])


def poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]):
    num = list(poly_trim(num))
    den = list(poly_trim(den))
    if den == [ZERO]:
        raise ZeroDivisionError("polynomial division by zero")
    steps = len(num) - len(den) + 1
    if steps <= 0:
        return (ZERO,), poly_trim(num)
    quot: list[Fraction] = []
    for _ in range(steps):
        f = num[0] / den[0]
        quot.append(f)
        num = [a - f * b for a, b in zip(num, den)] + num[len(den):]
        num.pop(0)
    return poly_trim(quot), poly_trim(num or [ZERO])


def poly_monic(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    p = poly_trim(p)
    return p if p[0] in (ZERO, ONE) else tuple(c / p[0] for c in p)


def poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    a, b = poly_trim(a), poly_trim(b)
    while b != (ZERO,):
        _, r = poly_divmod(a, b)
        a, b = b, r
    return poly_monic(a)


def squarefree_part(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    g = poly_gcd(p, poly_derivative(p))
    q, r = poly_divmod(p, g)
    assert r == (ZERO,)
    return poly_monic(q)


def distinct_root_count(p: Sequence[Fraction]) -> int:
    """Number of distinct complex roots: deg p - deg gcd(p, p')."""
    p = poly_trim(p)
    return len(squarefree_part(p)) - 1


def rational_roots(p: Sequence[Fraction]) -> dict[Fraction, int]:
    """All rational roots of ``p`` with multiplicities (exact).

    Factorization over the integers is delegated to sympy; degrees here
    never exceed the ambient dimension, so this is instantaneous.
    """
    import sympy

    p = poly_trim(p)
    if len(p) == 1:
        return {}
    lcm = 1
    for c in p:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p]
    poly = sympy.Poly(ints, sympy.Symbol("lam"))
    return {Fraction(r.p, r.q): int(m) for r, m in poly.ground_roots().items()}


def poly_apply(p: Sequence[Fraction], a: Matrix) -> Matrix:
    """Evaluate a polynomial at a square matrix (Horner)."""
    n = len(a)
    acc = zero_matrix(n)
    for c in p:
        acc = mat_add(mat_mul(acc, a), mat_scale(c, identity_matrix(n)))
    return acc
