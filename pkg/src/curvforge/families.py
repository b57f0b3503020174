"""Vector-indexed families of self-adjoint endomorphisms.

A family assigns to each vector X of a scalar product space an
endomorphism K_X.  Families arriving from the outside world are only
trusted after the axiom suite has checked, on exact seeded samples, the
hypotheses that make them Jacobi-operator data:

* self-adjointness of every K_X,
* compatibility      g(K_X Y, Y) = g(K_Y X, X),
* annihilation       K_X X = 0,
* homogeneity        K_{tX} = t^2 K_X,
* the cocycle        K_{X+Y} Y - K_X Y + K_Y X = 0.

A family given only on nonnull vectors extends canonically to the whole
space: K_0 = 0, and for null N the exact mean

    K_N = (K_{N+X} + K_{N-X} - 2 K_X) / 2

over any auxiliary X with eps_X * eps_{N+X} * eps_{N-X} != 0.  The result
is independent of the admissible X; ``extend_to_null`` re-derives it from
a second candidate and compares bit for bit when verification is on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .core import (
    Matrix,
    ScalarProduct,
    Vector,
    VectorClass,
    as_fraction,
    classify_vector,
    is_self_adjoint,
    is_zero_vector,
    mat_add,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_vec,
    matrix,
    standard_basis,
    transpose,
    vec_add,
    vec_scale,
    vec_sub,
    vector,
    zero_matrix,
)
from .errors import FamilyDomainError, PreconditionError, StructuralError
from .sampling import random_nonnull_vector, random_nonzero_fraction, random_null_vector

WITNESS_LIMIT = 16

DOMAIN_TOTAL = "total"
DOMAIN_NONNULL = "nonnull"


@dataclass(frozen=True)
class JacobiFamily:
    """Descriptor of a family X -> K_X.

    ``evaluate`` is the raw evaluator; calling the family itself goes
    through the domain guard, which is what every consumer should do.
    ``support`` restricts evaluation to an explicit finite vector list
    (table families, which are verification-only).
    """

    space: ScalarProduct
    domain: str
    evaluate: Callable[[Vector], Matrix]
    provenance: str
    support: tuple[Vector, ...] | None = None

    def accepts(self, x: Vector) -> bool:
        if len(x) != self.space.dim:
            return False
        if self.support is not None:
            return x in self.support
        if self.domain == DOMAIN_TOTAL:
            return True
        return classify_vector(self.space, x) is VectorClass.NONNULL

    def __call__(self, x) -> Matrix:
        x = vector(x)
        self.space.check_dim(x)
        if not self.accepts(x):
            kind = classify_vector(self.space, x).value
            raise FamilyDomainError(
                f"family with domain '{self.domain}' cannot be evaluated on a {kind} vector"
            )
        return self.evaluate(x)


def epsilon_identity_family(g: ScalarProduct) -> JacobiFamily:
    """The family K_X = eps_X * id.

    Self-adjoint and compatible, yet K_X X = eps_X X != 0 on nonnull X,
    so it must be rejected by any reconstruction gate; it exists to
    demonstrate that the annihilation hypothesis cannot be dropped.
    """

    def evaluate(x: Vector) -> Matrix:
        eps = g.squared_norm(x)
        return tuple(
            tuple(eps if i == j else Fraction(0) for j in range(g.dim)) for i in range(g.dim)
        )

    return JacobiFamily(g, DOMAIN_TOTAL, evaluate, "counterexample")


def table_family(g: ScalarProduct, entries: Sequence[tuple]) -> JacobiFamily:
    """Finite lookup family; valid for sample verification only."""
    table = {vector(v): matrix(m) for v, m in entries}
    support = tuple(table.keys())

    def evaluate(x: Vector) -> Matrix:
        return table[x]

    domain = DOMAIN_NONNULL
    if any(classify_vector(g, v) is not VectorClass.NONNULL for v in support):
        domain = DOMAIN_TOTAL
    return JacobiFamily(g, domain, evaluate, "user-table", support=support)


# ---------------------------------------------------------------------------
# Axiom checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A replayable violation: re-evaluating ``identity`` on ``vectors``
    (and ``scalar``, when the identity involves one) reproduces
    ``residual`` exactly."""

    identity: str
    vectors: tuple[Vector, ...]
    residual: object
    scalar: Fraction | None = None

    def sort_key(self):
        # simplest witnesses first: a basis-vector counterexample should
        # lead the report, not a random deep-coordinate one
        size = max((abs(c) for v in self.vectors for c in v), default=Fraction(0))
        nonzeros = sum(1 for v in self.vectors for c in v if c != 0)
        first = min(
            (i for v in self.vectors for i, c in enumerate(v) if c != 0),
            default=0,
        )
        return (
            self.identity,
            size,
            nonzeros,
            first,
            self.vectors,
            self.scalar if self.scalar is not None else Fraction(0),
        )


@dataclass(frozen=True)
class AxiomReport:
    """Aggregated outcome of the hypothesis checks.

    A flag is None when its check did not run.  Any False flag is backed
    by at least one witness; witnesses are canonically sorted so reports
    are independent of check scheduling.
    """

    self_adjoint_ok: bool | None = None
    compatible_ok: bool | None = None
    annihilation_ok: bool | None = None
    homogeneity_ok: bool | None = None
    cocycle_ok: bool | None = None
    witnesses: tuple[Witness, ...] = ()
    violation_counts: tuple[tuple[str, int], ...] = ()
    samples_used: int = 0
    seed: int | None = None

    _FLAGS = (
        ("self_adjoint_ok", "self-adjointness"),
        ("compatible_ok", "compatibility"),
        ("annihilation_ok", "annihilation"),
        ("homogeneity_ok", "homogeneity"),
        ("cocycle_ok", "cocycle"),
    )

    @property
    def passed(self) -> bool:
        return all(getattr(self, name) is not False for name, _ in self._FLAGS)

    @property
    def first_failure(self) -> str | None:
        for name, label in self._FLAGS:
            if getattr(self, name) is False:
                return label
        return None

    def merge(self, other: "AxiomReport") -> "AxiomReport":
        def combine(a, b):
            if a is None:
                return b
            if b is None:
                return a
            return a and b

        counts = dict(self.violation_counts)
        for key, c in other.violation_counts:
            counts[key] = counts.get(key, 0) + c
        witnesses = tuple(sorted(self.witnesses + other.witnesses, key=Witness.sort_key))
        return AxiomReport(
            self_adjoint_ok=combine(self.self_adjoint_ok, other.self_adjoint_ok),
            compatible_ok=combine(self.compatible_ok, other.compatible_ok),
            annihilation_ok=combine(self.annihilation_ok, other.annihilation_ok),
            homogeneity_ok=combine(self.homogeneity_ok, other.homogeneity_ok),
            cocycle_ok=combine(self.cocycle_ok, other.cocycle_ok),
            witnesses=witnesses,
            violation_counts=tuple(sorted(counts.items())),
            samples_used=max(self.samples_used, other.samples_used),
            seed=self.seed if self.seed is not None else other.seed,
        )


def _fragment(flag_name: str, identity: str, violations: list[Witness]) -> AxiomReport:
    ok = not violations
    return AxiomReport(
        **{flag_name: ok},
        witnesses=tuple(violations[:WITNESS_LIMIT]),
        violation_counts=((identity, len(violations)),) if violations else (),
    )


def check_self_adjointness(k: JacobiFamily, samples: Sequence[Vector]) -> AxiomReport:
    g = k.space
    bad = []
    for x in samples:
        m = k(x)
        if not is_self_adjoint(g, m):
            residual = mat_sub(mat_mul(g.metric, m), mat_mul(transpose(m), g.metric))
            bad.append(Witness("self-adjointness", (vector(x),), residual))
    return _fragment("self_adjoint_ok", "self-adjointness", bad)


def check_compatibility(k: JacobiFamily, pairs: Sequence[tuple[Vector, Vector]]) -> AxiomReport:
    """g(K_X Y, Y) = g(K_Y X, X), exactly, for each supplied pair."""
    g = k.space
    bad = []
    for x, y in pairs:
        lhs = g.inner(mat_vec(k(x), vector(y)), vector(y))
        rhs = g.inner(mat_vec(k(y), vector(x)), vector(x))
        if lhs != rhs:
            bad.append(Witness("compatibility", (vector(x), vector(y)), lhs - rhs))
    return _fragment("compatible_ok", "compatibility", bad)


def check_annihilation(k: JacobiFamily, samples: Sequence[Vector]) -> AxiomReport:
    """K_X X = 0, exactly, for each sample."""
    bad = []
    for x in samples:
        r = mat_vec(k(x), vector(x))
        if not is_zero_vector(r):
            bad.append(Witness("annihilation", (vector(x),), r))
    return _fragment("annihilation_ok", "annihilation", bad)


def check_homogeneity(k: JacobiFamily, samples: Sequence[tuple[Vector, Fraction]]) -> AxiomReport:
    """K_{tX} = t^2 K_X, exactly, for each (X, t) with t != 0."""
    bad = []
    for x, t in samples:
        t = as_fraction(t)
        if t == 0:
            raise PreconditionError("homogeneity check requires t != 0")
        r = mat_sub(k(vec_scale(t, vector(x))), mat_scale(t * t, k(x)))
        if any(any(c != 0 for c in row) for row in r):
            bad.append(Witness("homogeneity", (vector(x),), r, scalar=t))
    return _fragment("homogeneity_ok", "homogeneity", bad)


def check_cocycle(k: JacobiFamily, pairs: Sequence[tuple[Vector, Vector]]) -> AxiomReport:
    """K_{X+Y} Y - K_X Y + K_Y X = 0, exactly, for each pair."""
    bad = []
    for x, y in pairs:
        x, y = vector(x), vector(y)
        r = vec_add(vec_sub(mat_vec(k(vec_add(x, y)), y), mat_vec(k(x), y)), mat_vec(k(y), x))
        if not is_zero_vector(r):
            bad.append(Witness("cocycle", (x, y), r))
    return _fragment("cocycle_ok", "cocycle", bad)


def check_scaling_interpolation(
    k: JacobiFamily, triples: Sequence[tuple[Vector, Vector, Fraction]]
) -> tuple[bool, list[Witness]]:
    """K_{X+tY} - K_X - t^2 K_Y = t (K_{X+Y} - K_X - K_Y), exactly.

    Quadratic interpolation between K_X and K_{X+Y}; it is the identity
    that makes every K_{X+tY} a polynomial in t and underpins both the
    null extension and the derivative-free reconstruction formulas.  Not
    part of the five-flag suite, but exposed for property testing.
    """
    bad = []
    for x, y, t in triples:
        x, y, t = vector(x), vector(y), as_fraction(t)
        lhs = mat_sub(mat_sub(k(vec_add(x, vec_scale(t, y))), k(x)), mat_scale(t * t, k(y)))
        rhs = mat_scale(t, mat_sub(mat_sub(k(vec_add(x, y)), k(x)), k(y)))
        r = mat_sub(lhs, rhs)
        if any(any(c != 0 for c in row) for row in r):
            bad.append(Witness("scaling-interpolation", (x, y), r, scalar=t))
    return (not bad, bad)


def mu_form(k: JacobiFamily, x, y) -> Fraction:
    """mu(X, Y) = g(K_Y X, X); symmetric in its arguments whenever the
    family is compatible."""
    x, y = vector(x), vector(y)
    return k.space.inner(mat_vec(k(y), x), x)


# ---------------------------------------------------------------------------
# Extension to the whole space
# ---------------------------------------------------------------------------


def admissible_extension_vectors(g: ScalarProduct, n: Vector) -> Iterator[Vector]:
    """Deterministic stream of auxiliary vectors X with
    eps_X * eps_{N+X} * eps_{N-X} != 0, at most one per direction.

    Directions are scanned as t*e_i first (the scaled-basis trick), then
    t*(e_i +/- e_j) so that metrics whose basis vectors are all null
    (e.g. [[0,1],[1,0]]) still yield candidates.  Per direction with
    eps != 0 at most one integer t can be inadmissible, so the scan
    bound is never reached for a nondegenerate metric.
    """
    basis = standard_basis(g.dim)
    directions = list(basis)
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            directions.append(vec_add(basis[i], basis[j]))
            directions.append(vec_sub(basis[i], basis[j]))
    for d in directions:
        for t in range(1, 33):
            x = vec_scale(t, d)
            if (
                g.squared_norm(x) != 0
                and g.squared_norm(vec_add(n, x)) != 0
                and g.squared_norm(vec_sub(n, x)) != 0
            ):
                yield x
                break


def null_extension_from(k: JacobiFamily, n: Vector, x: Vector) -> Matrix:
    """The extension mean (K_{N+X} + K_{N-X} - 2 K_X) / 2 for one
    admissible auxiliary vector."""
    n, x = vector(n), vector(x)
    total = mat_sub(mat_add(k(vec_add(n, x)), k(vec_sub(n, x))), mat_scale(2, k(x)))
    return mat_scale(Fraction(1, 2), total)


def extend_to_null(k: JacobiFamily, n: Vector, verify_independence: bool = True) -> Matrix:
    """Value of the extended family at a null vector N.

    With ``verify_independence`` the value is recomputed from a second
    admissible auxiliary vector (a different direction) and compared
    exactly, and self-adjointness plus K_N N = 0 are asserted; any
    mismatch means the input family violates its hypotheses somewhere
    the sampled checks did not look.
    """
    g = k.space
    n = vector(n)
    if classify_vector(g, n) is not VectorClass.NULL:
        raise PreconditionError("null extension requires a null vector")
    candidates = admissible_extension_vectors(g, n)
    first = next(candidates, None)
    if first is None:
        raise RuntimeError("no admissible auxiliary vector found; metric must be degenerate")
    value = null_extension_from(k, n, first)
    if verify_independence:
        second = next(candidates, None)
        if second is not None:
            other = null_extension_from(k, n, second)
            if other != value:
                raise StructuralError(
                    "null extension depends on the auxiliary vector: "
                    f"candidates {first} and {second} disagree at N={n}"
                )
        if not is_zero_vector(mat_vec(value, n)):
            raise StructuralError(f"extended operator does not annihilate its null vector N={n}")
        if not is_self_adjoint(g, value):
            raise StructuralError(f"extended operator at N={n} is not self-adjoint")
    return value


def totalize(k: JacobiFamily, verify_independence: bool = True) -> JacobiFamily:
    """Extend a nonnull-only family to every vector of the space.

    Zero maps to the zero operator and null vectors go through
    ``extend_to_null``; nonnull vectors are untouched.  Table families
    are rejected: a finite sample table carries no rule for evaluating
    at the new vectors the extension needs.
    """
    if k.support is not None:
        raise PreconditionError("table families are verification-only and cannot be totalized")
    if k.domain == DOMAIN_TOTAL:
        return k
    g = k.space

    def evaluate(x: Vector) -> Matrix:
        cls = classify_vector(g, x)
        if cls is VectorClass.ZERO:
            return zero_matrix(g.dim)
        if cls is VectorClass.NULL:
            return extend_to_null(k, x, verify_independence=verify_independence)
        return k.evaluate(x)

    return JacobiFamily(g, DOMAIN_TOTAL, evaluate, k.provenance)


# ---------------------------------------------------------------------------
# The suite
# ---------------------------------------------------------------------------


def _suite_singles(k: JacobiFamily, budget: int, rng: random.Random) -> list[Vector]:
    if k.support is not None:
        return list(k.support[: max(budget, 1)])
    g = k.space
    singles = [e for e in standard_basis(g.dim) if k.accepts(e)]
    if k.domain == DOMAIN_TOTAL:
        for _ in range(2):
            nv = random_null_vector(g, rng)
            if nv is not None:
                singles.append(nv)
    while len(singles) < budget:
        singles.append(random_nonnull_vector(g, rng))
    return singles[: max(budget, len(singles))]


def run_axiom_suite(k: JacobiFamily, sample_budget: int = 32, seed: int = 0) -> AxiomReport:
    """Run every hypothesis check on seeded exact samples.

    ``sample_budget`` is the per-check sample count.  The sample set
    starts with the standard basis (so violations on basis vectors are
    found first and witnessed deterministically) and is filled with
    seeded random rational vectors; for total families a couple of null
    samples join when the metric admits rational null vectors.
    Deterministic: identical (family, budget, seed) produce identical
    reports.
    """
    if sample_budget < 1:
        raise PreconditionError("sample_budget must be >= 1")
    rng = random.Random(seed)
    g = k.space
    singles = _suite_singles(k, sample_budget, rng)

    if k.support is not None:
        pool = list(k.support)
        pairs = [(x, y) for i, x in enumerate(pool) for y in pool[i + 1 :]][:sample_budget]
        homog = [(x, t) for x in pool for y in pool for t in _proportionality_factor(x, y)][
            :sample_budget
        ]
        cocyc = [(x, y) for x in pool for y in pool if vec_add(x, y) in k.support][:sample_budget]
    else:
        pairs = []
        while len(pairs) < sample_budget:
            x = singles[rng.randrange(len(singles))]
            y = random_nonnull_vector(g, rng)
            pairs.append((x, y))
        homog = []
        fixed = [Fraction(2), Fraction(-1), Fraction(1, 2)]
        while len(homog) < sample_budget:
            x = singles[rng.randrange(len(singles))]
            t = fixed[len(homog)] if len(homog) < len(fixed) else random_nonzero_fraction(rng)
            homog.append((x, t))
        cocyc = []
        attempts = 0
        while len(cocyc) < sample_budget and attempts < 100 * sample_budget:
            attempts += 1
            x = random_nonnull_vector(g, rng)
            y = random_nonnull_vector(g, rng)
            if k.accepts(vec_add(x, y)):
                cocyc.append((x, y))

    report = AxiomReport(samples_used=sample_budget, seed=seed)
    report = report.merge(check_self_adjointness(k, singles))
    report = report.merge(check_compatibility(k, pairs))
    report = report.merge(check_annihilation(k, singles))
    report = report.merge(check_homogeneity(k, homog))
    report = report.merge(check_cocycle(k, cocyc))
    return report


def _proportionality_factor(x: Vector, y: Vector) -> list[Fraction]:
    """[t] when y = t*x with t != 0, else []; table-family helper."""
    if is_zero_vector(x) or is_zero_vector(y):
        return []
    ratio = None
    for a, b in zip(x, y):
        if (a == 0) != (b == 0):
            return []
        if a != 0:
            r = b / a
            if ratio is None:
                ratio = r
            elif ratio != r:
                return []
    return [ratio] if ratio not in (None, Fraction(0)) else []
