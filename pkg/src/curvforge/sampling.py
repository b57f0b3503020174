"""Seeded generation of rational sample vectors.

All sampling is driven by :class:`random.Random` so that identical seeds
reproduce identical samples, bit for bit.  Coordinates are kept small
(numerators in [-9, 9], denominators in {1, 2, 3}) to stop rationals from
blowing up inside degree-4 contractions.

Null samples are exact: a rational point on the null cone only exists
when some mixed-signature 2-plane of the diagonalized metric has a
perfect-square diagonal ratio, so the generator reports the directions it
can actually construct (possibly none) instead of approximating.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .core import (
    ScalarProduct,
    Vector,
    congruence_diagonalize,
    is_zero_vector,
    primitive_vector,
    vec_add,
    vec_scale,
)

NUMERATOR_BOUND = 9
DENOMINATORS = (1, 2, 3)


def random_fraction(rng: random.Random, bound: int = NUMERATOR_BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.choice(DENOMINATORS))


def random_nonzero_fraction(rng: random.Random, bound: int = NUMERATOR_BOUND) -> Fraction:
    while True:
        f = random_fraction(rng, bound)
        if f != 0:
            return f


def random_vector(rng: random.Random, n: int) -> Vector:
    while True:
        v = tuple(random_fraction(rng) for _ in range(n))
        if not is_zero_vector(v):
            return v


def random_nonnull_vector(g: ScalarProduct, rng: random.Random) -> Vector:
    """Rejection-sample a vector with nonzero squared norm.

    The null cone is a measure-zero quadric, so this terminates fast; the
    iteration cap only guards against a degenerate caller bug.
    """
    for _ in range(1000):
        v = random_vector(rng, g.dim)
        if g.squared_norm(v) != 0:
            return v
    raise RuntimeError("could not sample a nonnull vector")


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    pn = math.isqrt(x.numerator)
    pd = math.isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


def null_directions(g: ScalarProduct) -> list[Vector]:
    """Deterministic list of primitive rational null directions.

    Scans the 2-planes of an exact diagonalizing basis for mixed-sign
    pairs whose norm ratio is a rational square; each such plane yields
    two independent null directions.  Definite metrics give the empty
    list, and so do indefinite metrics whose rational points on the null
    cone do not exist (e.g. diag(1, -2)).
    """
    c, diag = congruence_diagonalize(g.metric)
    cols = [tuple(row[j] for row in c) for j in range(g.dim)]
    found: list[Vector] = []
    seen: set[Vector] = set()
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            if diag[i] == 0 or diag[j] == 0 or (diag[i] > 0) == (diag[j] > 0):
                continue
            r = _rational_sqrt(-diag[j] / diag[i])
            if r is None:
                continue
            for s in (1, -1):
                v = primitive_vector(vec_add(vec_scale(r * s, cols[i]), cols[j]))
                if v not in seen:
                    seen.add(v)
                    found.append(v)
    return found


def random_null_vector(g: ScalarProduct, rng: random.Random) -> Vector | None:
    """A random rational null vector, or None when no rational null
    direction exists for this metric."""
    directions = null_directions(g)
    if not directions:
        return None
    d = directions[rng.randrange(len(directions))]
    return vec_scale(random_nonzero_fraction(rng), d)
