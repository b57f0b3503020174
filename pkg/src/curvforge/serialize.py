"""JSON schemas for tensors, families, specs, and reports.

Rationals travel as strings "p/q" (or "p" for integers) so that no float
corruption can occur in transit; vectors and matrices are nested JSON
arrays of such strings.  Decoding is strict: unknown kinds, malformed
rationals, or wrong shapes raise :class:`SchemaError` with a message
naming the offending field.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .core import Matrix, ScalarProduct, Vector, matrix, vector
from .errors import CurvforgeError, SchemaError
from .families import AxiomReport, JacobiFamily, Witness, epsilon_identity_family, table_family
from .osserman import CliffordSpec, OssermanVerdict, build_clifford, eigen_substitute
from .tensors import CurvatureTensor, SymmetryReport, from_components, jacobi_family_of

_FRACTION_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def frac_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_frac(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _FRACTION_RE.match(text):
        raise SchemaError(f"not a rational string: {text!r}")
    return Fraction(text)


def encode_value(value):
    """Fractions, vectors, and matrices to nested string arrays."""
    if isinstance(value, Fraction):
        return frac_str(value)
    if isinstance(value, tuple):
        return [encode_value(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    raise SchemaError(f"cannot encode value of type {type(value).__name__}")


def vector_to_json(v: Vector) -> list:
    return [frac_str(c) for c in v]


def vector_from_json(data) -> Vector:
    if not isinstance(data, list):
        raise SchemaError("vector must be a JSON array")
    return vector([parse_frac(c) for c in data])


def matrix_to_json(m: Matrix) -> list:
    return [[frac_str(c) for c in row] for row in m]


def matrix_from_json(data) -> Matrix:
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise SchemaError("matrix must be a JSON array of arrays")
    return matrix([[parse_frac(c) for c in row] for row in data])


def _require(data: dict, key: str):
    if key not in data:
        raise SchemaError(f"missing required field {key!r}")
    return data[key]


def scalar_product_from_json(data: dict) -> ScalarProduct:
    dim = _require(data, "dim")
    metric = matrix_from_json(_require(data, "metric"))
    if not isinstance(dim, int) or dim < 1:
        raise SchemaError("'dim' must be a positive integer")
    if len(metric) != dim:
        raise SchemaError(f"metric is {len(metric)}x{len(metric[0]) if metric else 0}, expected {dim}x{dim}")
    try:
        return ScalarProduct(metric)
    except CurvforgeError as exc:
        raise SchemaError(f"invalid metric: {exc}") from exc


# ---------------------------------------------------------------------------
# Curvature tensors
# ---------------------------------------------------------------------------


def tensor_to_json(r: CurvatureTensor) -> dict:
    return {
        "dim": r.space.dim,
        "metric": matrix_to_json(r.space.metric),
        "components": [
            [[[frac_str(x) for x in row] for row in plane] for plane in block]
            for block in r.components
        ],
    }


def tensor_from_json(data: dict) -> CurvatureTensor:
    """Dense or sparse tensor input; components default to zero for the
    sparse form."""
    g = scalar_product_from_json(data)
    n = g.dim
    if "components" in data:
        comps = data["components"]
        try:
            parsed = [
                [[[parse_frac(x) for x in row] for row in plane] for plane in block]
                for block in comps
            ]
        except (TypeError, SchemaError) as exc:
            raise SchemaError(f"bad dense components: {exc}") from exc
        try:
            return from_components(g, parsed)
        except CurvforgeError as exc:
            raise SchemaError(str(exc)) from exc
    if "entries" in data:
        cells = [[[[Fraction(0)] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
        for entry in data["entries"]:
            if not isinstance(entry, dict):
                raise SchemaError("sparse entries must be objects")
            try:
                i, j, k, l = (entry[key] for key in ("i", "j", "k", "l"))
                value = parse_frac(entry["v"])
            except KeyError as exc:
                raise SchemaError(f"sparse entry missing field {exc}") from exc
            for idx in (i, j, k, l):
                if not isinstance(idx, int) or not 0 <= idx < n:
                    raise SchemaError(f"sparse index {idx!r} out of range for dim {n}")
            cells[i][j][k][l] = value
        return from_components(g, cells)
    raise SchemaError("tensor needs either 'components' or 'entries'")


# ---------------------------------------------------------------------------
# Clifford specs
# ---------------------------------------------------------------------------


def clifford_spec_from_json(data: dict) -> tuple[ScalarProduct, CliffordSpec]:
    g = scalar_product_from_json(data)
    mu = [parse_frac(c) for c in _require(data, "mu")]
    structures = []
    for s in _require(data, "structures"):
        kind = _require(s, "kind")
        if kind not in ("complex", "product"):
            raise SchemaError(f"unknown structure kind {kind!r}")
        structures.append((matrix_from_json(_require(s, "matrix")), kind))
    return g, CliffordSpec.of(mu, structures)


def clifford_spec_to_json(g: ScalarProduct, spec: CliffordSpec) -> dict:
    return {
        "dim": g.dim,
        "metric": matrix_to_json(g.metric),
        "mu": [frac_str(c) for c in spec.coefficients],
        "structures": [
            {"kind": kind, "matrix": matrix_to_json(m)} for m, kind in spec.structures
        ],
    }


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

FAMILY_KINDS = ("from_tensor", "clifford", "eigen_substitution", "table", "epsilon_id")


def family_from_json(data: dict) -> JacobiFamily:
    """Build a family from its JSON descriptor.

    Tensors embedded in descriptors are symmetry-verified on load, so a
    corrupted component array surfaces here rather than deep inside an
    evaluation.
    """
    kind = _require(data, "kind")
    if kind == "from_tensor":
        r = _verified_tensor(_require(data, "tensor"))
        domain = data.get("domain", "nonnull")
        if domain not in ("nonnull", "total"):
            raise SchemaError(f"unknown family domain {domain!r}")
        return jacobi_family_of(r, domain=domain)
    if kind == "clifford":
        g, spec = clifford_spec_from_json(data)
        try:
            r = build_clifford(g, spec)
        except CurvforgeError as exc:
            raise SchemaError(f"invalid Clifford spec: {exc}") from exc
        fam = jacobi_family_of(r, domain=data.get("domain", "nonnull"))
        return JacobiFamily(fam.space, fam.domain, fam.evaluate, "clifford")
    if kind == "eigen_substitution":
        r = _verified_tensor(_require(data, "tensor"))
        mu = [parse_frac(c) for c in _require(data, "mu")]
        samples = data.get("samples", 32)
        seed = data.get("seed", 0)
        return eigen_substitute(r, mu, samples=samples, seed=seed)
    if kind == "table":
        g = scalar_product_from_json(data)
        entries = []
        for entry in _require(data, "entries"):
            entries.append(
                (vector_from_json(_require(entry, "vector")), matrix_from_json(_require(entry, "matrix")))
            )
        return table_family(g, entries)
    if kind == "epsilon_id":
        return epsilon_identity_family(scalar_product_from_json(data))
    raise SchemaError(f"unknown family kind {kind!r}; expected one of {FAMILY_KINDS}")


def _verified_tensor(data: dict) -> CurvatureTensor:
    from .tensors import verify_symmetries

    r = tensor_from_json(data)
    report = verify_symmetries(r)
    if not report.ok:
        raise SchemaError(
            "embedded tensor fails symmetry verification: "
            + ", ".join(f"{name} ({count} violations)" for name, count in report.violation_counts)
        )
    return r


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def witness_to_json(w: Witness) -> dict:
    return {
        "identity": w.identity,
        "vectors": [vector_to_json(v) for v in w.vectors],
        "scalar": frac_str(w.scalar) if w.scalar is not None else None,
        "residual": encode_value(w.residual),
    }


def axiom_report_to_json(report: AxiomReport) -> dict:
    return {
        "self_adjoint_ok": report.self_adjoint_ok,
        "compatible_ok": report.compatible_ok,
        "annihilation_ok": report.annihilation_ok,
        "homogeneity_ok": report.homogeneity_ok,
        "cocycle_ok": report.cocycle_ok,
        "passed": report.passed,
        "witnesses": [witness_to_json(w) for w in report.witnesses],
        "violation_counts": {name: count for name, count in report.violation_counts},
        "samples_used": report.samples_used,
        "seed": report.seed,
    }


def symmetry_report_to_json(report: SymmetryReport) -> dict:
    return {
        "ok": report.ok,
        "violations": [
            {"identity": v.identity, "indices": list(v.indices), "residual": frac_str(v.residual)}
            for v in report.violations
        ],
        "violation_counts": {name: count for name, count in report.violation_counts},
    }


def verdict_to_json(verdict: OssermanVerdict) -> dict:
    return {
        "is_osserman": verdict.is_osserman,
        "reference_char_poly": [frac_str(c) for c in verdict.reference_char_poly],
        "k_root": verdict.k_root,
        "diagonalizable": verdict.diagonalizable,
        "samples_used": verdict.samples_used,
        "seed": verdict.seed,
        "counterexample": None
        if verdict.counterexample is None
        else {
            "vector": vector_to_json(verdict.counterexample[0]),
            "char_poly": [frac_str(c) for c in verdict.counterexample[1]],
        },
    }


def canonical_json_bytes(obj) -> bytes:
    """Deterministic serialization: sorted keys, fixed separators, one
    trailing newline.  Identical objects give identical bytes."""
    return (json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n").encode()


def load_json_file(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}") from exc
    except OSError as exc:
        raise SchemaError(f"{path}: {exc}") from exc
