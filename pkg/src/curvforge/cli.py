"""Command-line surface: JSON in, deterministic JSON report out.

Exit codes: 0 when the command succeeded and the checked property holds,
1 when a property is violated (the report carries replayable witnesses),
2 for input or usage errors.  Identical inputs and seeds produce
byte-identical reports; every randomized check echoes its seed and
sample count so any witness can be replayed from the printed report.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (
    AxiomRejectionError,
    CurvforgeError,
    IrrationalSpectrumError,
    PreconditionError,
    SchemaError,
    StructuralError,
    ValidationError,
)
from .core import ScalarProduct
from .families import epsilon_identity_family, run_axiom_suite, totalize
from .osserman import check_proportionality, eigen_substitute, is_osserman, build_clifford
from .sampling import random_nonnull_vector
from .serialize import (
    axiom_report_to_json,
    canonical_json_bytes,
    clifford_spec_from_json,
    family_from_json,
    frac_str,
    load_json_file,
    parse_frac,
    symmetry_report_to_json,
    tensor_from_json,
    tensor_to_json,
    vector_from_json,
    vector_to_json,
    verdict_to_json,
    witness_to_json,
)
from .tensors import jacobi_operator, reconstruct, verify_symmetries

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _thread_cap() -> int:
    """Validated CURVFORGE_THREADS cap (operations are pure, so running
    on a single thread always respects it)."""
    raw = os.environ.get("CURVFORGE_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise SchemaError(f"CURVFORGE_THREADS must be a positive integer, got {raw!r}")
    if value < 1:
        raise SchemaError(f"CURVFORGE_THREADS must be a positive integer, got {raw!r}")
    return value


def _config_echo(args) -> dict:
    return {
        "samples": args.samples,
        "seed": args.seed,
        "tol": args.tol,
        "exact_only": args.exact_only,
        "allow_unsafe": args.allow_unsafe,
        "threads": _thread_cap(),
    }


def _parse_inline_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what}: malformed JSON at line {exc.lineno}, column {exc.colno}")


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (exit_code, report_body)
# ---------------------------------------------------------------------------


def _cmd_verify_tensor(args) -> tuple[int, dict]:
    r = tensor_from_json(load_json_file(args.tensor))
    report = verify_symmetries(r)
    code = EXIT_OK if report.ok else EXIT_VIOLATION
    return code, {"status": "ok" if report.ok else "violation", "symmetries": symmetry_report_to_json(report)}


def _cmd_jacobi(args) -> tuple[int, dict]:
    r = tensor_from_json(load_json_file(args.tensor))
    report = verify_symmetries(r)
    if not report.ok:
        return EXIT_VIOLATION, {
            "status": "violation",
            "symmetries": symmetry_report_to_json(report),
        }
    x = vector_from_json(_parse_inline_json(args.vector, "--vector"))
    j = jacobi_operator(r, x)
    return EXIT_OK, {
        "status": "ok",
        "vector": vector_to_json(x),
        "jacobi_matrix": [[frac_str(c) for c in row] for row in j],
    }


def _cmd_reconstruct(args) -> tuple[int, dict]:
    family = family_from_json(load_json_file(args.family))
    totalized = False
    if family.domain != "total":
        family = totalize(family)
        totalized = True
    try:
        r = reconstruct(
            family,
            enforce_axioms=not args.allow_unsafe,
            samples=args.samples,
            seed=args.seed,
        )
    except AxiomRejectionError as exc:
        return EXIT_VIOLATION, {
            "status": "rejected",
            "hypothesis": exc.hypothesis,
            "witnesses": [witness_to_json(w) for w in exc.witnesses],
            "axioms": axiom_report_to_json(exc.report) if exc.report else None,
        }
    return EXIT_OK, {
        "status": "ok",
        "totalized": totalized,
        "axioms_enforced": not args.allow_unsafe,
        "verified": r.verified,
        "tensor": tensor_to_json(r),
    }


def _cmd_osserman_check(args) -> tuple[int, dict]:
    r = tensor_from_json(load_json_file(args.tensor))
    report = verify_symmetries(r)
    if not report.ok:
        return EXIT_VIOLATION, {"status": "violation", "symmetries": symmetry_report_to_json(report)}
    verdict = is_osserman(r, samples=args.samples, seed=args.seed)
    code = EXIT_OK if verdict.is_osserman else EXIT_VIOLATION
    return code, {
        "status": "ok" if verdict.is_osserman else "violation",
        "verdict": verdict_to_json(verdict),
    }


def _cmd_clifford_build(args) -> tuple[int, dict]:
    g, spec = clifford_spec_from_json(load_json_file(args.spec))
    try:
        r = build_clifford(g, spec)
    except ValidationError as exc:
        raise SchemaError(f"invalid Clifford spec: {exc}") from exc
    return EXIT_OK, {"status": "ok", "tensor": tensor_to_json(r)}


def _cmd_substitute(args) -> tuple[int, dict]:
    r = tensor_from_json(load_json_file(args.tensor))
    report = verify_symmetries(r)
    if not report.ok:
        return EXIT_VIOLATION, {"status": "violation", "symmetries": symmetry_report_to_json(report)}
    mu = [parse_frac(c) for c in _parse_inline_json(args.mu, "--mu")]
    try:
        family = eigen_substitute(r, mu, samples=args.samples, seed=args.seed)
        out = reconstruct(totalize(family), samples=args.samples, seed=args.seed)
    except (StructuralError, IrrationalSpectrumError) as exc:
        return EXIT_VIOLATION, {"status": "rejected", "reason": str(exc)}
    verdict = is_osserman(out, samples=args.samples, seed=args.seed)
    return EXIT_OK, {
        "status": "ok",
        "replacement_eigenvalues": [frac_str(c) for c in mu],
        "verdict": verdict_to_json(verdict),
        "tensor": tensor_to_json(out),
    }


def _cmd_proportionality_check(args) -> tuple[int, dict]:
    import random

    r = tensor_from_json(load_json_file(args.tensor))
    report = verify_symmetries(r)
    if not report.ok:
        return EXIT_VIOLATION, {"status": "violation", "symmetries": symmetry_report_to_json(report)}
    rng = random.Random(args.seed)
    pairs = [
        (random_nonnull_vector(r.space, rng), random_nonnull_vector(r.space, rng))
        for _ in range(args.samples)
    ]
    try:
        ok, witnesses = check_proportionality(r, pairs, tol=args.tol, exact_only=args.exact_only)
    except StructuralError as exc:
        return EXIT_VIOLATION, {"status": "violation", "reason": str(exc)}
    body = {
        "status": "ok" if ok else "violation",
        "pairs_checked": len(pairs),
        "witnesses": [
            {
                "x": vector_to_json(w[0]),
                "y": vector_to_json(w[1]),
                "detail": [str(part) for part in w[2:]],
            }
            for w in witnesses
        ],
    }
    return (EXIT_OK if ok else EXIT_VIOLATION), body


def _cmd_demo_counterexample(args) -> tuple[int, dict]:
    if args.signature:
        try:
            p, q = (int(part) for part in args.signature.split(","))
        except ValueError:
            raise SchemaError(f"--signature must look like 'p,q', got {args.signature!r}")
        if p < 0 or q < 0 or p + q < 2:
            raise SchemaError("--signature needs p + q >= 2")
    else:
        p, q = args.dim, 0
    g = ScalarProduct.diagonal([1] * p + [-1] * q)
    family = epsilon_identity_family(g)
    suite = run_axiom_suite(family, sample_budget=args.samples, seed=args.seed)
    try:
        reconstruct(family, enforce_axioms=True, samples=args.samples, seed=args.seed)
    except AxiomRejectionError as exc:
        return EXIT_VIOLATION, {
            "status": "rejected",
            "family": "eps_X * id (compatible, self-adjoint, but K_X X = eps_X X != 0)",
            "hypothesis": exc.hypothesis,
            "witnesses": [witness_to_json(w) for w in exc.witnesses],
            "axioms": axiom_report_to_json(suite),
        }
    return EXIT_OK, {
        "status": "unexpected",
        "note": "the counterexample family was not rejected; this is a bug",
    }


HANDLERS = {
    "verify-tensor": _cmd_verify_tensor,
    "jacobi": _cmd_jacobi,
    "reconstruct": _cmd_reconstruct,
    "osserman-check": _cmd_osserman_check,
    "clifford-build": _cmd_clifford_build,
    "substitute": _cmd_substitute,
    "proportionality-check": _cmd_proportionality_check,
    "demo-counterexample": _cmd_demo_counterexample,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvforge",
        description="Exact verification and reconstruction of algebraic curvature tensors from Jacobi-operator data.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--samples", type=int, default=32, help="sample budget for randomized checks")
    common.add_argument("--seed", type=int, default=0, help="PRNG seed; reports are byte-identical per seed")
    common.add_argument("--tol", type=float, default=1e-9, help="tolerance for float-mode spectral checks")
    common.add_argument("--exact-only", action="store_true", dest="exact_only", help="refuse float fallbacks")
    common.add_argument(
        "--allow-unsafe",
        action="store_true",
        dest="allow_unsafe",
        help="skip the axiom gate in reconstruction (unsafe; for the counterexample demo)",
    )
    common.add_argument("--output", help="also write the report to this path")

    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-tensor", parents=[common], help="check the curvature symmetry identities")
    s.add_argument("tensor", help="tensor JSON file")

    s = sub.add_parser("jacobi", parents=[common], help="Jacobi operator of a tensor at a vector")
    s.add_argument("tensor", help="tensor JSON file")
    s.add_argument("--vector", required=True, help='vector as a JSON array, e.g. \'["1","0","0"]\'')

    s = sub.add_parser("reconstruct", parents=[common], help="curvature tensor from a family descriptor")
    s.add_argument("family", help="family JSON file")

    s = sub.add_parser("osserman-check", parents=[common], help="sampled spectrum-independence certificate")
    s.add_argument("tensor", help="tensor JSON file")

    s = sub.add_parser("clifford-build", parents=[common], help="build a tensor from a Clifford-type spec")
    s.add_argument("spec", help="spec JSON file")

    s = sub.add_parser("substitute", parents=[common], help="eigenvalue substitution pipeline")
    s.add_argument("tensor", help="tensor JSON file")
    s.add_argument("--mu", required=True, help='replacement eigenvalues as a JSON array, e.g. \'["3","7"]\'')

    s = sub.add_parser("proportionality-check", parents=[common], help="eigencomponent proportionality on sampled pairs")
    s.add_argument("tensor", help="tensor JSON file")

    s = sub.add_parser("demo-counterexample", parents=[common], help="show the rejection of eps_X * id")
    s.add_argument("--dim", type=int, default=3, help="dimension for the default definite metric")
    s.add_argument("--signature", help="metric signature as 'p,q' (overrides --dim)")

    return parser


def _emit(report: dict, output_path: str | None) -> None:
    payload = canonical_json_bytes(report)
    sys.stdout.buffer.write(payload)
    sys.stdout.buffer.flush()
    if output_path:
        with open(output_path, "wb") as fh:
            fh.write(payload)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {"command": args.command}
    try:
        report["config"] = _config_echo(args)
        if args.tol <= 0:
            raise SchemaError("--tol must be positive")
        if args.samples < 1:
            raise SchemaError("--samples must be >= 1")
        code, body = HANDLERS[args.command](args)
        report.update(body)
    except SchemaError as exc:
        report.update({"status": "error", "message": str(exc)})
        code = EXIT_USAGE
    except PreconditionError as exc:
        report.update({"status": "error", "message": str(exc)})
        code = EXIT_USAGE
    except CurvforgeError as exc:
        report.update({"status": "violation", "message": str(exc)})
        code = EXIT_VIOLATION
    _emit(report, args.output)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
