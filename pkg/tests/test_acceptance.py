"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the one-line
verdict per criterion.  Every check here is exact (bit-equality of
rationals) unless explicitly stated otherwise.
"""

import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

import curvforge as cf
from curvforge.core import mat_vec
from curvforge.serialize import canonical_json_bytes, tensor_to_json


@contextmanager
def criterion(number, description):
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE {number} ({description}): FAIL")
        raise
    else:
        print(f"\nACCEPTANCE {number} ({description}): PASS")


def diag(*entries):
    return cf.ScalarProduct.diagonal(entries)


def clifford_dim4():
    g = diag(1, 1, 1, 1)
    j = cf.quaternion_structures()[0]
    return cf.build_clifford(g, cf.CliffordSpec.of([1, 1], [(j, "complex")]))


def clifford_neutral():
    g = diag(1, 1, -1, -1)
    j = cf.matrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    return cf.build_clifford(g, cf.CliffordSpec.of([1, 1], [(j, "complex")]))


def expand_reduced_spectrum(mus, mults):
    """lambda * prod (lambda - mu_i)^nu_i, expanded to exact coefficients."""
    poly = (F(1),)
    for mu, nu in zip(mus, mults):
        for _ in range(nu):
            poly = tuple(
                a - mu * b for a, b in zip(poly + (F(0),), (F(0),) + poly)
            )
    return poly + (F(0),)


def test_criterion_1_roundtrip_uniqueness():
    counts = {
        (3, (3, 0)): 16, (3, (1, 2)): 16,
        (4, (4, 0)): 13, (4, (1, 3)): 13, (4, (2, 2)): 14,
        (5, (5, 0)): 8, (5, (1, 4)): 8,
        (6, (6, 0)): 6, (6, (1, 5)): 6,
    }
    assert sum(counts.values()) == 100
    with criterion(1, "round-trip uniqueness on 100 random tensors, dims 3-6"):
        start = time.monotonic()
        total = 0
        for (dim, signature), how_many in counts.items():
            for seed in range(how_many):
                cfg = cf.GeneratorConfig(
                    dim=dim, signature=signature, seed=1000 * dim + seed,
                    num_forms=2, coefficient_bound=3,
                )
                r = cf.random_act(cfg)
                rec = cf.reconstruct(cf.totalize(cf.jacobi_family_of(r)), samples=6, seed=0)
                assert rec.components == r.components, (dim, signature, seed)
                total += 1
        elapsed = time.monotonic() - start
        assert total == 100
        assert elapsed < 60, f"round-trip suite took {elapsed:.1f}s"
        print(f"\n  100 exact round trips in {elapsed:.1f}s")


def test_criterion_2_existence_direction():
    cases = [
        ("random (1,2)", cf.jacobi_family_of(cf.random_act(cf.GeneratorConfig(3, (1, 2), seed=51)))),
        ("random (2,2)", cf.jacobi_family_of(cf.random_act(cf.GeneratorConfig(4, (2, 2), seed=52)))),
        ("clifford dim4", cf.jacobi_family_of(clifford_dim4())),
        ("substituted (2,2)", cf.eigen_substitute(clifford_neutral(), [F(2), F(-1)], samples=8, seed=0)),
    ]
    with criterion(2, "every suite-passing family reconstructs to its own Jacobi data"):
        for name, fam in cases:
            total = cf.totalize(fam)
            report = cf.run_axiom_suite(total, sample_budget=12, seed=0)
            assert report.passed, (name, report.witnesses)
            rec = cf.reconstruct(total, samples=8, seed=0)
            assert rec.verified, name
            g = rec.space
            rng = random.Random(7)
            samples = [cf.random_vector(rng, g.dim) for _ in range(50)]
            samples += cf.standard_basis(g.dim)
            nulls = []
            if g.signature[0] and g.signature[1]:
                while len(nulls) < 5:
                    n = cf.random_null_vector(g, rng)
                    assert n is not None
                    nulls.append(n)
            for x in samples + nulls:
                assert cf.jacobi_operator(rec, x) == total(x), (name, x)
            assert len(samples) + len(nulls) >= 50


def test_criterion_3_null_extension_well_defined():
    signatures = [(1, 2), (2, 1), (2, 2), (1, 3), (1, 4), (2, 3)]
    with criterion(3, "null extension independent of the auxiliary vector, K_N N = 0"):
        checked = 0
        for p, q in signatures:
            dim = p + q
            g = diag(*([1] * p + [-1] * q))
            r = cf.random_act(cf.GeneratorConfig(dim, (p, q), seed=60 + dim))
            fam = cf.jacobi_family_of(r)  # nonnull-only
            rng = random.Random(p * 10 + q)
            for _ in range(9):
                n = cf.random_null_vector(g, rng)
                assert n is not None
                candidates = cf.admissible_extension_vectors(g, n)
                x1, x2 = next(candidates), next(candidates)
                assert x1 != x2
                m1 = cf.null_extension_from(fam, n, x1)
                m2 = cf.null_extension_from(fam, n, x2)
                assert m1 == m2, (p, q, n)
                assert all(c == 0 for c in mat_vec(m1, n)), (p, q, n)
                checked += 1
        assert checked >= 50
        print(f"\n  {checked} null vectors checked across {len(signatures)} signatures")


def test_criterion_4_counterexample_rejection(tmp_path):
    with criterion(4, "eps_X*id passes compatibility, is rejected naming annihilation"):
        g = diag(1, 1, 1)
        fam = cf.epsilon_identity_family(g)
        report = cf.run_axiom_suite(fam, sample_budget=16, seed=0)
        assert report.self_adjoint_ok is True
        assert report.compatible_ok is True
        assert report.annihilation_ok is False
        with pytest.raises(cf.AxiomRejectionError) as err:
            cf.reconstruct(fam, samples=16, seed=0)
        assert err.value.hypothesis == "annihilation"
        proc = subprocess.run(
            [sys.executable, "-m", "curvforge.cli", "demo-counterexample", "--dim", "3"],
            capture_output=True,
        )
        assert proc.returncode == 1, proc.stderr.decode()
        assert b'"hypothesis": "annihilation"' in proc.stdout


def test_criterion_5_eigen_substitution_pipeline():
    with criterion(5, "eigenvalue substitution: identity reproduces, fresh spectrum lands"):
        for r, fresh in ((clifford_dim4(), (F(3), F(7))), (clifford_neutral(), (F(1, 2), F(-3)))):
            # original normalized reduced spectrum of both tensors: {-2, 1}
            identity_fam = cf.eigen_substitute(r, [F(-2), F(1)], samples=8, seed=0)
            back = cf.reconstruct(cf.totalize(identity_fam), samples=8, seed=0)
            assert back.components == r.components
            fam = cf.eigen_substitute(r, list(fresh), samples=8, seed=0)
            out = cf.reconstruct(cf.totalize(fam), samples=8, seed=0)
            verdict = cf.is_osserman(out, samples=32, seed=0)
            assert verdict.is_osserman
            assert verdict.samples_used == 32
            expected = expand_reduced_spectrum(fresh, (1, 2))
            assert verdict.reference_char_poly == expected
            dec = cf.spectral_decomposition(out, cf.vector([2, 0, 1, 0]))
            # slot i of the ascending original spectrum carried nu = (1, 2)
            assert dict(zip(dec.eigenvalues, dec.multiplicities)) == {fresh[0]: 1, fresh[1]: 2}


def test_criterion_6_identity_suite():
    families = [
        ("constant curvature (1,2)", cf.totalize(cf.jacobi_family_of(cf.constant_curvature(diag(1, -1, -1))))),
        ("random euclidean dim3", cf.totalize(cf.jacobi_family_of(cf.random_act(cf.GeneratorConfig(3, (3, 0), seed=71))))),
    ]
    with criterion(6, "homogeneity, interpolation, cocycle, and mu-equivalence on 200 tuples each"):
        for name, fam in families:
            g = fam.space
            rng = random.Random(17)
            homog = []
            interp = []
            cocyc = []
            while len(homog) < 200:
                t = F(rng.randint(-9, 9), rng.choice((1, 2, 3)))
                if t == 0:
                    continue
                homog.append((cf.random_vector(rng, g.dim), t))
                if t != 1:
                    interp.append((cf.random_vector(rng, g.dim), cf.random_vector(rng, g.dim), t))
                cocyc.append((cf.random_vector(rng, g.dim), cf.random_vector(rng, g.dim)))
            assert cf.check_homogeneity(fam, homog).homogeneity_ok is True, name
            ok, witnesses = cf.check_scaling_interpolation(fam, interp[:200])
            assert ok and len(interp) >= 190, name
            assert cf.check_cocycle(fam, cocyc[:200]).cocycle_ok is True, name
            quadruples = cf.random_quadruples(g, 200, seed=19)
            ok, mismatches = cf.verify_mu_equivalence(fam, quadruples)
            assert ok, (name, mismatches[:1])


def test_criterion_7_clifford_proportionality():
    with criterion(7, "random Clifford specs are proportional on sampled pairs, exactly"):
        specs = [(4, seed) for seed in range(6)] + [(6, seed) for seed in range(4)]
        assert len(specs) >= 10
        for dim, seed in specs:
            g = diag(*([1] * dim))
            spec = cf.random_clifford_spec(dim, seed=seed)
            r = cf.build_clifford(g, spec)
            rng = random.Random(100 * dim + seed)
            pairs = [
                (cf.random_nonnull_vector(g, rng), cf.random_nonnull_vector(g, rng))
                for _ in range(20)
            ]
            ok, witnesses = cf.check_proportionality(r, pairs, exact_only=True)
            assert ok, (dim, seed, witnesses[:1])


def test_criterion_8_cli_determinism(tmp_path):
    with criterion(8, "CLI reports are byte-identical across runs with one seed"):
        r1 = cf.constant_curvature(diag(1, 1, 1))
        tensor_path = tmp_path / "r1.json"
        tensor_path.write_bytes(canonical_json_bytes(tensor_to_json(r1)))
        fam_path = tmp_path / "fam.json"
        fam_path.write_bytes(
            canonical_json_bytes({"kind": "from_tensor", "tensor": tensor_to_json(r1)})
        )
        commands = [
            ["verify-tensor", str(tensor_path)],
            ["jacobi", str(tensor_path), "--vector", '["1","2","0"]'],
            ["osserman-check", str(tensor_path), "--samples", "8", "--seed", "5"],
            ["reconstruct", str(fam_path), "--samples", "8", "--seed", "3"],
            ["demo-counterexample", "--dim", "3", "--samples", "12", "--seed", "1"],
        ]
        for argv in commands:
            runs = [
                subprocess.run(
                    [sys.executable, "-m", "curvforge.cli", *argv], capture_output=True
                )
                for _ in range(2)
            ]
            assert runs[0].stdout == runs[1].stdout, argv
            assert runs[0].stdout.endswith(b"\n")
            assert runs[0].returncode == runs[1].returncode
