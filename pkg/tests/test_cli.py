"""CLI subcommands: exit codes, reports, and determinism."""

import json
from fractions import Fraction as F

import pytest

import curvforge as cf
from curvforge.cli import main
from curvforge.serialize import canonical_json_bytes, tensor_to_json


def write_json(path, obj):
    path.write_bytes(canonical_json_bytes(obj))
    return str(path)


@pytest.fixture
def r1_dim3(tmp_path):
    r = cf.constant_curvature(cf.ScalarProduct.diagonal([1, 1, 1]))
    return write_json(tmp_path / "r1.json", tensor_to_json(r))


@pytest.fixture
def broken_tensor(tmp_path):
    r = cf.constant_curvature(cf.ScalarProduct.diagonal([1, 1]))
    data = tensor_to_json(r)
    data["components"][0][1][0][1] = "7"
    return write_json(tmp_path / "broken.json", data)


def run(capsysbinary, *argv):
    code = main(list(argv))
    return code, json.loads(capsysbinary.readouterr().out)


class TestVerifyTensor:
    def test_pass(self, capsysbinary, r1_dim3):
        code, report = run(capsysbinary, "verify-tensor", r1_dim3)
        assert code == 0
        assert report["status"] == "ok"
        assert report["symmetries"]["ok"] is True

    def test_violation(self, capsysbinary, broken_tensor):
        code, report = run(capsysbinary, "verify-tensor", broken_tensor)
        assert code == 1
        assert report["symmetries"]["ok"] is False
        assert report["symmetries"]["violations"]


class TestJacobi:
    def test_matches_library(self, capsysbinary, r1_dim3):
        code, report = run(capsysbinary, "jacobi", r1_dim3, "--vector", '["1","0","0"]')
        assert code == 0
        assert report["jacobi_matrix"] == [["0", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]

    def test_malformed_vector(self, capsysbinary, r1_dim3):
        code, report = run(capsysbinary, "jacobi", r1_dim3, "--vector", "[1,")
        assert code == 2
        assert report["status"] == "error"


class TestReconstruct:
    def test_zero_family(self, capsysbinary, tmp_path):
        g = cf.ScalarProduct.diagonal([1, 1])
        path = write_json(
            tmp_path / "fam.json",
            {"kind": "from_tensor", "tensor": tensor_to_json(cf.zero_tensor(g))},
        )
        code, report = run(capsysbinary, "reconstruct", path)
        assert code == 0
        assert report["totalized"] is True
        comps = report["tensor"]["components"]
        assert all(x == "0" for b in comps for p in b for row in p for x in row)

    def test_round_trip_through_files(self, capsysbinary, tmp_path):
        r = cf.random_act(cf.GeneratorConfig(dim=3, signature=(1, 2), seed=14))
        path = write_json(
            tmp_path / "fam.json", {"kind": "from_tensor", "tensor": tensor_to_json(r)}
        )
        code, report = run(capsysbinary, "reconstruct", path, "--samples", "8")
        assert code == 0
        assert report["tensor"]["components"] == tensor_to_json(r)["components"]

    def test_epsilon_id_rejected(self, capsysbinary, tmp_path):
        path = write_json(
            tmp_path / "eps.json",
            {"kind": "epsilon_id", "dim": 3, "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]},
        )
        code, report = run(capsysbinary, "reconstruct", path)
        assert code == 1
        assert report["status"] == "rejected"
        assert report["hypothesis"] == "annihilation"

    def test_table_family_rejected_for_reconstruction(self, capsysbinary, tmp_path):
        path = write_json(
            tmp_path / "table.json",
            {
                "kind": "table",
                "dim": 2,
                "metric": [["1", "0"], ["0", "1"]],
                "entries": [{"vector": ["1", "0"], "matrix": [["0", "0"], ["0", "1"]]}],
            },
        )
        code, report = run(capsysbinary, "reconstruct", path)
        assert code == 2


class TestOssermanCheck:
    def test_constant_curvature(self, capsysbinary, r1_dim3):
        code, report = run(capsysbinary, "osserman-check", r1_dim3, "--samples", "8")
        assert code == 0
        assert report["verdict"]["is_osserman"] is True
        assert report["verdict"]["k_root"] == 1

    def test_non_osserman(self, capsysbinary, tmp_path):
        g = cf.ScalarProduct.diagonal([1, 1, 1])
        r = cf.tensor_from_symmetric_form(g, cf.matrix([[1, 0, 0], [0, 2, 0], [0, 0, 3]]))
        path = write_json(tmp_path / "bad.json", tensor_to_json(r))
        code, report = run(capsysbinary, "osserman-check", path, "--samples", "8")
        assert code == 1
        assert report["verdict"]["counterexample"] is not None


class TestCliffordBuild:
    def test_build(self, capsysbinary, tmp_path):
        j = cf.quaternion_structures()[0]
        path = write_json(
            tmp_path / "spec.json",
            {
                "dim": 4,
                "metric": [["1" if a == b else "0" for b in range(4)] for a in range(4)],
                "mu": ["1", "1"],
                "structures": [{"kind": "complex", "matrix": [[str(int(c)) for c in row] for row in j]}],
            },
        )
        code, report = run(capsysbinary, "clifford-build", path)
        assert code == 0
        g = cf.ScalarProduct.diagonal([1, 1, 1, 1])
        expected = cf.build_clifford(g, cf.CliffordSpec.of([1, 1], [(j, "complex")]))
        assert report["tensor"]["components"] == tensor_to_json(expected)["components"]

    def test_invalid_spec_is_usage_error(self, capsysbinary, tmp_path):
        path = write_json(
            tmp_path / "spec.json",
            {
                "dim": 2,
                "metric": [["1", "0"], ["0", "1"]],
                "mu": ["1", "1"],
                "structures": [{"kind": "product", "matrix": [["0", "1"], ["1", "0"]]}],
            },
        )
        code, report = run(capsysbinary, "clifford-build", path)
        assert code == 2
        assert "neutral" in report["message"]


class TestSubstitute:
    def test_identity_substitution(self, capsysbinary, tmp_path):
        g = cf.ScalarProduct.diagonal([1, 1, 1, 1])
        j = cf.quaternion_structures()[0]
        r = cf.build_clifford(g, cf.CliffordSpec.of([1, 1], [(j, "complex")]))
        path = write_json(tmp_path / "cl.json", tensor_to_json(r))
        code, report = run(capsysbinary, "substitute", path, "--mu", '["-2","1"]', "--samples", "8")
        assert code == 0
        assert report["tensor"]["components"] == tensor_to_json(r)["components"]
        assert report["verdict"]["is_osserman"] is True

    def test_wrong_count_is_usage_error(self, capsysbinary, r1_dim3):
        code, report = run(capsysbinary, "substitute", r1_dim3, "--mu", '["1","2"]', "--samples", "8")
        assert code == 2


class TestProportionality:
    def test_clifford(self, capsysbinary, tmp_path):
        g = cf.ScalarProduct.diagonal([1, 1, 1, 1])
        j = cf.quaternion_structures()[0]
        r = cf.build_clifford(g, cf.CliffordSpec.of([1, 1], [(j, "complex")]))
        path = write_json(tmp_path / "cl.json", tensor_to_json(r))
        code, report = run(capsysbinary, "proportionality-check", path, "--samples", "6")
        assert code == 0
        assert report["pairs_checked"] == 6


class TestDemoCounterexample:
    def test_rejection_with_basis_witness(self, capsysbinary):
        code, report = run(capsysbinary, "demo-counterexample", "--dim", "3", "--samples", "12")
        assert code == 1
        assert report["hypothesis"] == "annihilation"
        assert report["witnesses"][0]["vectors"] == [["1", "0", "0"]]
        assert report["axioms"]["compatible_ok"] is True
        assert report["axioms"]["self_adjoint_ok"] is True
        assert report["axioms"]["annihilation_ok"] is False

    def test_indefinite_signature(self, capsysbinary):
        code, report = run(capsysbinary, "demo-counterexample", "--signature", "1,2", "--samples", "12")
        assert code == 1
        assert report["hypothesis"] == "annihilation"


class TestContract:
    def test_malformed_json_exit_2_with_position(self, capsysbinary, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 2,')
        code, report = run(capsysbinary, "verify-tensor", str(path))
        assert code == 2
        assert "line" in report["message"] and "column" in report["message"]

    def test_missing_file_exit_2(self, capsysbinary, tmp_path):
        code, report = run(capsysbinary, "verify-tensor", str(tmp_path / "nope.json"))
        assert code == 2

    def test_bad_tol_rejected(self, capsysbinary, r1_dim3):
        code, report = run(capsysbinary, "verify-tensor", r1_dim3, "--tol", "-1")
        assert code == 2

    def test_thread_env_validated(self, capsysbinary, r1_dim3, monkeypatch):
        monkeypatch.setenv("CURVFORGE_THREADS", "zero")
        code, report = run(capsysbinary, "verify-tensor", r1_dim3)
        assert code == 2
        monkeypatch.setenv("CURVFORGE_THREADS", "4")
        code, report = run(capsysbinary, "verify-tensor", r1_dim3)
        assert code == 0
        assert report["config"]["threads"] == 4

    def test_byte_identical_reports(self, r1_dim3, capsysbinary):
        main(["osserman-check", r1_dim3, "--samples", "8", "--seed", "5"])
        first = capsysbinary.readouterr().out
        main(["osserman-check", r1_dim3, "--samples", "8", "--seed", "5"])
        second = capsysbinary.readouterr().out
        assert first == second

    def test_output_file_matches_stdout(self, capsysbinary, r1_dim3, tmp_path):
        out = tmp_path / "report.json"
        main(["verify-tensor", r1_dim3, "--output", str(out)])
        stdout = capsysbinary.readouterr().out
        assert out.read_bytes() == stdout
