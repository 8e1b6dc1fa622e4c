import json

import numpy as np
import pytest

from pseudoherm.cli import (
    EXIT_INPUT,
    EXIT_NUMERIC,
    EXIT_OK,
    load_matrix,
    main,
    matrix_from_json,
    save_matrix,
)
from pseudoherm.errors import ParseError
from pseudoherm.models import pt2x2, random_quasi

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)


@pytest.fixture
def matrix_file(tmp_path):
    def write(M, name="matrix.json"):
        path = tmp_path / name
        save_matrix(M, path)
        return str(path)
    return write


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


# ---------------------------------------------------------------------------
# matrix file format

def test_matrix_round_trip_bit_identical(tmp_path):
    rng = np.random.default_rng(0)
    M = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    path = tmp_path / "m.json"
    save_matrix(M, path)
    first = path.read_text()
    back, _ = load_matrix(path)
    save_matrix(back, path)
    assert path.read_text() == first          # decimal serialization is stable
    assert np.array_equal(back, M)


def test_matrix_from_json_validation():
    with pytest.raises(ParseError):
        matrix_from_json([1, 2, 3])
    with pytest.raises(ParseError):
        matrix_from_json({"dim": 2, "re": [[1, 0], [0, 1]]})   # im missing
    with pytest.raises(ParseError):
        matrix_from_json({"dim": 3, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]})


# ---------------------------------------------------------------------------
# classify

def test_classify_hermitian(matrix_file, capsys):
    code, report = run_cli(capsys, ["classify", matrix_file(SIGMA1)])
    assert code == EXIT_OK
    assert report["schema"] == 1
    assert report["classification"] == "Hermitian"
    assert len(report["spectrum"]) == 2


def test_classify_emit_metric_for_complex_pair(matrix_file, capsys):
    code, report = run_cli(
        capsys, ["classify", matrix_file(pt2x2(1, np.pi / 2, 0.5)), "--emit-metric"])
    assert code == EXIT_OK
    assert report["classification"] == "PseudoHermitianOnly"
    assert report["signature"] == [1, 1]
    assert report["residuals"]["intertwining"] <= 1e-8
    assert report["metric"]["dim"] == 2


def test_classify_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["classify", str(path)]) == EXIT_INPUT
    assert "error" in capsys.readouterr().err


def test_classify_missing_file(capsys):
    assert main(["classify", "/nonexistent/nowhere.json"]) == EXIT_INPUT


def test_classify_dimension_mismatch(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dim": 3, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}))
    assert main(["classify", str(path)]) == EXIT_INPUT


def test_classify_report_is_reproducible(matrix_file, capsys):
    H, _, _ = random_quasi(4, seed=12)
    path = matrix_file(H)
    code1 = main(["classify", path, "--emit-metric"])
    out1 = capsys.readouterr().out
    code2 = main(["classify", path, "--emit-metric"])
    out2 = capsys.readouterr().out
    assert code1 == code2 == EXIT_OK
    assert out1 == out2


# ---------------------------------------------------------------------------
# metric / hermitize / symmetry

def test_metric_command_quasi(matrix_file, capsys):
    H, _, _ = random_quasi(4, seed=3)
    code, report = run_cli(capsys, ["metric", matrix_file(H)])
    assert code == EXIT_OK
    assert report["signature"] == [4, 0]
    assert report["residuals"]["intertwining"] <= 1e-8


def test_metric_command_refuses_unpaired(matrix_file, capsys):
    M = np.array([[1, 1], [0, 2j]], dtype=complex)
    code = main(["metric", matrix_file(M)])
    capsys.readouterr()
    assert code == EXIT_NUMERIC


def test_hermitize_command(matrix_file, capsys):
    code, report = run_cli(capsys, ["hermitize", matrix_file(pt2x2(1, np.pi / 6, 1))])
    assert code == EXIT_OK
    assert report["residuals"]["hermiticity_of_h"] <= 1e-8
    h = matrix_from_json(report["hermitized"])
    lam = np.sort(np.linalg.eigvalsh(0.5 * (h + h.conj().T)))
    assert np.allclose(lam, [0.0, np.sqrt(3)], atol=1e-9)


def test_hermitize_command_refuses_complex_pair(matrix_file, capsys):
    code = main(["hermitize", matrix_file(pt2x2(1, np.pi / 2, 0.5))])
    capsys.readouterr()
    assert code == EXIT_NUMERIC


def test_symmetry_command(matrix_file, capsys):
    code, report = run_cli(capsys, ["symmetry", matrix_file(pt2x2(1, np.pi / 2, 0.5))])
    assert code == EXIT_OK
    assert report["residuals"]["antilinear_commutation"] <= 1e-8


def test_symmetry_command_refuses_defective(matrix_file, capsys):
    J = np.array([[0, 1], [0, 0]], dtype=complex)
    code = main(["symmetry", matrix_file(J)])
    capsys.readouterr()
    assert code == EXIT_NUMERIC


# ---------------------------------------------------------------------------
# kg

def test_kg_command_small(capsys):
    code, report = run_cli(capsys, ["kg", "--n", "16", "--samples", "10", "--t-final", "10"])
    assert code == EXIT_OK
    res = report["residuals"]
    assert res["sigma3_intertwining"] <= 1e-12
    assert res["pd_conservation_drift"] <= 1e-10
    assert res["kg_conservation_drift"] <= 1e-10
    assert res["pd_positivity_min"] > 0
    assert res["pd_mode_sum_deviation"] <= 1e-10
    assert report["sector_dims"] == {"indefinite_metric": 16, "pseudo_hermitian": 32}


def test_kg_command_rejects_massless(capsys):
    assert main(["kg", "--n", "8", "--mass", "0"]) == EXIT_INPUT
    capsys.readouterr()


# ---------------------------------------------------------------------------
# verify

def test_verify_quasi_ensemble(capsys):
    code, report = run_cli(
        capsys, ["verify", "--ensemble", "quasi", "--count", "20", "--dims", "2-5"])
    assert code == EXIT_OK
    suite = report["suite"]
    assert suite["passed"] and suite["failures"] == 0
    assert suite["leg_counts"]["positive_ok"] == 20


def test_verify_pseudo_nonquasi_ensemble(capsys):
    code, report = run_cli(
        capsys, ["verify", "--ensemble", "pseudo_nonquasi", "--count", "15", "--dims", "3,4,5"])
    assert code == EXIT_OK
    suite = report["suite"]
    assert suite["leg_counts"]["pair_ok"] == 15       # spectra conjugate-paired
    assert suite["leg_counts"]["positive_ok"] == 0    # uniformly refused


def test_verify_defective_ensemble_skips(capsys):
    code, report = run_cli(
        capsys, ["verify", "--ensemble", "defective", "--count", "8", "--dims", "2-4"])
    assert code == EXIT_OK
    assert report["suite"]["skipped"] == 8


def test_verify_reports_failure_exit_code(capsys, monkeypatch):
    # force a failed suite to confirm the suite-failure exit path
    import pseudoherm.suites as suites

    def failing(specs):
        out = suites.run_equivalence_suite(specs)
        return {**out, "passed": False, "failures": 1}

    monkeypatch.setattr("pseudoherm.cli.run_equivalence_suite", failing)
    code = main(["verify", "--ensemble", "quasi", "--count", "2", "--dims", "2"])
    capsys.readouterr()
    assert code == 1


def test_dims_parsing(capsys):
    code, report = run_cli(capsys, ["verify", "--ensemble", "quasi",
                                    "--count", "4", "--dims", "3"])
    assert code == EXIT_OK
