import json

import pytest

from qbudget.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_bounds_csv(capsys):
    code, out = run_cli(capsys, "bounds", "10", "20")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,k_lower,k_upper,total_cnot_lower"
    assert lines[1].startswith("10,102,491,")
    assert lines[2].startswith("20,52428,502443,")


def test_bounds_json_exact_decimal_strings(capsys):
    code, out = run_cli(capsys, "bounds", "2", "--format", "json")
    payload = json.loads(out)
    assert payload["schema"] == "1"
    assert payload["bounds"][0] == {
        "n": 2,
        "k_lower": "1",
        "k_upper": "2",
        "total_cnot_lower": "1",
    }


def test_bounds_invalid_n(capsys):
    code, _ = run_cli(capsys, "bounds", "0")
    assert code == 2


def test_ghz_reports_fidelity(capsys):
    code, out = run_cli(capsys, "ghz", "20", "--k", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload["fidelity_vs_ghz"] >= 1 - 1e-10
    assert payload["suppressions"] == []


def test_ghz_zero_budget(capsys):
    code, out = run_cli(capsys, "ghz", "3", "--k", "0")
    payload = json.loads(out)
    assert code == 1
    assert len(payload["suppressions"]) == 2


def test_ghz_single_qubit(capsys):
    code, out = run_cli(capsys, "ghz", "1", "--k", "2")
    payload = json.loads(out)
    assert code == 0
    assert abs(payload["fidelity_vs_ghz"] - 1.0) < 1e-12


def test_thermalize_csv_trace(capsys):
    code, out = run_cli(
        capsys, "thermalize", "--p", "0.5", "--cos-phi", "0.99", "--m", "20",
        "--k", "unlimited",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "m,D_m,bound_m"
    assert len(lines) == 23  # header + 21 rows + pass comment
    assert lines[-1] == "# passed=true"


def test_thermalize_m_zero_single_row(capsys):
    code, out = run_cli(
        capsys, "thermalize", "--p", "0.5", "--cos-phi", "0.9", "--m", "0",
        "--k", "unlimited",
    )
    assert code == 0
    assert len(out.strip().splitlines()) == 3


def test_thermalize_rejects_cos_phi_one(capsys):
    code, _ = run_cli(
        capsys, "thermalize", "--p", "0.5", "--cos-phi", "1.0", "--m", "5",
        "--k", "unlimited",
    )
    assert code == 2


def test_cluster_pass_and_fail(capsys):
    code, out = run_cli(capsys, "cluster", "--rows", "1", "--cols", "1", "--k", "3")
    assert code == 0
    assert json.loads(out)["all_pass"] is True

    code, out = run_cli(capsys, "cluster", "--rows", "1", "--cols", "1", "--k", "1")
    payload = json.loads(out)
    assert code == 1
    assert payload["failing_vertices"]


def test_verify_oracle(capsys):
    code, out = run_cli(capsys, "verify", "oracle", "--seed", "7")
    payload = json.loads(out)
    assert code == 0
    assert payload["passed"] is True
    assert set(payload["policies"]) == {"either", "both"}


def test_verify_cluster_exit_codes(capsys):
    code, out = run_cli(capsys, "verify", "cluster", "--k", "3")
    assert code == 0
    code, out = run_cli(capsys, "verify", "cluster", "--k", "1")
    payload = json.loads(out)
    assert code == 1
    assert any(p["failing_vertices"] for p in payload["patches"].values())


def test_verify_reversibility(capsys):
    code, out = run_cli(capsys, "verify", "reversibility", "--seed", "3", "--k", "8")
    assert code == 0
    assert json.loads(out)["violations"] == []


def test_revcheck(capsys):
    code, out = run_cli(capsys, "revcheck", "--n", "3", "--trials", "20", "--k", "8")
    payload = json.loads(out)
    assert code == 0
    assert payload["passed"] is True
    assert len(payload["records"]) == 20


@pytest.mark.parametrize(
    "argv",
    [
        ("bounds", "10", "20"),
        ("ghz", "5", "--k", "2", "--seed", "42"),
        ("thermalize", "--p", "0.3", "--cos-phi", "0.9", "--m", "15", "--k", "9"),
        ("cluster", "--rows", "1", "--cols", "1", "--k", "3"),
        ("verify", "oracle", "--seed", "11"),
    ],
)
def test_byte_identical_reruns(capsys, argv):
    _, out1 = run_cli(capsys, *argv)
    _, out2 = run_cli(capsys, *argv)
    assert out1.encode() == out2.encode()


def test_output_to_file(tmp_path, capsys):
    path = tmp_path / "bounds.csv"
    code, _ = run_cli(capsys, "bounds", "10", "--out", str(path))
    assert code == 0
    assert path.read_text().startswith("n,k_lower")
