import csv
import io
import json

import pytest

from galois_quantum_toolkit.cli import CommandRequest, OutputFormat, execute, schema_text
from galois_quantum_toolkit.cli.__main__ import main


@pytest.fixture(autouse=True)
def no_mirror(monkeypatch):
    monkeypatch.delenv("GQT_OUTPUT_DIR", raising=False)


def run_json(capsys, *argv):
    assert main([*argv, "--format", "json"]) == 0
    return json.loads(capsys.readouterr().out)


def test_numtheory_profile(capsys):
    report = run_json(capsys, "numtheory", "profile", "--n", "12")
    assert report == {
        "n": 12,
        "mobius": 0,
        "totient": 4,
        "mangoldt": 0.0,
        "is_prime_power": False,
    }


def test_field_log(capsys):
    report = run_json(capsys, "field", "log", "--q", "9", "--a", "3")
    assert report["value"] == 1


def test_code_distance(capsys):
    report = run_json(capsys, "code", "distance", "--n", "7", "--p", "2", "--g", "1,1,0,1")
    assert report["d_min"] == 3
    assert report["singleton_gap"] == 1
    assert report["weight_distribution"] == [1, 0, 0, 7, 7, 0, 0, 1]


def test_code_extension(capsys):
    report = run_json(capsys, "code", "extension", "--n", "7", "--p", "2", "--g", "1,1,0,1")
    assert report["passed"]
    assert report["equivalent_to_pg"]
    assert report["axioms"]["order"] == 2


def test_code_matrix_csv(capsys):
    assert main(["code", "matrix", "--n", "7", "--p", "2", "--g", "1,1,0,1", "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == [f"c{j}" for j in range(7)]
    assert ["".join(row) for row in rows[1:]] == ["1101000", "0110100", "0011010", "0001101"]


def test_lock_sweep_csv(capsys):
    assert main(["phase", "lock-sweep", "--qmax", "30", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [int(row["q"]) for row in rows] == list(range(2, 31))


def test_bruck_ryser(capsys):
    report = run_json(capsys, "pg", "bruck-ryser")
    assert report["value"] == [6, 14, 21, 22, 30, 33]


def test_arc_search(capsys):
    report = run_json(capsys, "pg", "arcs", "--q", "4")
    assert report["size"] == 6
    assert report["classification"] == "hyperoval"


def test_weil_sums_are_seeded(capsys):
    first = run_json(capsys, "sums", "weil", "--q", "7", "--seed", "3")
    second = run_json(capsys, "sums", "weil", "--q", "7", "--seed", "3")
    assert first == second
    assert all(report["passed"] for report in first)


def test_mub_verify_text(capsys):
    assert main(["mub", "verify", "--q", "4"]) == 0
    assert "passed" in capsys.readouterr().out


def test_phase_galois(capsys):
    report = run_json(capsys, "phase", "galois", "--q", "5", "--a", "1", "--beta", "0.5")
    assert report["passed"]
    assert report["operator_deviation"] < 1e-9


def test_failed_verification_exits_one(capsys):
    assert main(["numtheory", "ramanujan", "--q", "12", "--n", "4", "--tol", "-1"]) == 1


def test_usage_errors(capsys):
    assert main(["field", "table", "--q", "6"]) == 2
    assert "not a prime power" in capsys.readouterr().err
    assert main(["code", "matrix", "--n", "7", "--p", "2"]) == 2
    assert "--g is required" in capsys.readouterr().err
    assert main(["numtheory", "profile", "--n", "5", "--format", "csv"]) == 2
    assert main(["field", "bogus"]) == 2
    assert main(["field", "table", "--unknown", "1"]) == 2
    capsys.readouterr()
    assert main(["sums", "ring-gauss", "--m", "2", "--a", "99"]) == 2
    assert "--a 99 is out of range 0..11" in capsys.readouterr().err
    assert main(["sums", "ring-gauss", "--m", "2", "--b", "16"]) == 2
    assert "--b 16 is out of range 0..15" in capsys.readouterr().err


def test_execute_ring_gauss_character_bound():
    result = execute(
        CommandRequest(verb="sums", action="ring-gauss", parameters={"m": 2, "a": 99})
    )
    assert result.exit_code == 2
    assert "out of range" in result.output
    result = execute(
        CommandRequest(verb="sums", action="ring-gauss", parameters={"m": 2, "a": 11, "b": 1})
    )
    assert result.exit_code == 0


def test_execute_rejects_inapplicable_flags():
    result = execute(CommandRequest(verb="field", action="table", parameters={"p": 2, "n": 7}))
    assert result.exit_code == 2
    assert "unknown flag --n" in result.output
    assert schema_text("field", "table") in result.output


def test_execute_unknown_command():
    result = execute(CommandRequest(verb="field", action="bogus"))
    assert result.exit_code == 2


def test_execute_ring_gamma():
    result = execute(
        CommandRequest(verb="ring", action="gamma", parameters={"m": 2}, output=OutputFormat.JSON)
    )
    assert result.exit_code == 0
    assert result.passed
    assert len(json.loads(result.output)) == 16


def test_reports_are_mirrored(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("GQT_OUTPUT_DIR", str(tmp_path))
    report = run_json(capsys, "pg", "build", "--q", "2")
    mirrored = json.loads((tmp_path / "pg-build.json").read_text())
    assert mirrored == report
    assert mirrored["point_count"] == 7


def test_gf8_table(capsys):
    report = run_json(capsys, "field", "table", "--p", "2", "--m", "3")
    rows = report["rows"]
    assert [row["power"] for row in rows] == ["0", "1", "α", "α^2", "α^3", "α^4", "α^5", "α^6"]
    assert [row["coefficients"] for row in rows] == [
        "(0,0,0)",
        "(0,0,1)",
        "(0,1,0)",
        "(1,0,0)",
        "(0,1,1)",
        "(1,1,0)",
        "(1,1,1)",
        "(1,0,1)",
    ]
    assert rows[4]["polynomial"] == "1+α"


def test_mub_verify_odd_q(capsys):
    report = run_json(capsys, "mub", "verify", "--odd-q", "9", "--tol", "1e-9")
    assert report["passed"]
    assert report["basis_count"] == 10


def test_code_distance_by_field_size(capsys):
    report = run_json(capsys, "code", "distance", "--n", "7", "--q", "2", "--g", "1,1,0,1")
    assert report["d_min"] == 3
    assert report["note"].startswith("[7,4,3] code over F_2 is not MDS")


def test_code_distance_against_claimed_value(capsys):
    report = run_json(
        capsys, "code", "distance", "--n", "7", "--p", "2", "--g", "1,1,0,1", "--claimed-d", "4"
    )
    assert report["claimed_distance"] == 4
    assert "not the claimed 4" in report["note"]


def test_json_output_is_repeatable(capsys):
    first = main(["phase", "galois", "--q", "7", "--a", "2", "--beta", "1.3", "--format", "json"])
    first_out = capsys.readouterr().out
    second = main(["phase", "galois", "--q", "7", "--a", "2", "--beta", "1.3", "--format", "json"])
    assert first == second == 0
    assert capsys.readouterr().out == first_out
