import json
import subprocess
import sys
from pathlib import Path

import pytest

from springfam.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def statuses(report):
    return {v["status"] for v in report["verifications"]}


def test_sp4_fixture_is_byte_exact(capsys):
    code, out, _ = run(capsys, "class", "--group", "sp", "--partition", "2,2")
    assert code == 0
    assert out == (FIXTURES / "sp4_2_2.json").read_text(encoding="utf-8")


def test_sp4_report_contents(capsys):
    _, out, _ = run(capsys, "class", "--group", "sp", "--partition", "2,2")
    rep = json.loads(out)
    assert rep["schema_version"] == "1.0" and rep["command"] == "class"
    res = rep["results"]
    assert res["a"] == [0, 1, 2] and res["shifted"] == [0, 2, 3]
    assert res["matching_set"] == [[0, 1, 2], [0, 2, 1]]
    assert len(res["X_F"]["elements"]) == 4
    assert statuses(rep) == {"pass"}


def test_raw_sequence_matches_partition(capsys):
    _, by_part, _ = run(capsys, "class", "--group", "sp", "--partition", "2,2")
    code, by_seq, _ = run(capsys, "class", "--sequence", "0,1,2", "--flavor", "C")
    assert code == 0
    assert json.loads(by_seq)["results"]["X_F"] == json.loads(by_part)["results"]["X_F"]


def test_not_special(capsys):
    code, out, _ = run(capsys, "class", "--group", "sp", "--partition", "2,1,1")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["special"] is False


def test_regular_class_is_reported_not_failed(capsys):
    code, out, _ = run(capsys, "class", "--group", "sp", "--partition", "4")
    assert code == 0
    rep = json.loads(out)
    assert "reported" in statuses(rep) and "fail" not in statuses(rep)
    assert rep["results"]["unassigned_intervals"] == [[2]]


def test_general_linear(capsys):
    code, out, _ = run(capsys, "class", "--group", "gl", "--partition", "3,1")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ("class", "--group", "sp", "--partition", "2,x"),
    ("class", "--group", "sp", "--partition", "3,1"),
    ("class", "--sequence", "0,0,0", "--flavor", "C"),
    ("class", "--group", "sp"),
    ("verify", "lemma99"),
    ("fourier", "--group", "Q8"),
    ("exceptional", "--type", "E8", "--class", "Z_9"),
    ("exceptional", "--type", "H4"),
])
def test_usage_errors_exit_2(capsys, argv):
    try:
        code = main(list(argv))
    except SystemExit as e:
        code = e.code
    assert code == 2


def test_verify_passing_scope(capsys):
    code, out, _ = run(capsys, "verify", "lemma12", "--max-rank", "4", "--samples", "20", "--seed", "3")
    assert code == 0
    assert json.loads(out)["results"]


def test_verify_failure_exits_1_with_witness(capsys):
    # odd mu gives 2^ceil(mu/2) matching sequences, not 2^floor(mu/2)
    code, out, err = run(capsys, "verify", "lemma22", "--max-rank", "2")
    assert code == 1
    assert "verification failed" in err
    fails = [v for v in json.loads(out)["verifications"] if v["status"] == "fail"]
    assert fails and all(v.get("witness") is not None for v in fails)


def test_verify_is_deterministic(capsys):
    argv = ("verify", "bijections", "--max-rank", "3", "--samples", "15", "--seed", "11")
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b


def test_fourier(capsys):
    code, out, _ = run(capsys, "fourier", "--group", "S3")
    assert code == 0
    res = json.loads(out)["results"]
    assert len(res["matrix"]) == 8
    code, out, _ = run(capsys, "fourier", "--group", "trivial")
    assert json.loads(out)["results"]["matrix"] == [["1"]]


def test_exceptional(capsys):
    code, out, _ = run(capsys, "exceptional", "--type", "F4")
    assert code == 0 and json.loads(out)["results"]["records_scanned"] == 11
    code, out, _ = run(capsys, "exceptional", "--type", "G2", "--class", "G_2(a_1)")
    rec = json.loads(out)["results"]["records"][0]
    assert (rec["A"], rec["Abar"]) == ("S3", "S3")


def test_text_format(capsys):
    code, out, _ = run(capsys, "class", "--group", "sp", "--partition", "2,2", "--format", "text")
    assert code == 0
    assert out.startswith("class (schema 1.0)")
    assert "verifications:" in out and "PASS" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "springfam", "exceptional", "--type", "E8", "--class", "2A_4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["records"][0]["A"] == "S5"
