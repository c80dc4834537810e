import json
import subprocess
import sys

import pytest

from planemoduli.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, json.loads(out.out), out.err


@pytest.fixture
def ex_file(tmp_path, capsys):
    path = tmp_path / "ex.json"
    code, _, _ = run(capsys, "construct", "--family", "example101", "--p", "2", "--m", "3", "--out", str(path))
    assert code == 0
    return str(path)


def test_construct_reports(capsys):
    code, rep, err = run(capsys, "construct", "--family", "example101", "--p", "2", "--m", "3", "--seed", "7")
    assert code == 0 and "ok" in err
    assert set(rep) == {"command", "inputs", "outcome", "timing_ms", "seed"}
    assert rep["seed"] == 7 and rep["outcome"]["instance"]["d"] == 12


def test_condition_failure_exit(capsys):
    code, rep, _ = run(capsys, "construct", "--family", "quartic-abc", "--a", "2", "--b", "3", "--c", "5")
    assert code == 2 and rep["outcome"]["condition"]


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--family", "nonsense"])
    assert exc.value.code == 1
    assert main(["check", "smooth", "--in", "/nonexistent.json"]) == 1


def test_seed_determinism(capsys, monkeypatch):
    args = ("construct", "--family", "C2", "--d", "7", "--n", "3", "--seed", "11")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a["outcome"] == b["outcome"]
    monkeypatch.setenv("MODULI_SEED", "11")
    _, c, _ = run(capsys, "construct", "--family", "C2", "--d", "7", "--n", "3")
    assert c["seed"] == 11 and c["outcome"] == a["outcome"]
    _, d, _ = run(capsys, "construct", "--family", "C2", "--d", "7", "--n", "3", "--seed", "12")
    assert d["seed"] == 11  # the environment wins


def test_round_trip_checks(capsys, ex_file):
    code, rep, _ = run(capsys, "check", "certify-pseudoreal", "--in", ex_file)
    assert code == 0 and rep["outcome"]["kind"] == "pseudoreal" and rep["outcome"]["coset_failures"] == 6
    code, rep, _ = run(capsys, "check", "cocycle", "--in", ex_file)
    assert code == 2 and rep["outcome"]["verdict"] is False
    code, rep, _ = run(capsys, "check", "diagonal-automorphisms", "--in", ex_file)
    assert code == 0 and rep["outcome"]["order"] == 6
    code, rep, _ = run(capsys, "check", "normalizes", "--in", ex_file)
    assert code == 0


def test_signature_and_smooth(capsys, tmp_path):
    path = str(tmp_path / "c1.json")
    assert main(["construct", "--family", "C1", "--d", "5", "--n", "5", "--out", path]) == 0
    capsys.readouterr()
    code, rep, _ = run(capsys, "check", "signature", "--in", path)
    assert code == 0 and rep["outcome"]["text"] == "(0; 5, 5, 5, 5, 5)" and rep["outcome"]["odd"]
    code, rep, _ = run(capsys, "check", "smooth", "--in", path)
    assert code == 0 and rep["outcome"]["verdict"] == "smooth"


def test_descent_witness_check(capsys, tmp_path):
    path = str(tmp_path / "q.json")
    assert main(["construct", "--family", "quartic-abc", "--a", "i", "--b", "3i", "--c", "5", "--out", path]) == 0
    capsys.readouterr()
    code, rep, _ = run(capsys, "check", "find-descent-witness", "--in", path)
    assert code == 0 and rep["outcome"]["verdict"] == "found"


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "planemoduli", "construct", "--family", "fermat", "--d", "4"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outcome"]["instance"]["d"] == 4
