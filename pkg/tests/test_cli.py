import io
import json
import subprocess
import sys

import pytest

from conftest import golden_path
from supertrop.cli import main


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


with open(golden_path("cli_cases.json"), encoding="utf-8") as _fh:
    CASES = json.load(_fh)


@pytest.mark.parametrize("name, argv", CASES, ids=[c[0] for c in CASES])
def test_golden_output(name, argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    with open(golden_path(name), encoding="utf-8") as fh:
        assert out == fh.read()


def test_per_prints_ten(capsys):
    assert run(["per", "2 4; 4 8"], capsys)[1] == "10\n"
    assert run(["per", "--assignment", "4 6; 6 8"], capsys)[1] == "12v\n"


def test_quasi_singsq_flag(capsys):
    out = run(["quasi", "-1 -1; 0 1"], capsys)[1]
    assert out.rstrip().endswith("reversible: false")
    rec = json.loads(run(["quasi", "-1 -1; 0 1", "--json"], capsys)[1])
    assert rec["reversible"] is False
    assert rec["left"] == {"n": 2, "rows": [["0", "-2v"], ["1v", "0"]]}


def test_json_schema_keys(capsys):
    keys = {
        ("bid", "0 1; 1 0"): {"per_plus", "per_minus", "singularity"},
        ("nabla", "0 1; -5 0"): {"nabla"},
        ("conj", "0 -1; -2 0", "0 _; _ 0"): {"conjugate"},
        ("sns", "0 -1; _ 0"): {"gaussian", "on_A", "definite", "product", "per"},
        ("ed", "0 -1; -2 0"): {"word", "definite_word", "definite", "closure"},
    }
    for argv, expect in keys.items():
        code, out, _ = run(list(argv) + ["--json"], capsys)
        assert code == 0
        assert set(json.loads(out)) == expect


def test_matrix_from_file_and_stdin(tmp_path, capsys, monkeypatch):
    f = tmp_path / "a.txt"
    f.write_text("# Bl1 A A^t\n2 4\n4 8\n")
    assert run(["per", str(f)], capsys)[1] == "10\n"
    assert run(["per", "-"], capsys, stdin="4 6\n6 8\n", monkeypatch=monkeypatch)[1] == "12v\n"


def test_parse_error_exit_code(capsys):
    code, _, err = run(["per", "1 2\n3"], capsys)
    assert code == 1
    assert "line 2" in err


def test_domain_error_exit_code(capsys):
    code, _, err = run(["nabla", "0 _; 0 _"], capsys)
    assert code == 1 and err.startswith("error:")
    assert run(["sns", "1 _; _ 0"], capsys)[0] == 1
    assert run(["per", "no/such/file"], capsys)[0] == 1


def test_nabla_ghost_opt_in(capsys):
    assert run(["nabla", "1 2; 3 4"], capsys)[0] == 1
    code, out, _ = run(["nabla", "1 2; 3 4", "--allow-ghost"], capsys)
    assert code == 0 and out == "-1v -3v\n-2v -4v\n"


def test_steinberg_word_file(tmp_path, capsys):
    f = tmp_path / "w.txt"
    f.write_text("G 1 3 -1\nG 3 2 -2\n")
    code, out, _ = run(["steinberg", str(f), "--json"], capsys)
    assert code == 0
    assert json.loads(out) == {"status": "ok", "steps": 1, "lower": ["G 3 2 -2"], "upper": ["G 1 3 -1", "G 1 2 -3"]}
    f.write_text("G 1 2 1\nG 3 1 1\n")
    code, out, _ = run(["steinberg", str(f)], capsys)
    assert code == 0 and out.startswith("status: stuck")


def test_steinberg_bad_word(tmp_path, capsys):
    f = tmp_path / "w.txt"
    f.write_text("G 1 2 0\nQ 1 2\n")
    code, _, err = run(["steinberg", str(f)], capsys)
    assert code == 1 and "line 2" in err


def test_check_exit_codes(capsys):
    code, out, _ = run(["check", "--property", "per_mul_surpass", "--trials", "50"], capsys)
    assert code == 0 and out.startswith("PASS per_mul_surpass")
    assert run(["check", "--property", "nope"], capsys)[0] == 1
    rec = json.loads(run(["check", "--property", "quasi_idempotent", "--trials", "20", "--json"], capsys)[1])
    assert rec[0]["status"] == "pass" and rec[0]["trials"] == 20


def test_check_reports_failures(capsys, monkeypatch):
    from supertrop import oracle

    monkeypatch.setitem(
        oracle.PROPERTIES, "always_fails", oracle.Property("always_fails", "cli", 0, lambda rng: "boom")
    )
    code, out, _ = run(["check", "--property", "always_fails", "--trials", "3"], capsys)
    assert code == 2
    assert "always_fails:0:0" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "supertrop", "per", "0 0; 0 0"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "0v\n"
