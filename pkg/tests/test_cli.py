import io
import json
import subprocess
import sys

import pytest

from quantspace.cli import main


def run(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def kmh_file(tmp_path):
    path = tmp_path / "kmh.json"
    path.write_text(json.dumps({
        "id": "KMH", "scalar_system": "Field-Rational", "base_units": ["km", "kg", "h"],
    }))
    return str(path)


def test_eval():
    assert run("eval", "1 kg*m/s^2 + 1 N") == (0, "2 m·kg·s^-2\n", "")
    assert run("--substitute-derived", "eval", "1 kg*m/s^2 + 1 N")[1] == "2 N\n"
    assert run("eval", "(2 m)^0")[1] == "1 [1]\n"
    assert run("eval", "3", "m/s")[1] == "3 m·s^-1\n"


def test_error_codes():
    code, out, err = run("eval", "2 m + 3 s")
    assert code == 1 and out == ""
    assert err.startswith("E_INCOMMENSURABLE: ") and err.count("\n") == 1
    assert run("eval", "2 +")[2].startswith("E_SYNTAX: ")
    assert run("eval", "3 parsec")[2].startswith("E_UNKNOWN_SYMBOL: ")
    assert run("eval", "1/(0 m)")[2].startswith("E_NON_INVERTIBLE: ")
    assert run("--system", "/nonexistent.json", "eval", "1")[0] == 1


def test_exact_and_float():
    assert run("eval", "1/3 m")[1] == "1/3 m\n"
    assert run("--float", "eval", "1/4 m")[1] == "0.25 m\n"
    assert run("--exact", "eval", "0.1 m")[1] == "1/10 m\n"


def test_check():
    code, out, _ = run("check", "1 N = 1 kg m s^-2")
    assert code == 0
    assert "homogeneous: yes" in out and "equal: yes" in out
    out = run("check", "1 m", "=", "1 s")[1]
    assert "homogeneous: no" in out and "equal: no" in out
    assert "homogeneous: yes" in run("check", "1 km = 3 m")[1]
    assert run("check", "1 m")[2].startswith("E_SCHEMA")


def test_convert():
    assert run("convert", "5000 m", "to", "km") == (0, "5 km\n", "")
    assert run("convert", "1 h to min")[1] == "60 min\n"
    assert run("convert", "1 m to s")[2].startswith("E_INCOMMENSURABLE")


def test_rebase(kmh_file):
    assert run("rebase", "10 m/s", "--system", kmh_file)[1] == "36 km·h^-1\n"
    assert run("rebase", "10 m/s", "--to", "km,kg,h")[1] == "36 km·h^-1\n"
    assert run("rebase", "1 N", "--to", "N,m,s")[1] == "1 N\n"
    assert run("rebase", "1 m", "--to", "km,kg")[2].startswith("E_RANK_MISMATCH")
    assert run("rebase", "1 m", "--to", "m,s,Hz")[2].startswith("E_NON_UNIMODULAR")


def test_pi():
    code, out, _ = run("pi", "3 m/s", "2 m", "5 s")
    assert code == 0
    assert out.startswith("[1, -1, 1]") and out.rstrip().endswith("15/2 [1]")
    assert run("pi", "1 m", "1 s")[1] == "no dimensionless products\n"


def test_units(tmp_path):
    code, out, _ = run("units", "list")
    assert code == 0 and "N = 1 m·kg·s^-2" in out and "m  (base)" in out
    target = tmp_path / "ext.json"
    assert run("units", "add", "mi", "1609.344 m", "-o", str(target))[0] == 0
    code, out, _ = run("--system", str(target), "convert", "1 mi to km")
    # 1609.344 / 1000 = 1609344 / 10**6 = 25146 / 15625 after dividing by 64
    assert out == "25146/15625 km\n"
    assert run("units", "add", "z", "0 m")[2].startswith("E_NON_INVERTIBLE_UNIT")
    assert run("units", "add", "N", "1 m")[2].startswith("E_DUPLICATE_SYMBOL")


def test_repl():
    script = "let v = 3 m/s\nv*2 s\n2 m + 1 s\nlet m = 2\nunits\nquit\n"
    code, out, err = run("repl", stdin=script)
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "v = 3 m·s^-1"
    assert lines[1] == "6 m"
    assert len(err.splitlines()) == 2
    assert err.splitlines()[0].startswith("E_INCOMMENSURABLE")
    assert err.splitlines()[1].startswith("E_DUPLICATE_SYMBOL")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quantspace", "eval", "2 m + 3 s"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert proc.stderr.startswith("E_INCOMMENSURABLE")


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1
    assert "E_USAGE" in capsys.readouterr().err
