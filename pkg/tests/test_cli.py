import io
import json
import subprocess
import sys

import pytest

from resrec.cli import parse_config, run


def _run(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def test_discover_path_json():
    code, out = _run("discover", "--k", "1")
    rep = json.loads(out)
    assert code == 0
    assert rep["equations"] == ["D(0) = 2 y D(0) + y D(1)", "D(1) = - y D(0)"]
    assert rep["annihilator_y"] == ["1", "-2", "1"]
    assert rep["gates"] == {"minimal_divides_annihilator": True, "identities_sound": True}


def test_discover_3tree_reports_cutoff():
    code, out = _run("discover", "--k", "3", "--part", "denominator", "--n-hi", "40")
    rep = json.loads(out)
    assert code == 0
    assert rep["minimal_polynomial_text"] == "X^5 - 5X^4 + 3X^3 - 3X^2 + 5X - 1"
    assert rep["families"] == 28
    assert rep["family_min_size"] == 5
    assert "verified_window" in rep["recurrence"]


def test_oracle_formats():
    code, out = _run("oracle", "--k", "3", "--part", "numerator", "--n-lo", "0", "--n-hi", "4", "--format", "csv")
    assert code == 0
    assert out == "n,det\n0,1\n1,2\n2,8\n3,50\n4,240\n"
    code, out = _run("oracle", "--k", "3", "--n-lo", "1", "--n-hi", "3", "--format", "text")
    assert out == "1  1\n2  3\n3  16\n"


def test_custom_part_oracle():
    code, out = _run("oracle", "--part", "custom", "--delete-rows", "1", "0", "--delete-cols", "1", "0",
                     "--n-lo", "0", "--n-hi", "3")
    assert json.loads(out)["sequence"]["terms"] == ["1", "2", "8", "50"]


def test_resistance_csv():
    code, out = _run("resistance", "--n-lo", "4", "--n-hi", "6", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,R_exact,R_recurrence,R_binet,binet_rel_gap"
    assert lines[1].startswith("4,1/2,1/2,")
    assert lines[2].startswith("5,2/3,2/3,")


def test_resistance_exact_only():
    code, out = _run("resistance", "--n", "5", "--method", "exact")
    assert code == 0 and json.loads(out)["rows"][0]["R_exact"] == "2/3"


def test_json_reproducible_except_timestamp():
    a = json.loads(_run("resistance", "--n-lo", "6", "--n-hi", "9")[1])
    b = json.loads(_run("resistance", "--n-lo", "6", "--n-hi", "9")[1])
    a.pop("timestamp"), b.pop("timestamp")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    d1 = _run("discover", "--k", "3", "--part", "numerator")[1]
    d2 = _run("discover", "--k", "3", "--part", "numerator")[1]
    assert d1 == d2


def test_verify_passes(tmp_path, capsys):
    out = tmp_path / "v.csv"
    code = run(["verify", "--format", "csv", "--out", str(out)])
    assert code == 0
    assert out.read_text().startswith("n,R_exact,Delta,error,ratio\n")
    assert capsys.readouterr().out.startswith("PASS")


@pytest.mark.parametrize("argv", [
    ["resistance"],
    ["verify", "--precision", "10"],
    ["oracle", "--n-lo", "5", "--n-hi", "4"],
    ["bogus"],
])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        parse_config(argv)
    assert exc.value.code == 2


def test_runtime_error_exit_code(capsys):
    assert run(["discover", "--max-families", "1"]) == 1
    assert "cap of 1 families" in capsys.readouterr().err


def test_precision_env(monkeypatch):
    monkeypatch.setenv("RESREC_PRECISION", "40")
    assert parse_config(["verify"]).precision == 40
    assert parse_config(["verify", "--precision", "60"]).precision == 60


def test_console_entry():
    proc = subprocess.run([sys.executable, "-m", "resrec", "resistance", "--n", "4", "--method", "exact",
                           "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "R_exact=1/2" in proc.stdout
