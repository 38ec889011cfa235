import contextlib
import io
import json
import subprocess
import sys

import pytest

from triverify.cli import main

from conftest import GOLDEN

GOLDEN_CASES = {
    "chi_s6": ["chi", "--order", "720", "--m", "5", "--n", "6"],
    "chi_zero": ["chi", "--order", "60", "--m", "3", "--n", "6"],
    "chi_s7": ["chi", "--order", "5040", "--m", "10", "--n", "7"],
    "ppd_exception": ["ppd", "--q", "2", "--a", "6"],
    "ppd_4_3": ["ppd", "--q", "4", "--a", "3"],
    "primegraph_a5": ["primegraph", "--group", "A_5"],
    "primegraph_a7": ["primegraph", "--group", "A_7"],
    "scan_x8": ["scan-psl2", "--xmax", "8"],
    "verify_a5": ["verify", "--group", "A_5", "--m", "3", "--n", "5"],
    "verify_m10": ["verify", "--group", "M_10", "--m", "4", "--n", "5"],
    "structconst_s3": ["structconst", "--table", "tests/data/s3.json", "--i", "1", "--j", "1", "--k", "2"],
}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        rc = main(argv)
    return rc, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def _cwd(monkeypatch):
    monkeypatch.chdir(GOLDEN.parent.parent)
    monkeypatch.delenv("TRIVERIFY_BUDGET", raising=False)


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name):
    rc, out, _ = run(GOLDEN_CASES[name] + ["--format", "json"])
    assert rc == 0
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_text_outputs():
    assert run(["chi", "--order", "720", "--m", "5", "--n", "6"])[1].strip() == "chi = -96 = -2^5*3"
    assert run(["ppd", "--q", "2", "--a", "6"])[1].strip() == "none (exception)"
    assert run(["ppd", "--q", "2", "--a", "4"])[1].strip() == "5"
    text = run(["scan-psl2", "--xmax", "4"])[1]
    assert "q^2-4q-1" in text and "q^2-4q+1" in text


def test_verify_s9_refuted():
    rc, out, _ = run(["verify", "--group", "S_9", "--m", "10", "--n", "7"])
    assert rc == 0 and "PROVEN_NO (cycle-bound)" in out


def test_structconst_group_path():
    rc, out, _ = run(["structconst", "--group", "A_5", "--i", "0", "--j", "3", "--k", "3"])
    assert rc == 0 and out.strip() == "1"
    assert run(["structconst", "--group", "A_5", "--i", "0", "--j", "3", "--k", "9"])[0] == 2
    assert run(["structconst", "--i", "0", "--j", "0", "--k", "0"])[0] == 2


def test_input_errors():
    assert run(["verify", "--group", "Nope", "--m", "2", "--n", "3"])[0] == 2
    assert run(["verify", "--group", "S_6"])[0] == 2
    assert run(["chi", "--order", "0", "--m", "2", "--n", "3"])[0] == 2
    assert run(["structconst", "--table", "missing.json", "--i", "0", "--j", "0", "--k", "0"])[0] == 2
    with pytest.raises(SystemExit) as exc:
        run(["chi", "--order", "ten", "--m", "2", "--n", "3"])
    assert exc.value.code == 2


def test_bad_budget_env(monkeypatch):
    monkeypatch.setenv("TRIVERIFY_BUDGET", "lots")
    assert run(["primegraph", "--group", "A_5"])[0] == 2
    monkeypatch.setenv("TRIVERIFY_BUDGET", "10")
    rc, _, err = run(["primegraph", "--group", "A_5"])
    assert rc == 2 and "budget" in err


def test_tables_exit_codes(tmp_path):
    rows = tmp_path / "rows.json"
    rows.write_text(json.dumps({"rows": [
        {"group": "S_7", "m": 10, "n": 7, "expected_chi": "-2^4*3^4", "expected": "YES"},
        {"group": "Missing", "m": 10, "n": 7, "expected_chi": None, "expected": "YES"}]}))
    rc, out, _ = run(["tables", "--rows", str(rows)])
    assert rc == 0 and "SKIPPED" in out
    rows.write_text(json.dumps({"rows": [
        {"group": "S_7", "m": 10, "n": 7, "expected_chi": "-2^5*3^4", "expected": "YES"}]}))
    assert run(["tables", "--rows", str(rows)])[0] == 1
    rows.write_text("{broken")
    assert run(["tables", "--rows", str(rows)])[0] == 2


def test_replay_round_trip(tmp_path):
    rc, out, _ = run(["verify", "--group", "S_6", "--m", "5", "--n", "6", "--format", "json", "--seed", "99"])
    path = tmp_path / "t.json"
    path.write_text(out)
    assert run(["verify", "--replay", str(path)])[0] == 0
    t = json.loads(out)
    t["status"] = "PROVEN_NO"
    path.write_text(json.dumps(t))
    assert run(["verify", "--replay", str(path)])[0] == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "triverify", "chi", "--order", "60", "--m", "3", "--n", "5"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "chi = 2 = 2"
