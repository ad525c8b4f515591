import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from dybe.cli import EXIT_FAIL, EXIT_GENERICITY, EXIT_PASS, EXIT_USAGE, run
from dybe.jsonio import matrix_from_obj
from dybe.exchange import exchange_matrix
from dybe.repmod import irrep
from dybe.verma import DynParam

GOLDEN = Path(__file__).parent / "golden"


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_compute_exchange_golden():
    code, out, _ = _run("compute", "exchange", "--algebra", "A1", "--modules", "L(1),L(1)")
    assert code == EXIT_PASS
    assert out == (GOLDEN / "exchange_l1_l1.json").read_text()
    data = json.loads(out)
    strings = [e[2] for e in data["entries"]]
    assert "1/(x1+1)" in strings
    assert ["1,0", "1,0", "(x1^2+2*x1)/(x1^2+2*x1+1)"] in data["entries"]


def test_json_matrix_roundtrip():
    _, out, _ = _run("compute", "exchange", "--modules", "L(1),L(2)")
    L1, L2 = irrep((1,)), irrep((2,))
    R = exchange_matrix(L1, L2, DynParam.symbolic(1))
    assert matrix_from_obj(json.loads(out), R.dims, ["x1"]) == R.entries


def test_verify_all_a1_golden_and_deterministic():
    a = _run("verify", "all", "--algebra", "A1", "--seed", "7")
    b = _run("verify", "all", "--algebra", "A1", "--seed", "7")
    assert a[0] == b[0] == EXIT_PASS
    assert a[1] == b[1]
    assert a[1] == (GOLDEN / "verify_all_a1.json").read_text()


def test_numeric_run_records_sample_and_is_seeded():
    argv = ("verify", "all", "--algebra", "A2", "--modules", "L(1,0)", "--mode", "numeric",
            "--seed", "42")
    code, out, err = _run(*argv)
    assert code == EXIT_PASS
    data = json.loads(out)
    assert all("sample" in r and r["seed"] == 42 for r in data["reports"])
    assert {s["identity"] for s in data["skipped"]} == {"diffop-commute", "mr"}
    assert _run(*argv)[1] == out
    assert _run(*argv[:-1], "43")[1] != out


def test_pass_report_shape():
    code, out, _ = _run("verify", "qdybe", "--algebra", "A1", "--modules", "L(1),L(1),L(1)")
    assert code == EXIT_PASS
    rep = json.loads(out)["reports"][0]
    assert rep["status"] == "pass" and rep["failures"] == []


@pytest.mark.parametrize("argv", [
    ("verify", "cocycle", "--modules", "L(1)", "--mode", "numeric"),
    ("verify", "cocycle", "--algebra", "B2", "--modules", "L(1)"),
    ("verify", "cocycle", "--modules", "L(1,0)"),
    ("verify", "nonsense"),
    ("compute", "fusion"),
    ("compute", "trace", "--modules", "L(1)"),
])
def test_usage_errors(argv):
    assert _run(*argv)[0] == EXIT_USAGE


def test_failed_identity_exit_code(monkeypatch):
    import dybe.cli as cli
    from dybe.report import VerificationReport

    bad = VerificationReport("qdybe", ["L(1)"], "x", [{"lhs": 1, "rhs": 2}])
    monkeypatch.setattr(cli, "verify_qdybe", lambda *a: bad)
    code, out, _ = _run("verify", "qdybe", "--modules", "L(1)")
    assert code == EXIT_FAIL
    assert json.loads(out)["status"] == "fail"


def test_genericity_exhausted(monkeypatch):
    import dybe.cli as cli
    from dybe.errors import NonGenericWeight

    def never(*a):
        raise NonGenericWeight("forced")

    monkeypatch.setattr(cli, "verify_cocycle", never)
    code, _, err = _run("verify", "cocycle", "--modules", "L(1)", "--mode", "numeric", "--seed", "1")
    assert code == EXIT_GENERICITY
    assert "8 attempts" in err


def test_out_file_and_warning(tmp_path):
    target = tmp_path / "q.json"
    code, out, err = _run("compute", "qmatrix", "--algebra", "A2", "--modules", "L(1,0)",
                          "--out", str(target))
    assert code == EXIT_PASS and out == ""
    assert "warning" in err
    assert json.loads(target.read_text())["entries"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dybe", "compute", "qmatrix", "--modules", "L(1)"],
                         capture_output=True, text=True, check=True)
    assert "(x1+2)/(x1+1)" in res.stdout
