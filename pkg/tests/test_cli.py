import json
import subprocess
import sys

import pytest

from moddiv.cli import run

DIAG23 = {"ring": "Z", "rows": 2, "cols": 2, "entries": [[2, 0], [0, 3]]}


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_snf_verb(capsys):
    code, out, _ = call(capsys, "snf", "-i", json.dumps(DIAG23))
    assert code == 0
    assert out["verb"] == "snf"
    assert out["result"]["D"]["entries"] == [[1, 0], [0, 6]]
    assert len(out["inputDigest"]) == 64


def test_solve_verb(capsys):
    inp = {"ring": "Z/6", "A": {"rows": 1, "cols": 1, "entries": [[2]]},
           "b": {"rows": 1, "cols": 1, "entries": [[4]]}}
    code, out, _ = call(capsys, "solve", "-i", json.dumps(inp))
    assert code == 0
    res = out["result"]
    assert res["solvable"] and res["x0"]["entries"] == [[2]]
    assert [k["entries"] for k in res["kernel"]] == [[[3]]]


def test_divide_on_gallery_output(capsys, tmp_path):
    code, scenario, _ = call(capsys, "gallery", "step2-minimal")
    assert code == 0
    path = tmp_path / "step2.json"
    path.write_text(json.dumps(scenario))
    code, out, _ = call(capsys, "divide", "-i", str(path))
    assert code == 0
    assert out["result"]["verdict"] == "notDivisible"
    # the certificate re-checks
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps(out))
    code, chk, _ = call(capsys, "check-hom", "-i", str(cert))
    assert code == 0 and chk["result"]["valid"] is True


def test_seeming_and_step2(capsys):
    code, out, _ = call(capsys, "step2", "-r", "GF(2)[x,y]/(x^2,xy,y^2)")
    assert code == 0
    res = out["result"]
    assert res["status"] == "counterexample" and res["oracle"] == {"divisible": False, "count": 4}
    code, out, _ = call(capsys, "step2", "-r", "Z/4")
    assert code == 2 and out is None


def test_probe_is_deterministic(capsys):
    argv = ("probe", "-r", "Z/8", "--trials", "60", "--seed", "7")
    code, a, _ = call(capsys, *argv)
    code2, b, _ = call(capsys, *argv)
    assert code == code2 == 0
    assert a == b
    assert a["result"]["counterexample"] is None and a["seed"] == 7


def test_classify_and_invariants(capsys):
    code, out, _ = call(capsys, "classify-ring", "-r", "Z/12")
    assert code == 0 and out["result"]["predictedSP"] is True
    inp = {"module": {"ring": "Z", "gens": 2, "relations": [[2, 0], [0, 3]]}}
    code, out, _ = call(capsys, "invariants", "-i", json.dumps(inp))
    assert out["result"]["invariantFactors"] == [6] and out["result"]["freeRank"] == 0


def test_decompose_infers_local_shape(capsys):
    inp = {"module": {"ring": "Z/8", "gens": 2, "relations": [[2, 0]]}}
    code, out, _ = call(capsys, "decompose", "-i", json.dumps(inp))
    assert code == 0
    res = out["result"]
    assert res["p"] == 2 and res["n"] == 3
    assert res["factors"] == [{"p": 2, "exponent": 1, "multiplicity": 1}]


@pytest.mark.parametrize("argv", [
    ("snf", "-i", "{not json"),
    ("snf",),
    ("snf", "-i", json.dumps({"ring": "Q", "rows": 1, "cols": 1, "entries": [[1]]})),
    ("divide", "-i", json.dumps({"f": {"source": {"ring": "Z", "gens": 1, "relations": [[2]]},
                                       "target": {"ring": "Z", "gens": 1, "relations": [[4]]},
                                       "matrix": [[1]]}, "r": 2})),
    ("gallery", "nope"),
    ("snf", "-i", "/no/such/file.json"),
])
def test_input_errors_exit_2(capsys, argv):
    code = run(list(argv))
    _, err = capsys.readouterr()
    assert code == 2
    assert "error" in json.loads(err.strip().splitlines()[-1])


def test_budget_error_exits_3(capsys):
    inp = {"f": {"source": {"ring": "Z/8", "gens": 8}, "target": {"ring": "Z/8", "gens": 8},
                 "matrix": [[0] * 8 for _ in range(8)]}, "r": 2}
    code = run(["oracle", "-i", json.dumps(inp)])
    capsys.readouterr()
    assert code == 3


def test_console_script_byte_identical():
    cmd = [sys.executable, "-m", "moddiv.cli", "probe", "-r", "GF(3)", "--trials", "20", "--seed", "1"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["verb"] == "probe"


def test_unknown_verb_exits_2():
    proc = subprocess.run([sys.executable, "-m", "moddiv.cli", "frobnicate"], capture_output=True)
    assert proc.returncode == 2
