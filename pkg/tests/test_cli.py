import csv
import io
import json
import subprocess
import sys

import pytest

from splitoct.algebra import from_json
from splitoct.cli import main


def oct_json(w=0, lam=(0, 0, 0), x=(0, 0, 0), ct=0):
    return json.dumps({"w": w, "lam": list(lam), "x": list(x), "ct": ct})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mul_j3(capsys):
    code, out, _ = run(capsys, "mul", oct_json(lam=(1, 0, 0)), oct_json(lam=(0, 1, 0)))
    assert code == 0
    assert json.loads(out) == {"w": 0.0, "lam": [0.0, 0.0, 0.0], "x": [0.0, 0.0, 1.0], "ct": 0.0}


def test_output_roundtrips(capsys):
    a = oct_json(0.1, (0.2, -0.3, 0.4), (1e-17, 2.5, 1 / 3), -7)
    b = oct_json(1.3, (0.0, 1.1, -0.9), (0.7, 0.1, 0.2), 0.6)
    _, out, _ = run(capsys, "mul", a, b)
    s = from_json(json.loads(out))
    assert json.dumps({"w": s.w, "lam": list(s.lam), "x": list(s.x), "ct": s.ct},
                      separators=(",", ":")) == out.strip()


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", oct_json(1, (1, 0, 0)))
    assert code == 0
    assert json.loads(out)["norm"] == "zero"
    _, out, _ = run(capsys, "classify", oct_json(0, (1, 0, 0), (1, 0, 0)))
    assert json.loads(out)["vector"] == "light_like"


@pytest.mark.parametrize("argv,field", [
    (["mul", '{"w":0,"lam":[1,0],"x":[0,0,0],"ct":0}', oct_json()], "lam"),
    (["conj", '{"w":0,"lam":[1,0,0],"x":[0,0,0]}'], "ct"),
    (["norm", "not json"], "invalid JSON"),
    (["autom", "--family", "rot", "--angles", "0.1", oct_json()], "angles"),
    (["autom", "--family", "rot", "--angles", "0.1,0.2", oct_json()], "axis"),
    (["autom", "--family", "diag", "--angles", "0.1,0.2", "[1,2,3]"], "target"),
    (["rotate", oct_json(), "--axis", "K1", "--angle", "1"], "axis"),
    (["verify", "algebra", "--trials", "0"], "trials"),
])
def test_usage_errors(capsys, argv, field):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert field in err


def test_runtime_errors_exit_1(capsys):
    assert run(capsys, "inverse", oct_json(1, (1, 0, 0)))[0] == 1
    assert run(capsys, "polar", oct_json(1, (1, 0, 0)))[0] == 1
    code, _, err = run(capsys, "decompose", oct_json(lam=(1, 0, 0)), "--axis", "J1")
    assert code == 1 and "(w,lam1)" in err


def test_rotate_and_decompose(capsys):
    code, out, _ = run(capsys, "rotate", oct_json(1), "--axis", "j1", "--angle", "1.0")
    assert code == 0
    _, out, _ = run(capsys, "decompose", out.strip(), "--axis", "j1")
    terms = json.loads(out)
    assert len(terms) == 4
    assert terms[0]["phase"] == pytest.approx(0.5)


def test_autom_coordinates_and_octonion(capsys):
    code, out, _ = run(capsys, "autom", "--family", "diag", "--angles", "0,0", "[1,2,3,4,5,6,7]")
    assert code == 0 and json.loads(out) == [1, 2, 3, 4, 5, 6, 7]
    code, out, _ = run(capsys, "autom", "--family", "rot", "--axis", "1", "--angles", "1.5707963267948966,0",
                       oct_json(x=(0, 1, 0)))
    assert json.loads(out)["x"] == pytest.approx([0, 0, 1])


def test_generators(capsys):
    code, out, _ = run(capsys, "generators")
    r = json.loads(out)
    assert code == 0
    assert r["dimension"] == 14 and r["closure_ok"]
    assert r["trace_identity_residual"] == 0.0
    assert len(r["metric_residuals"]) == 15


def test_zerodiv(capsys):
    code, out, _ = run(capsys, "zerodiv")
    r = json.loads(out)
    assert code == 0 and r["overall"] and r["passed"] == r["total"]


def test_kin_aberration(capsys):
    code, out, _ = run(capsys, "kin", "aberration", "--plane", "12", "--gamma", "0", "--V", "0.01",
                       "--lamdot", "1")
    assert code == 0
    assert json.loads(out)["dgamma"] == pytest.approx(-0.01)


def test_kin_aberration_outside_regime(capsys):
    code, out, err = run(capsys, "kin", "aberration", "--plane", "13", "--gamma", "0", "--V", "0.5")
    assert code == 0 and "warning" in err and json.loads(out)["valid"] is False


def test_kin_verbs(capsys):
    assert json.loads(run(capsys, "kin", "maxforce", "--m", "2")[1])["force"] == 4.0
    assert json.loads(run(capsys, "kin", "eikonal", "--grad", "1,1,0")[1])["residual"] == 1.0
    out = json.loads(run(capsys, "kin", "vadd", "--v", "1,0,0", "--theta1", "0.4")[1])
    assert out["v1p"] == 1.0
    out = json.loads(run(capsys, "kin", "lagrangian", "--v", "0.6,0,0")[1])
    assert out["L"] == pytest.approx(-0.8)
    code, out, _ = run(capsys, "kin", "lagrangian", "--v", "2,0,0")
    assert code == 1 and json.loads(out)["status"] == "virtual"


def test_kin_batch(tmp_path, capsys):
    path = tmp_path / "in.csv"
    path.write_text("v1,v2,v3,theta1,lamdot2,lamdot3\n1,0,0,0.5,0,0\n0,0.3,0,0.2,0,0.1\n")
    code, out, _ = run(capsys, "kin", "vadd", "--batch", str(path))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["v1", "v2", "v3", "theta1", "lamdot2", "lamdot3", "v1p", "v2p", "v3p"]
    assert float(rows[0]["v1p"]) == 1.0


def test_kin_batch_bad_column(tmp_path, capsys):
    path = tmp_path / "in.csv"
    path.write_text("m\nabc\n")
    code, _, err = run(capsys, "kin", "maxforce", "--batch", str(path))
    assert code == 2 and "'m'" in err
    path.write_text("mass\n1\n")
    code, _, err = run(capsys, "kin", "maxforce", "--batch", str(path))
    assert code == 2 and "'m'" in err


def test_kin_batch_lagrangian_virtual(tmp_path, capsys):
    path = tmp_path / "in.csv"
    path.write_text("m,v1,v2,v3,p1,p2,p3,pdot1,pdot2,pdot3\n1,2,0,0,1,0,0,0,0,0\n")
    code, out, _ = run(capsys, "kin", "lagrangian", "--batch", str(path))
    assert code == 0
    assert "virtual" in out


def test_verify_seed_from_env(monkeypatch, capsys):
    monkeypatch.setenv("SPLITOCT_SEED", "7")
    code, out, _ = run(capsys, "verify", "zerodiv", "--trials", "5")
    r = json.loads(out)
    assert code == 0 and r["seed"] == 7
    assert all(c["pass"] for c in r["checks"])


def test_verify_deterministic(capsys):
    a = run(capsys, "verify", "algebra", "--seed", "3", "--trials", "20")[1]
    b = run(capsys, "verify", "algebra", "--seed", "3", "--trials", "20")[1]
    assert a == b


def test_pretty(capsys):
    _, out, _ = run(capsys, "conj", oct_json(1, (1, 0, 0)), "--pretty")
    assert "\n  " in out


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "splitoct", "verify", "algebra", "--trials", "0"],
                       capture_output=True, text=True)
    assert p.returncode == 2
