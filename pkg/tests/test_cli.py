import json
import math
import os
import subprocess
import sys

import pytest

from srkit import serialize as js
from srkit.cli import COMMANDS, dumps, main, run, run_batch
from srkit.quat import I, J, K, Quaternion
from srkit.starpoly import QPoly, qpoly, star_mul

Q_MINUS_I = {"min_degree": 0, "coeffs": [[0, -1, 0, 0], [1, 0, 0, 0]]}
Q_MINUS_J = {"min_degree": 0, "coeffs": [[0, 0, -1, 0], [1, 0, 0, 0]]}
Q_SQUARED = {"coeffs": [[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]]}


def ok(request, **kw):
    resp, code = run(request, **kw)
    assert code == 0, resp
    assert resp["status"] == "ok"
    return resp


def test_mul_example():
    resp = ok({"command": "mul", "payload": {"f": Q_MINUS_I, "g": Q_MINUS_J}})
    f = js.qpoly_from_json(resp["result"], "exact")
    assert f == qpoly(K, -I - J, 1)


def test_eval_example():
    resp = ok({"command": "eval", "payload": {"f": Q_SQUARED, "q": [0, 0, 1, 0]}})
    assert resp["result"] == ["-1", "0", "0", "0"]
    resp = ok({"command": "eval", "payload": {"f": Q_SQUARED, "x": 0, "y": 1, "J": [0, 0, 0, 1]}})
    assert resp["result"] == ["-1", "0", "0", "0"]


def test_exp_example():
    resp = ok({"command": "exp", "payload": {"f": {"coeffs": [[0, 2 * math.pi, 0, 0]]}}},
              backend="float")
    val = js.qpoly_from_json(resp["result"], "float").coeff(0)
    assert abs(val - 1) < 1e-9
    assert any(d.startswith("terms=") for d in resp["diagnostics"])


def test_every_command_answers():
    f = {"coeffs": [["1/2", 0, 0, 0], [0, 1, 0, 0], [1, 0, 0, 0]]}
    sphere = {"type": "sphere", "a": 0, "r": 1}
    pair = {"r_inner": 0.5, "r_outer": 2.0}
    small = {"min_degree": -1, "coeffs": [[0, 0, 0, 0.03], [1, 0, 0, 0], [0, 0.05, 0, 0]]}
    requests = {
        "eval": {"f": f, "q": [1, 1, 0, 0]},
        "mul": {"f": f, "g": f},
        "conj": {"f": f},
        "symm": {"f": f},
        "inv": {"f": f},
        "components": {"f": f},
        "matrep": {"f": f},
        "det": {"f": f},
        "exp": {"f": {"coeffs": [[0, 1, 0, 0]]}},
        "log": {"f": {"coeffs": [["11/10", 0, 0, 0]]}},
        "zeros": {"f": Q_SQUARED},
        "build-zeros": {"divisor": [{"node": sphere, "order": 2}]},
        "divisor": {"divisor": [{"node": sphere, "order": 2},
                                {"node": {"type": "point", "q": [0, 0, 0, 0]}, "order": -1}]},
        "jet": {"f": Q_SQUARED, "q": [0, 1, 0, 0], "order": 2},
        "sjet": {"f": Q_SQUARED, "sphere": sphere, "anchor": [0, 1, 0, 0], "order": 1},
        "interpolate": {"spec": [{"node": [0, 1, 0, 0], "jet": {"coeffs": [[0, 0, 0, 0]]}},
                                 {"node": [1, 0, 0, 0], "jet": {"coeffs": [[1, 0, 0, 0]]}}]},
        "split-add": {"gamma": small, "pair": pair},
        "split-mul": {"c": small, "pair": pair},
        "glue": {"transitions": [{"link": [0, 1], "f": small}]},
    }
    assert set(requests) == set(COMMANDS)
    for command, payload in requests.items():
        ok({"command": command, "payload": payload})


def test_command_results():
    resp = ok({"command": "zeros", "payload": {"f": {"coeffs": [1, 0, 1]}}})
    assert resp["result"] == [{"kind": "SphericalZero", "multiplicity": 2,
                               "location": {"type": "sphere", "a": "0", "r": "1"}}]
    resp = ok({"command": "jet", "payload": {"f": Q_SQUARED, "q": [0, 1, 0, 0], "order": 2}})
    assert resp["result"]["coeffs"] == [["-1", "0", "0", "0"], ["0", "2", "0", "0"],
                                        ["1", "0", "0", "0"]]
    resp = ok({"command": "divisor", "payload": {"f": {"numerator": {"coeffs": [1, 0, 1]},
                                                       "denominator": {"coeffs": [0, 1]}}}})
    got = js.divisor_from_json(resp["result"], "exact")
    assert got == js.divisor_from_json(
        [{"node": {"type": "sphere", "a": 0, "r": 1}, "order": 2},
         {"node": [0, 0, 0, 0], "order": -1}], "exact")
    resp = ok({"command": "split-add", "payload": {"gamma": {"min_degree": -1, "coeffs": [1, 1, 1]},
                                                   "pair": {"r_inner": 0.5, "r_outer": 2}}})
    assert js.qpoly_from_json(resp["result"]["alpha"], "exact") == QPoly([1], -1)
    assert js.qpoly_from_json(resp["result"]["beta"], "exact") == qpoly(1, 1)


def test_determinism():
    req = {"command": "mul", "payload": {"f": Q_MINUS_I, "g": {"coeffs": [["1/3", "2", 0, "-7/5"]]}}}
    outs = {dumps(run(req)[0]) for _ in range(5)}
    assert len(outs) == 1


def test_qpoly_results_reparse():
    for command in ("mul", "conj", "symm"):
        resp = ok({"command": command, "payload": {"f": Q_MINUS_I, "g": Q_MINUS_J}})
        js.qpoly_from_json(resp["result"], "exact")
    resp = ok({"command": "mul", "payload": {"f": Q_MINUS_I, "g": Q_MINUS_J}}, backend="float")
    f = js.qpoly_from_json(resp["result"], "float")
    assert f.close_to(star_mul(QPoly.linear(I), QPoly.linear(J)), 1e-15)


@pytest.mark.parametrize("request_, code, exit_code", [
    ({"command": "nope"}, "UnknownCommand", 2),
    ([1, 2], "MalformedInput", 2),
    ({"command": "mul", "payload": {"f": Q_MINUS_I}}, "MalformedInput", 2),
    ({"command": "eval", "payload": {"f": {"coeffs": [[1, 2, 3]]}, "q": [0, 0, 0, 0]}},
     "MalformedInput", 2),
    ({"command": "eval", "payload": {"f": Q_SQUARED, "q": [0, 0, 0, 0]}, "backend": "quad"},
     "MalformedInput", 2),
    ({"command": "inv", "payload": {"f": {"coeffs": []}}}, "ZeroFunction", 1),
    ({"command": "zeros", "payload": {"f": {"coeffs": [0]}}}, "ZeroFunction", 1),
    ({"command": "build-zeros", "payload": {"divisor": [
        {"node": [0, 1, 0, 0], "order": 1}, {"node": [0, 0, 1, 0], "order": 1}]}},
     "ConflictingNodes", 1),
    ({"command": "eval", "payload": {"f": {"min_degree": -1, "coeffs": [1]}, "q": [0, 0, 0, 0]}},
     "PoleAtZero", 1),
    ({"command": "split-mul", "payload": {"c": {"coeffs": [3]},
                                          "pair": {"r_inner": 0.5, "r_outer": 2}}},
     "OutsideConvergence", 1),
])
def test_error_codes(request_, code, exit_code):
    resp, status = run(request_)
    assert status == exit_code
    assert resp["status"] == "error" and resp["result"]["code"] == code


def test_batch():
    reqs = [{"command": "eval", "payload": {"f": Q_SQUARED, "q": [0, 0, 1, 0]}},
            {"command": "bogus"},
            {"command": "symm", "payload": {"f": Q_MINUS_I}}]
    out, status = run_batch(reqs)
    assert [r["status"] for r in out] == ["ok", "error", "ok"]
    assert status == 2


def test_main_files(tmp_path):
    src = tmp_path / "req.json"
    dst = tmp_path / "resp.json"
    src.write_text(json.dumps({"command": "eval", "payload": {"f": Q_SQUARED, "q": [0, 0, 1, 0]}}))
    assert main(["--input", str(src), "--output", str(dst)]) == 0
    assert json.loads(dst.read_text())["result"] == ["-1", "0", "0", "0"]
    src.write_text("{not json")
    assert main(["--input", str(src), "--output", str(dst)]) == 2


def test_backend_flag_and_env(tmp_path):
    src = tmp_path / "req.json"
    src.write_text(json.dumps({"command": "eval", "payload": {"f": Q_SQUARED, "q": ["1/2", 0, 0, 0]}}))
    env = dict(os.environ, SRKIT_BACKEND="float")
    cmd = [sys.executable, "-m", "srkit.cli", "--input", str(src)]
    out = subprocess.run(cmd, capture_output=True, text=True, env=env, check=True)
    assert json.loads(out.stdout)["result"] == [0.25, 0.0, 0.0, 0.0]
    out = subprocess.run(cmd + ["--backend", "exact"], capture_output=True, text=True,
                         env=env, check=True)
    assert json.loads(out.stdout)["result"] == ["1/4", "0", "0", "0"]


def test_exit_code_from_process():
    cmd = [sys.executable, "-m", "srkit.cli"]
    out = subprocess.run(cmd, input='{"command": "zeros", "payload": {"f": {"coeffs": [0]}}}',
                         capture_output=True, text=True)
    assert out.returncode == 1
    assert json.loads(out.stdout)["result"]["code"] == "ZeroFunction"


def test_serialize_round_trips():
    f = QPoly([Quaternion(1, 2, 3, 4), Quaternion(0.5, 0, 0, 0)], -1)
    assert js.qpoly_from_json(json.loads(json.dumps(js.qpoly_to_json(f))), "float") == f
    g = qpoly(Quaternion(1, -2, 0, 3), 1)
    assert js.qpoly_from_json(js.qpoly_to_json(g), "exact") == g
