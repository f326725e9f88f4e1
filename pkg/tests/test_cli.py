import json
import subprocess
import sys

import pytest

L2_DOC = {
    "nodes": ["1"],
    "arrows": [
        {"id": "l1", "tail": "1", "head": "1"},
        {"id": "l2", "tail": "1", "head": "1"},
    ],
    "sigma_nodes": {"1": "1"},
    "sigma_arrows": {"l1": "l1", "l2": "l2"},
    "s": {"1": 1},
    "tau": {"l1": -1, "l2": -1},
}


def run_cli(args):
    proc = subprocess.run(
        [sys.executable, "-m", "hallforge.cli"] + args,
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture()
def l2_path(tmp_path):
    p = tmp_path / "L2.json"
    p.write_text(json.dumps(L2_DOC))
    return str(p)


def test_dt_invariants_table(l2_path):
    code, out, _ = run_cli(["dt-invariants", "--quiver", l2_path, "--max-dim", "2", "--window", "12"])
    assert code == 0
    assert out.splitlines() == ["t^1 : -q^{-1/2}", "t^2 : q^-2"]


def test_byte_determinism(l2_path):
    args = ["ori-invariants", "--quiver", l2_path, "--max-dim", "5", "--window", "14", "--format", "json"]
    _, out1, _ = run_cli(args)
    _, out2, _ = run_cli(args)
    assert out1 == out2 and out1


def test_series_json_roundtrip(l2_path):
    code, out, _ = run_cli(["dt-series", "--quiver", l2_path, "--max-dim", "3", "--window", "10", "--format", "json"])
    assert code == 0
    from hallforge.quiver import parse_quiver
    from hallforge.series import QSeries, dt_series

    q = parse_quiver(L2_DOC)
    back = QSeries.from_json_dict(q, json.loads(out))
    ok, _ = back.agrees_with(dt_series(q, 3, 10))
    assert ok


def test_missing_file_exit2():
    code, _, err = run_cli(["dt-series", "--quiver", "/nonexistent/q.json"])
    assert code == 2 and "error" in err


def test_malformed_doc_exit2(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"nodes": ["1"]}')
    code, _, err = run_cli(["dt-series", "--quiver", str(p)])
    assert code == 2


def test_check_property_pass(l2_path):
    code, out, _ = run_cli(["check", "--property", "module-relation", "--quiver", l2_path, "--seed", "7"])
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True and doc["property"] == "module-relation"


def test_check_factorization(l2_path):
    code, out, _ = run_cli([
        "check", "--property", "factorization", "--quiver", l2_path,
        "--max-dim", "5", "--window", "10",
    ])
    assert code == 0 and json.loads(out)["pass"] is True


def test_mul_act_files(tmp_path, l2_path):
    from hallforge.coha import CohaElement
    from hallforge.cohm import CohmElement
    from hallforge.poly import Poly
    from hallforge.quiver import parse_quiver

    q = parse_quiver(L2_DOC)
    f = CohaElement(q, (1,), Poly.variable(1, 0))
    g = CohmElement.unit(q, (1,))
    fp = tmp_path / "f.json"
    fp.write_text(json.dumps(f.to_json_dict()))
    gp = tmp_path / "g.json"
    gp.write_text(json.dumps(f.to_json_dict()))
    code, out, _ = run_cli(["mul", "--quiver", l2_path, "--lhs", str(fp), "--rhs", str(gp)])
    assert code == 0
    doc = json.loads(out)
    assert doc["d"] == [2]
    mp = tmp_path / "m.json"
    mp.write_text(json.dumps(g.to_json_dict()))
    code, out, _ = run_cli(["act", "--quiver", l2_path, "--coha", str(fp), "--cohm", str(mp)])
    assert code == 0
    assert json.loads(out)["d"] == [3]


def test_dilog_check_cli():
    code, out, _ = run_cli(["dilog-check", "--type", "A2", "--orient", ">", "--duality", "orth", "--max-dim", "4", "--window", "12"])
    assert code == 0 and json.loads(out)["pass"] is True


def test_thom_cli(tmp_path):
    mp = tmp_path / "mults.json"
    mp.write_text(json.dumps({"1,1": 1, "2,2": 1, "1,2": 0}))
    code, out, _ = run_cli(["thom", "--type", "A2", "--orient", ">", "--duality", "symp", "--mults", str(mp)])
    assert code == 0
    doc = json.loads(out)
    assert doc["d"] == [1, 1]
    assert doc["poly"] == [{"exp": {"z:01:1": 1}, "c": "-2"}]


def test_pbw_check_cli():
    code, out, _ = run_cli(["pbw-check", "coha", "--type", "A2", "--orient", ">", "--duality", "orth", "--bound", "2", "--window", "6"])
    assert code == 0 and json.loads(out)["pass"] is True


def test_unknown_property(l2_path):
    code, _, err = run_cli(["check", "--property", "nonsense", "--quiver", l2_path])
    assert code == 2


def test_table_renders_minimal_l0(tmp_path):
    p = tmp_path / "L0.json"
    p.write_text(json.dumps({
        "nodes": ["1"], "arrows": [], "sigma_nodes": {"1": "1"},
        "sigma_arrows": {}, "s": {"1": 1}, "tau": {},
    }))
    code, out, _ = run_cli(["dt-invariants", "--quiver", str(p), "--max-dim", "3", "--window", "8"])
    assert code == 0 and out == "t^1 : -q^{1/2}\n"


def test_property_failure_exit1(tmp_path):
    p = tmp_path / "A2.json"
    p.write_text(json.dumps({
        "nodes": ["1", "2"],
        "arrows": [{"id": "a", "tail": "1", "head": "2"}],
        "sigma_nodes": {"1": "2", "2": "1"},
        "sigma_arrows": {"a": "a"},
        "s": {"1": 1, "2": 1},
        "tau": {"a": -1},
    }))
    # weight-parity additivity is a sigma-symmetric statement; on a
    # non-sigma-symmetric quiver the suite must report a counterexample
    code, out, _ = run_cli(["check", "--property", "parity", "--quiver", str(p), "--seed", "3"])
    assert code == 1
    doc = json.loads(out)
    assert doc["pass"] is False and doc["counterexample"] is not None


def test_thread_pool_byte_identical(l2_path):
    import os

    args = ["ori-invariants", "--quiver", l2_path, "--max-dim", "5", "--window", "12", "--format", "json"]
    env = dict(os.environ)
    env["HALLFORGE_THREADS"] = "0"
    seq = subprocess.run(
        [sys.executable, "-m", "hallforge.cli"] + args, capture_output=True, text=True, env=env
    )
    env["HALLFORGE_THREADS"] = "3"
    par = subprocess.run(
        [sys.executable, "-m", "hallforge.cli"] + args, capture_output=True, text=True, env=env
    )
    assert seq.returncode == par.returncode == 0
    assert seq.stdout == par.stdout
