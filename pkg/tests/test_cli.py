import io as _io
import json
import re
import subprocess
import sys

import numpy as np
import pytest

from diamond_lab import io
from diamond_lab.cli import run
from diamond_lab.matcore import sample, unit
from diamond_lab.preservers import LinearMap, left_multiplication, make_canonical


def call(*argv, env_seed=None, monkeypatch=None):
    out, err = _io.StringIO(), _io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def parse_dot(text):
    """Minimal DOT reader: returns (nodes, edges) or raises ValueError."""
    body = re.fullmatch(r"\s*digraph\s+\w+\s*\{(.*)\}\s*", text, re.S)
    if not body:
        raise ValueError("not a digraph")
    nodes, edges = {}, []
    for stmt in filter(None, (s.strip() for s in body.group(1).split(";"))):
        if m := re.fullmatch(r'(\w+)\s*->\s*(\w+)', stmt):
            edges.append(m.groups())
        elif m := re.fullmatch(r'(\w+)\s*\[label="([^"]*)"\]', stmt):
            nodes[m.group(1)] = m.group(2)
        elif not re.fullmatch(r"\w+\s*=\s*\w+", stmt):
            raise ValueError(f"bad statement {stmt!r}")
    for e in edges:
        if not set(e) <= set(nodes):
            raise ValueError(f"edge {e} uses an undeclared node")
    return nodes, edges


def _acyclic(nodes, edges):
    import networkx as nx
    g = nx.DiGraph(edges)
    g.add_nodes_from(nodes)
    return nx.is_directed_acyclic_graph(g)


class TestOrder:
    def test_worked_example_diamond_holds(self, data_dir):
        code, out, err = call("order", "--kind", "diamond",
                              data_dir / "example_a.mat", data_dir / "example_apu.mat")
        assert code == 0 and err == ""
        assert "verdict: holds" in out and "witness.x:" in out

    def test_worked_example_star_fails(self, data_dir):
        code, out, _ = call("order", "--kind", "star",
                            data_dir / "example_a.mat", data_dir / "example_apu.mat")
        assert code == 1 and "verdict: fails" in out

    def test_sharp_inapplicable(self, tmp_path):
        io.write_matrix(tmp_path / "n.mat", unit(2, 0, 1))
        io.write_matrix(tmp_path / "i.mat", np.eye(2))
        code, out, _ = call("order", "--kind", "sharp", tmp_path / "n.mat", tmp_path / "i.mat")
        assert code == 2

    def test_json_output(self, data_dir):
        code, out, _ = call("order", "--json", data_dir / "example_a.mat",
                            data_dir / "example_apu.mat")
        doc = json.loads(out)
        assert code == 0 and doc["holds"] and "x" in doc["witnesses"]

    def test_unknown_kind(self, data_dir):
        code, out, err = call("order", "--kind", "nope", data_dir / "example_a.mat",
                              data_dir / "example_u.mat")
        assert code > 2 and out == "" and "nope" in err

    def test_missing_file_named(self, tmp_path, data_dir):
        code, _, err = call("order", data_dir / "example_a.mat", tmp_path / "ghost.mat")
        assert code > 2 and "ghost.mat" in err

    def test_shape_mismatch_named(self, tmp_path, data_dir):
        io.write_matrix(tmp_path / "big.mat", np.eye(3))
        code, _, err = call("order", data_dir / "example_a.mat", tmp_path / "big.mat")
        assert code > 2 and "big.mat" in err

    def test_bad_flag(self, data_dir):
        code, _, err = call("order", "--frobnicate", data_dir / "example_a.mat")
        assert code > 2 and err

    def test_tolerance_flags_change_verdict(self, tmp_path):
        io.write_matrix(tmp_path / "a.mat", np.diag([1.0, 0]))
        io.write_matrix(tmp_path / "b.mat", np.diag([1.0 + 1e-6, 0]))
        assert call("order", tmp_path / "a.mat", tmp_path / "b.mat")[0] == 1
        assert call("order", "--tol-abs", "1e-3", tmp_path / "a.mat", tmp_path / "b.mat")[0] == 0


class TestInverses:
    def test_pinv_writes_output(self, tmp_path):
        io.write_matrix(tmp_path / "a.mat", [[0, 2], [0, 0]])
        code, out, _ = call("pinv", tmp_path / "a.mat", "-o", tmp_path / "g.mat")
        assert code == 0 and "residual.r1" in out
        assert np.allclose(io.read_matrix(tmp_path / "g.mat"), [[0, 0], [0.5, 0]])

    def test_group_inverse_missing(self, tmp_path):
        io.write_matrix(tmp_path / "n.mat", unit(2, 0, 1))
        code, out, _ = call("ginv", tmp_path / "n.mat")
        assert code == 1 and "none" in out

    def test_inner_inverse(self, tmp_path):
        io.write_matrix(tmp_path / "b.mat", np.diag([1.0, 0]))
        io.write_matrix(tmp_path / "v.mat", [[0, 1], [1, 0]])
        code, out, _ = call("ginv", "--kind", "inner", "--v", tmp_path / "v.mat",
                            tmp_path / "b.mat", "--json")
        g = io.doc_to_matrix(json.loads(out)["inner_inverse"])
        assert code == 0 and np.allclose(np.diag([1.0, 0]) @ g @ np.diag([1.0, 0]), np.diag([1.0, 0]))


class TestHasse:
    def test_fixture_dir(self, data_dir, tmp_path):
        out_file = tmp_path / "h.dot"
        code, _, _ = call("hasse", "--kind", "diamond", data_dir, "-o", out_file)
        nodes, edges = parse_dot(out_file.read_text())
        assert code == 0
        assert sorted(nodes.values()) == ["example_a", "example_apu", "example_u"]
        named = {(nodes[a], nodes[b]) for a, b in edges}
        assert named == {("example_a", "example_apu"), ("example_u", "example_apu")}
        assert _acyclic(nodes, edges)

    def test_space_preorder_still_acyclic(self, tmp_path):
        for k, m in enumerate([np.eye(2), 2 * np.eye(2), unit(2, 0, 0), np.zeros((2, 2))]):
            io.write_matrix(tmp_path / f"m{k}.mat", m)
        code, out, _ = call("hasse", "--kind", "space", tmp_path)
        nodes, edges = parse_dot(out)
        assert code == 0 and _acyclic(nodes, edges)

    def test_sharp_warns_on_stderr(self, tmp_path):
        io.write_matrix(tmp_path / "n.mat", unit(2, 0, 1))
        io.write_matrix(tmp_path / "i.mat", np.eye(2))
        code, out, err = call("hasse", "--kind", "sharp", tmp_path)
        assert code == 0 and "warning" in err
        parse_dot(out)

    def test_empty_dir(self, tmp_path):
        code, _, err = call("hasse", tmp_path)
        assert code > 2 and "no .mat" in err


class TestPreserverCommands:
    def test_check_canonical(self, tmp_path):
        io.write_map(tmp_path / "t.map", make_canonical(2.0, sample("unitary", 2, 0), np.eye(2)))
        code, out, _ = call("preserver-check", tmp_path / "t.map", "--pairs", "100")
        assert code == 0 and "backward_ok: True" in out

    def test_check_diagonal_multiplier(self, tmp_path):
        io.write_map(tmp_path / "t.map", left_multiplication(np.diag([1.0, 2.0])))
        code, out, _ = call("preserver-check", tmp_path / "t.map", "--pairs", "300")
        assert code == 1 and "counterexample.a" in out

    def test_decompose(self, tmp_path):
        io.write_map(tmp_path / "t.map", make_canonical(1, np.eye(2), np.eye(2), True))
        code, out, _ = call("preserver-decompose", tmp_path / "t.map")
        assert code == 0 and "flavor: anti_iso" in out and "residual.reconstruction" in out

    def test_decompose_neither(self, tmp_path):
        T = LinearMap.from_function(lambda x: x + unit(2, 0, 0) * np.trace(x), 2)
        io.write_map(tmp_path / "t.map", T)
        code, out, _ = call("preserver-decompose", tmp_path / "t.map")
        assert code == 1 and "flavor: neither" in out


class TestProps:
    def test_deterministic(self):
        a = call("props", "--suite", "orders", "--seed", "7", "--pairs", "60")
        b = call("props", "--suite", "orders", "--seed", "7", "--pairs", "60")
        assert a == b and a[0] == 0 and "PASS" in a[1]

    def test_env_seed(self, monkeypatch):
        monkeypatch.setenv("DIAMOND_LAB_SEED", "7")
        env = call("props", "--suite", "geninv", "--pairs", "20")
        flag = call("props", "--suite", "geninv", "--pairs", "20", "--seed", "7")
        assert env == flag and "seed: 7" in env[1]

    def test_bad_suite_and_sizes(self):
        assert call("props", "--suite", "nope")[0] > 2
        assert call("props", "--n", "2,x")[0] > 2

    def test_module_entry_point(self, data_dir):
        proc = subprocess.run(
            [sys.executable, "-m", "diamond_lab", "order", "--kind", "star",
             str(data_dir / "example_a.mat"), str(data_dir / "example_apu.mat")],
            capture_output=True, text=True)
        assert proc.returncode == 1 and "verdict: fails" in proc.stdout
