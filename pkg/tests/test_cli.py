import json

import pytest

from stclab import io
from stclab.cli import main
from stclab.graph import SpanningTree, build_graph, complete_graph, cycle_graph
from stclab.reduction import star_family_tree


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def instances(tmp_path):
    paths = {}
    for name, data in {
        "d1": {"m": 1, "B": 30, "a": [9, 10, 11]},
        "shuffled": {"m": 2, "B": 60, "a": [25, 16, 20, 17, 23, 19]},
        "no2": {"m": 2, "B": 60, "a": [17, 17, 17, 23, 23, 23]},
        "badsum": {"m": 1, "B": 30, "a": [9, 10, 12]},
        "small": {"m": 1, "B": 9, "a": [3, 3, 3]},
    }.items():
        paths[name] = tmp_path / f"{name}.json"
        paths[name].write_text(json.dumps(data))
    return paths


@pytest.fixture
def k4(tmp_path):
    path = tmp_path / "k4.txt"
    io.write_graph(path, complete_graph(4), ("K4",))
    return path


class TestFormats:
    def test_graph_roundtrip(self, tmp_path):
        G = build_graph(5, [(0, 1), (1, 2), (3, 4), (0, 4)])
        io.write_graph(tmp_path / "g", G, ("hello",))
        text = (tmp_path / "g").read_text()
        assert text.splitlines()[:3] == ["c hello", "p edge 5 4", "e 1 2"]
        assert io.read_graph(tmp_path / "g") == G

    def test_graph_errors(self, tmp_path):
        cases = {
            "noheader": "e 1 2\n",
            "count": "p edge 3 2\ne 1 2\n",
            "loop": "p edge 3 1\ne 2 2\n",
            "range": "p edge 3 1\ne 1 4\n",
            "junk": "p edge 3 1\nx 1 2\n",
        }
        for name, text in cases.items():
            (tmp_path / name).write_text(text)
            with pytest.raises(io.FormatError):
                io.read_graph(tmp_path / name)

    def test_tree_roundtrip(self, tmp_path):
        G = cycle_graph(5)
        T = SpanningTree(G, G.edges[:4])
        io.write_tree(tmp_path / "t", T)
        assert io.read_tree(tmp_path / "t", G) == T
        (tmp_path / "bad").write_text("p tree 5\nt 1 3\nt 1 2\nt 2 3\nt 4 5\n")
        with pytest.raises(io.FormatError):
            io.read_tree(tmp_path / "bad", G)

    def test_order(self, tmp_path):
        (tmp_path / "o").write_text(io.format_order([2, 0, 1]))
        assert io.read_order(tmp_path / "o", 3) == [2, 0, 1]
        (tmp_path / "o").write_text("1 1 2\n")
        with pytest.raises(io.FormatError):
            io.read_order(tmp_path / "o", 3)

    def test_labels(self, tmp_path, d1):
        from stclab.reduction import labels_lines

        io.write_labels(tmp_path / "l", labels_lines(d1, "inst.json"))
        labels = io.read_labels(tmp_path / "l")
        assert labels.roles == list(d1.roles)
        assert labels.k == 90 and labels.perm == (0, 1, 2) and labels.meta["instance"] == "inst.json"
        lines = (tmp_path / "l").read_text().splitlines()
        assert "v 4 Y 1" in lines and "v 94 Z 80" in lines


class TestExactCommands:
    def test_solve(self, capsys, k4):
        code, rep = run(capsys, "solve", "--graph", k4)
        assert code == 0 and rep["status"] == "pass"
        assert rep["payload"]["stc"] == 3 and rep["payload"]["tree_count"] == 16
        assert rep["payload"]["witness"] == [[1, 2], [1, 3], [1, 4]]

    def test_decide_false_is_exit_zero(self, capsys, k4):
        code, rep = run(capsys, "decide", "--graph", k4, "-k", 2)
        assert code == 0 and rep["payload"]["answer"] is False

    def test_decide_true(self, capsys, k4):
        code, rep = run(capsys, "decide", "--graph", k4, "-k", 3)
        assert code == 0 and rep["payload"]["answer"] is True

    def test_budget(self, capsys, k4, monkeypatch):
        code, rep = run(capsys, "solve", "--graph", k4, "--budget", 5)
        assert code == 2 and "16 spanning trees" in rep["error"]
        monkeypatch.setenv("STC_LAB_BUDGET", "5")
        code, rep = run(capsys, "decide", "--graph", k4, "-k", 3)
        assert code == 2

    def test_eval_tree(self, capsys, k4, tmp_path):
        G = complete_graph(4)
        io.write_tree(tmp_path / "t", SpanningTree(G, ((0, 1), (1, 2), (2, 3))))
        code, rep = run(capsys, "eval-tree", "--graph", k4, "--tree", tmp_path / "t")
        assert code == 0
        assert rep["payload"]["max"] == 4 and rep["payload"]["argmax_edge"] == [2, 3]
        assert rep["payload"]["per_edge"] == [[1, 2, 3], [2, 3, 4], [3, 4, 3]]

    def test_check_pio(self, capsys, tmp_path):
        io.write_graph(tmp_path / "claw", build_graph(4, [(0, 1), (0, 2), (0, 3)]))
        (tmp_path / "o").write_text("2 1 3 4\n")
        code, rep = run(capsys, "check-pio", "--graph", tmp_path / "claw", "--order", tmp_path / "o")
        assert code == 1 and rep["payload"]["valid"] is False
        assert rep["payload"]["violation"] == [1, 3, 4]

    def test_missing_file(self, capsys, tmp_path):
        code, rep = run(capsys, "solve", "--graph", tmp_path / "nope")
        assert code == 2 and rep["status"] == "fail"

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["decide", "--graph", "x"])
        assert info.value.code == 2


class TestReductionCommands:
    def gen(self, capsys, tmp_path, inst, *extra):
        g, l = tmp_path / "g.txt", tmp_path / "l.txt"
        code, rep = run(capsys, "gen", "--instance", inst, "--out", g, "--labels", l, *extra)
        return code, rep, g, l

    def test_gen_audit(self, capsys, tmp_path, instances):
        code, rep, g, l = self.gen(capsys, tmp_path, instances["d1"], "--order", tmp_path / "o.txt")
        assert code == 0 and rep["payload"]["n"] == 94 and rep["payload"]["m_edges"] == 4074
        code, rep = run(capsys, "audit", "--graph", g, "--labels", l, "--instance", instances["d1"])
        assert code == 0 and rep["status"] == "pass"
        assert all(i["ok"] for i in rep["payload"]["audit"] + rep["payload"]["classify"])
        code, rep = run(capsys, "check-pio", "--graph", g, "--order", tmp_path / "o.txt")
        assert code == 0 and rep["payload"]["valid"]

    def test_audit_detects_deleted_edge(self, capsys, tmp_path, instances, d1):
        _, _, g, l = self.gen(capsys, tmp_path, instances["d1"])
        text = g.read_text().splitlines()
        victim = f"e {d1.y(2) + 1} {d1.z(5) + 1}"
        assert victim in text
        kept = [t for t in text if t != victim]
        kept = [("p edge 94 4073" if t.startswith("p edge") else t) for t in kept]
        g.write_text("\n".join(kept) + "\n")
        code, rep = run(capsys, "audit", "--graph", g, "--labels", l, "--instance", instances["d1"])
        assert code == 1 and rep["status"] == "fail"
        failed = {i["name"] for i in rep["payload"]["audit"] if not i["ok"]}
        assert "degrees" in failed

    def test_gen_bad_sum(self, capsys, tmp_path, instances):
        code, rep, _, _ = self.gen(capsys, tmp_path, instances["badsum"])
        assert code == 2 and "m*B" in rep["error"]

    def test_gen_no_normalize(self, capsys, tmp_path, instances):
        code, rep, _, _ = self.gen(capsys, tmp_path, instances["small"], "--no-normalize")
        assert code == 2
        code, rep, _, _ = self.gen(capsys, tmp_path, instances["small"])
        assert code == 0 and rep["payload"]["scale"] == 3 and rep["payload"]["k"] == 81

    def test_byte_stable(self, capsys, tmp_path, instances):
        outs = []
        for sub in ("a", "b"):
            d = tmp_path / sub
            d.mkdir()
            code, rep = run(capsys, "gen", "--instance", instances["shuffled"],
                            "--out", d / "g", "--labels", d / "l")
            del rep["timing"], rep["command"]
            outs.append(((d / "g").read_bytes(), (d / "l").read_bytes(), json.dumps(rep)))
        assert outs[0] == outs[1]

    def test_3part(self, capsys, instances):
        code, rep = run(capsys, "3part", "--instance", instances["shuffled"])
        assert code == 0 and rep["payload"]["answer"] is True
        # original order: 25 16 20 17 23 19
        groups = rep["payload"]["partition"]["groups"]
        a = [25, 16, 20, 17, 23, 19]
        assert all(sum(a[j] for j in g) == 60 for g in groups)
        code, rep = run(capsys, "3part", "--instance", instances["no2"])
        assert code == 0 and rep["payload"]["answer"] is False

    def test_witness_extract_chain(self, capsys, tmp_path, instances):
        _, _, g, l = self.gen(capsys, tmp_path, instances["shuffled"])
        _, rep = run(capsys, "3part", "--instance", instances["shuffled"])
        part = tmp_path / "p.json"
        part.write_text(json.dumps(rep["payload"]["partition"]))
        t = tmp_path / "t.txt"
        code, rep = run(capsys, "witness", "--graph", g, "--labels", l, "--partition", part, "--out", t)
        assert code == 0 and rep["payload"]["congestion"] == 180
        code, rep = run(capsys, "eval-tree", "--graph", g, "--tree", t)
        assert rep["payload"]["max"] == 180
        out = tmp_path / "back.json"
        code, rep = run(capsys, "extract", "--graph", g, "--labels", l, "--tree", t, "--out", out)
        assert code == 0
        assert rep["payload"]["partition"] == json.loads(part.read_text())
        assert json.loads(out.read_text()) == json.loads(part.read_text())

    def test_witness_rejects_bad_partition(self, capsys, tmp_path, instances):
        _, _, g, l = self.gen(capsys, tmp_path, instances["shuffled"])
        part = tmp_path / "p.json"
        part.write_text(json.dumps({"groups": [[0, 1, 2], [3, 4, 5]]}))
        code, rep = run(capsys, "witness", "--graph", g, "--labels", l, "--partition", part,
                        "--out", tmp_path / "t")
        assert code == 2 and "partition rejected" in rep["error"]

    def test_extract_over_k(self, capsys, tmp_path, instances, d1):
        _, _, g, l = self.gen(capsys, tmp_path, instances["d1"])
        t = tmp_path / "t.txt"
        io.write_tree(t, star_family_tree(d1, {1: 1, 2: 1, 3: 2}))
        code, rep = run(capsys, "extract", "--graph", g, "--labels", l, "--tree", t)
        assert code == 1 and "exceeds k=90" in rep["error"]

    def test_roundtrip_yes(self, capsys, tmp_path, instances):
        code, rep = run(capsys, "roundtrip", "--instance", instances["d1"], "--out-dir", tmp_path / "rt")
        assert code == 0 and rep["payload"]["witness_congestion"] == 90
        assert all(rep["payload"]["checks"].values())
        assert (tmp_path / "rt" / "witness.txt").exists()

    def test_roundtrip_no(self, capsys, instances):
        code, rep = run(capsys, "roundtrip", "--instance", instances["no2"], "--samples", 20, "--seed", 3)
        fam = rep["payload"]["star_family"]
        assert code == 0 and fam["assignments"] == 30 and fam["all_exceed_k"]
        assert rep["payload"]["yes_instance"] is False
