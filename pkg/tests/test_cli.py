import json

import pytest

from lensdinv.cli import main
from lensdinv.plumbing import PlumbingGraph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out) if out.strip().startswith("{") else out


class TestLensCommand:
    def test_all_values_l51(self, capsys):
        code, rec = run_json(capsys, "lens", "5", "1", "--all")
        assert code == 0
        assert list(rec["values"].values()) == ["1", "1/5", "-1/5", "-1/5", "1/5"]

    def test_sphere(self, capsys):
        code, rec = run_json(capsys, "lens", "1", "1")
        assert code == 0
        assert rec["values"] == {"0": "0"}

    def test_non_coprime_exits_2(self, capsys):
        assert main(["lens", "4", "2"]) == 2

    def test_self_conjugate_flag(self, capsys):
        code, rec = run_json(capsys, "lens", "10", "1", "--self-conjugate")
        assert code == 0
        assert rec["self_conjugate"] == {"0": "9/4", "5": "-1/4"}

    def test_single_label(self, capsys):
        code, rec = run_json(capsys, "lens", "7", "3", "1")
        assert code == 0
        assert rec["d"] == "1/2"


@pytest.fixture
def graph_file(tmp_path):
    def write(name, weights, edges):
        path = tmp_path / name
        PlumbingGraph(weights, edges).save(path)
        return str(path)
    return write


class TestPlumbingCommand:
    def test_single_vertex(self, capsys, graph_file):
        path = graph_file("one.json", [-2], [])
        code, rec = run_json(capsys, "plumbing", path)
        assert code == 0
        assert sorted(c["d"] for c in rec["classes"]) == ["-1/4", "1/4"]

    def test_two_chain(self, capsys, graph_file):
        path = graph_file("two.json", [-2, -2], [(0, 1)])
        code, rec = run_json(capsys, "plumbing", path)
        assert code == 0
        assert sorted(c["d"] for c in rec["classes"]) == ["-1/6", "-1/6", "1/2"]

    def test_positive_definite_exits_3(self, capsys, graph_file):
        path = graph_file("bad.json", [2], [])
        assert main(["plumbing", path]) == 3

    def test_missing_file_exits_2(self, capsys):
        assert main(["plumbing", "/nonexistent/graph.json"]) == 2

    def test_class_lookup(self, capsys, graph_file):
        path = graph_file("two.json", [-2, -2], [(0, 1)])
        code, rec = run_json(capsys, "plumbing", path, "--class", "0,0")
        assert code == 0
        assert rec["d"] == "1/2"

    def test_oracle_matches_pruned(self, capsys, graph_file):
        path = graph_file("chain.json", [-2] * 5, [(i, i + 1) for i in range(4)])
        _, fast = run_json(capsys, "plumbing", path)
        _, brute = run_json(capsys, "plumbing", path, "--oracle")
        assert fast["classes"] == brute["classes"]


class TestSeifertCommand:
    def test_route_both_agrees(self, capsys):
        code, rec = run_json(capsys, "seifert", "9", "3", "0", "--route", "both")
        assert code == 0
        assert rec["cross_check"] == "AGREE"
        assert rec["closed"] == {"d_self_conjugate": "0", "d_shifted": "2"}

    def test_route_closed(self, capsys):
        code, rec = run_json(capsys, "seifert", "9", "2", "-1",
                             "--route", "closed")
        assert code == 0
        assert rec["closed"]["d_self_conjugate"] == "1"

    def test_large_slope_exits_2(self, capsys):
        assert main(["seifert", "9", "2", "4"]) == 2

    def test_lens_slope_closed_route(self, capsys):
        code, rec = run_json(capsys, "seifert", "9", "2", "1")
        assert code == 0
        assert rec["lens_model"] == [5, 1]
        assert rec["closed"]["d_self_conjugate"] == "1"

    def test_lens_slope_algorithm_exits_2(self, capsys):
        assert main(["seifert", "9", "2", "1", "--route", "algorithm"]) == 2

    def test_emit_graph(self, capsys, tmp_path):
        out = tmp_path / "m930.json"
        code, rec = run_json(capsys, "seifert", "9", "3", "0",
                             "--emit-graph", str(out))
        assert code == 0 and rec["graph_file"] == str(out)
        assert PlumbingGraph.load(out).size == 9


class TestObstructCommand:
    def test_survivor(self, capsys):
        code, rec = run_json(capsys, "obstruct", "9", "2", "1", "-1")
        assert code == 0
        assert rec["s"] == -5
        assert rec["kind"] == "inconclusive"

    def test_obstructed(self, capsys):
        code, rec = run_json(capsys, "obstruct", "9", "3", "2", "+1")
        assert code == 0
        assert rec["kind"] == "obstructed"
        assert rec["reason"] == "non-cyclic-homology"

    def test_bad_sign_exits_2(self, capsys):
        assert main(["obstruct", "9", "2", "1", "2"]) == 2


class TestClassifyCommand:
    def test_single_n(self, capsys):
        code, rec = run_json(capsys, "classify", "9")
        assert code == 0
        assert set(rec["classification"]["9"]) == {1, -1, 5, 8, 9, 10, 13, -5}

    def test_range(self, capsys):
        code, rec = run_json(capsys, "classify", "--range", "5:9")
        assert code == 0
        assert sorted(rec["classification"]) == ["5", "7", "9"]
        assert set(rec["classification"]["5"]) == {1, -1, 4, 5, 6, 9, -5, -9}

    def test_csv(self, capsys):
        code, out = run(capsys, "classify", "9", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,s,status,provenance,citation"
        assert any(line.startswith("9,-5,inconclusive") for line in lines)

    def test_even_n_exits_2(self, capsys):
        assert main(["classify", "8"]) == 2


class TestOracleCommand:
    def test_maximisers_verified(self, capsys):
        code, rec = run_json(capsys, "oracle", "maximisers", "9", "3", "0",
                             "--verify")
        assert code == 0
        assert rec["count"] == rec["expected"] == 9
        assert rec["cross_check"] == "AGREE"


class TestCrossCheckFailure:
    def test_route_disagreement_exits_4(self, capsys, monkeypatch):
        # force the closed route to lie; the cross check must catch it
        import lensdinv.cli as cli
        monkeypatch.setattr(cli.seifert, "dinv_closed_tM",
                            lambda params: 99)
        code, out = run(capsys, "seifert", "9", "3", "0", "--route", "both")
        assert code == 4
        assert json.loads(out)["cross_check"] == "DISAGREE"


class TestModuleEntryPoint:
    def test_python_dash_m(self):
        import subprocess
        import sys
        proc = subprocess.run(
            [sys.executable, "-m", "lensdinv.cli", "lens", "5", "1", "--all"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["values"]["0"] == "1"


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ("lens", "12", "5", "--all", "--self-conjugate"),
        ("classify", "9"),
        ("obstruct", "13", "3", "2", "-1"),
        ("seifert", "9", "3", "0", "--route", "both"),
    ])
    def test_identical_invocations_identical_bytes(self, capsys, argv):
        _, first = run(capsys, *argv)
        _, second = run(capsys, *argv)
        assert first == second

    def test_jobs_flag_does_not_change_output(self, capsys, graph_file):
        path = graph_file("g.json", [-2] * 6, [(i, i + 1) for i in range(5)])
        _, one = run(capsys, "plumbing", path, "--jobs", "1")
        _, two = run(capsys, "plumbing", path, "--jobs", "2")
        assert one == two
