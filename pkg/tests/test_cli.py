"""End-to-end CLI tests through main(argv): exit codes, file outputs, and
the solve -> verify -> decode pipeline."""

import json

import pytest

from electiongame.cli import EXIT_ERROR, EXIT_NO, EXIT_YES, main


GRAPH_PATH3 = "p graph 3 2\ne 1 2\ne 2 3\n"
GRAPH_EDGE = "p graph 2 1 2\ne 1 2\nn 1 1\nn 2 2\n"

REC_ELECTION = {
    "candidates": ["alice", "bob"],
    "tie_order": ["bob", "alice"],
    "districts": [
        {"name": "north", "weight": 1, "gamma": 3},
        {"name": "south", "weight": 1, "gamma": 2},
    ],
    "votes_original": {"north": {"alice": 2, "bob": 1}, "south": {"alice": 2}},
    "votes_manipulated": {"north": {"bob": 3}, "south": {"alice": 2}},
    "problem": {"kind": "rec", "rule": "pv", "preferred": "alice",
                "budget_defender": 1},
}

MAN_ELECTION = {
    "candidates": ["alice", "bob"],
    "tie_order": ["bob", "alice"],
    "districts": [
        {"name": "north", "weight": 1, "gamma": 3},
        {"name": "south", "weight": 1, "gamma": 0},
    ],
    "votes_original": {"north": {"alice": 3}, "south": {"bob": 1}},
    "problem": {"kind": "man", "rule": "pv", "preferred": "bob",
                "budget_attacker": 1, "budget_defender": 0},
}


@pytest.fixture
def rec_file(tmp_path):
    path = tmp_path / "rec.json"
    path.write_text(json.dumps(REC_ELECTION))
    return str(path)


@pytest.fixture
def man_file(tmp_path):
    path = tmp_path / "man.json"
    path.write_text(json.dumps(MAN_ELECTION))
    return str(path)


class TestSolve:
    def test_rec_yes(self, rec_file, capsys):
        assert main(["solve", rec_file]) == EXIT_YES
        out = capsys.readouterr().out
        assert "decision: yes" in out
        assert "witness: recount north" in out
        assert "scores after recounting" in out

    def test_rec_no_with_budget_override(self, rec_file, capsys):
        assert main(["solve", rec_file, "--budget-d", "0"]) == EXIT_NO
        assert "decision: no" in capsys.readouterr().out

    def test_rule_override(self, rec_file):
        # under PD alice wins the south district outright even unrecounted
        assert main(["solve", rec_file, "--rule", "pd", "--budget-d", "0"]) == EXIT_NO
        assert main(["solve", rec_file, "--rule", "pd"]) == EXIT_YES

    def test_man_yes_writes_witness(self, man_file, tmp_path, capsys):
        witness_path = str(tmp_path / "witness.json")
        code = main(["solve", man_file, "--witness-out", witness_path])
        assert code == EXIT_YES
        out = capsys.readouterr().out
        assert "witness: touch north" in out
        data = json.loads(open(witness_path).read())
        assert data["kind"] == "man" and data["touched"] == ["north"]

    def test_man_budget_zero_is_no(self, man_file):
        assert main(["solve", man_file, "--budget-a", "0"]) == EXIT_NO

    def test_budget_a_rejected_for_rec(self, rec_file, capsys):
        assert main(["solve", rec_file, "--budget-a", "1"]) == EXIT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_kernel_and_threads_flags(self, rec_file):
        assert main(["solve", rec_file, "--kernel", "python", "--threads", "2"]) == EXIT_YES

    def test_missing_file_is_error(self, capsys):
        assert main(["solve", "/nonexistent.json"]) == EXIT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_malformed_file_is_error(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{}")
        assert main(["solve", str(path)]) == EXIT_ERROR
        assert "error:" in capsys.readouterr().err


class TestReduceVerifyDecodePipeline:
    def test_ds_pipeline(self, tmp_path, capsys):
        graph = tmp_path / "graph.txt"
        graph.write_text(GRAPH_PATH3)
        election = str(tmp_path / "election.json")
        witness = str(tmp_path / "witness.json")

        assert main(["reduce", str(graph), "--target", "pv-rec", "-k", "1",
                     "-o", election]) == EXIT_YES
        assert main(["solve", election, "--witness-out", witness]) == EXIT_YES
        capsys.readouterr()

        # the path's middle vertex is the unique size-1 dominating set
        assert json.loads(open(witness).read()) == {"kind": "rec", "recount": ["Dv1"]}
        assert main(["verify", election, witness]) == EXIT_YES
        assert "ok:" in capsys.readouterr().out

        assert main(["decode", election + ".layout.json", witness]) == EXIT_YES
        out = capsys.readouterr().out
        assert "vertices: 1" in out

    def test_verify_rejects_bad_witness(self, tmp_path, capsys):
        graph = tmp_path / "graph.txt"
        graph.write_text(GRAPH_PATH3)
        election = str(tmp_path / "election.json")
        assert main(["reduce", str(graph), "--target", "pv-rec", "-k", "1",
                     "-o", election]) == EXIT_YES
        witness = tmp_path / "witness.json"
        # recounting only the endpoint's district does not elect w
        witness.write_text(json.dumps({"kind": "rec", "recount": ["Dv0"]}))
        assert main(["verify", election, str(witness)]) == EXIT_NO
        assert "fail:" in capsys.readouterr().out

    def test_man_pipeline(self, tmp_path, capsys):
        graph = tmp_path / "graph.txt"
        graph.write_text(GRAPH_EDGE)
        election = str(tmp_path / "election.json")
        witness = str(tmp_path / "witness.json")
        assert main(["reduce", str(graph), "--target", "pv-man",
                     "-o", election]) == EXIT_YES
        assert main(["solve", election, "--witness-out", witness]) == EXIT_YES
        assert main(["verify", election, witness]) == EXIT_YES
        assert main(["decode", election + ".layout.json", witness]) == EXIT_YES
        out = capsys.readouterr().out
        assert "vertices: 0 1" in out and "edges: 0-1" in out

    def test_pd_rec_reduction_solves_yes(self, tmp_path):
        graph = tmp_path / "graph.txt"
        graph.write_text(GRAPH_EDGE)
        election = str(tmp_path / "election.json")
        assert main(["reduce", str(graph), "--target", "pd-rec",
                     "-o", election]) == EXIT_YES
        assert main(["solve", election]) == EXIT_YES

    def test_reduce_pv_rec_requires_k(self, tmp_path, capsys):
        graph = tmp_path / "graph.txt"
        graph.write_text(GRAPH_PATH3)
        assert main(["reduce", str(graph), "--target", "pv-rec",
                     "-o", str(tmp_path / "out.json")]) == EXIT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_reduction_output_is_byte_stable(self, tmp_path):
        graph = tmp_path / "graph.txt"
        graph.write_text(GRAPH_PATH3)
        a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
        main(["reduce", str(graph), "--target", "pv-rec", "-k", "2", "-o", a])
        main(["reduce", str(graph), "--target", "pv-rec", "-k", "2", "-o", b])
        assert open(a).read() == open(b).read()


class TestOracle:
    def test_ds_yes_and_no(self, tmp_path, capsys):
        graph = tmp_path / "graph.txt"
        graph.write_text(GRAPH_PATH3)
        assert main(["oracle", str(graph), "--problem", "ds", "-k", "1"]) == EXIT_YES
        assert "dominating set: 2" in capsys.readouterr().out
        big = tmp_path / "big.txt"
        big.write_text("p graph 3 0\n")
        assert main(["oracle", str(big), "--problem", "ds", "-k", "1"]) == EXIT_NO

    def test_mcc(self, tmp_path):
        graph = tmp_path / "graph.txt"
        graph.write_text(GRAPH_EDGE)
        assert main(["oracle", str(graph), "--problem", "mcc"]) == EXIT_YES

    def test_ds_requires_k(self, tmp_path, capsys):
        graph = tmp_path / "graph.txt"
        graph.write_text(GRAPH_PATH3)
        assert main(["oracle", str(graph), "--problem", "ds"]) == EXIT_ERROR
        assert "error:" in capsys.readouterr().err


class TestBench:
    def test_csv_output(self, tmp_path):
        out = str(tmp_path / "bench.csv")
        code = main(["bench", "--k-min", "4", "--k-max", "5",
                     "--kernel", "python", "--repeats", "1", "--out", out])
        assert code == EXIT_YES
        lines = open(out).read().strip().splitlines()
        assert lines[0].startswith("instance,kernel,districts")
        assert len(lines) == 3
        assert all(",no," in line for line in lines[1:])
