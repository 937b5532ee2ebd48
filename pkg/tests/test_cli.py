import json

import pytest

from fillinlab import cli
from fillinlab.graph import Graph, load_dimacs, save_dimacs


def run(argv):
    return cli.main(argv)


@pytest.fixture
def c4_file(tmp_path, graphs):
    path = tmp_path / "c4.col"
    save_dimacs(graphs["c4"], path)
    return str(path)


@pytest.fixture
def c6_file(tmp_path, graphs):
    path = tmp_path / "c6.col"
    save_dimacs(graphs["c6"], path)
    return str(path)


class TestGen:
    def test_deterministic_files(self, tmp_path):
        a, b = tmp_path / "a.col", tmp_path / "b.col"
        assert run(["gen", "gnp", "--n", "8", "--p", "0.5", "--seed", "1", "--out", str(a)]) == 0
        assert run(["gen", "gnp", "--n", "8", "--p", "0.5", "--seed", "1", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_cycle(self, tmp_path):
        out = tmp_path / "c6.col"
        assert run(["gen", "cycle", "--n", "6", "--out", str(out)]) == 0
        g = load_dimacs(out)
        assert g.n == 6 and g.m == 6

    def test_regular_verified(self, tmp_path):
        out = tmp_path / "r.col"
        assert run(["gen", "regular", "--n", "10", "--d", "3", "--seed", "7", "--out", str(out)]) == 0
        assert (load_dimacs(out).degrees() == 3).all()

    def test_regular_infeasible(self, tmp_path):
        code = run(["gen", "regular", "--n", "5", "--d", "3", "--out", str(tmp_path / "x.col")])
        assert code == cli.EXIT_BAD_INPUT


class TestReduce:
    def test_primitive_k2(self, tmp_path):
        src = tmp_path / "k2.col"
        save_dimacs(Graph.build(2, [(0, 1)]), src)
        out = tmp_path / "k2.reduced.col"
        rep = tmp_path / "rep.json"
        assert run(["reduce", str(src), "--mode", "primitive", "--graph-out", str(out), "--out", str(rep)]) == 0
        assert load_dimacs(out).n == 10
        sidecar = json.loads((tmp_path / "k2.reduced.col.json").read_text())
        assert sidecar["reduction"] == "primitive" and sidecar["n"] == 2

    def test_colored_prism(self, tmp_path, graphs):
        src = tmp_path / "prism.col"
        save_dimacs(graphs["prism"], src)
        out = tmp_path / "prism.reduced.col"
        assert run(["reduce", str(src), "--mode", "colored", "--b", "1", "--graph-out", str(out), "--out", str(tmp_path / "r.json")]) == 0
        assert load_dimacs(out).n == 24

    def test_k4_exit_2(self, tmp_path, graphs, capsys):
        src = tmp_path / "k4.col"
        save_dimacs(graphs["k4"], src)
        code = run(["reduce", str(src), "--mode", "colored", "--d", "3", "--graph-out", str(tmp_path / "o.col")])
        assert code == cli.EXIT_BAD_INPUT
        assert "clique" in capsys.readouterr().err

    def test_limit_override_env(self, tmp_path, monkeypatch, graphs):
        src = tmp_path / "c4.col"
        save_dimacs(graphs["c4"], src)
        monkeypatch.setattr(cli, "PRIMITIVE_MAX_N", 2)
        args = ["reduce", str(src), "--mode", "primitive", "--graph-out", str(tmp_path / "o.col"), "--out", str(tmp_path / "r.json")]
        monkeypatch.delenv("FILLIN_LAB_LIMIT_OVERRIDE", raising=False)
        assert run(args) == cli.EXIT_LIMIT
        monkeypatch.setenv("FILLIN_LAB_LIMIT_OVERRIDE", "1")
        assert run(args) == 0


class TestSolve:
    def test_vc_c4(self, c4_file, tmp_path):
        rep = tmp_path / "rep.json"
        assert run(["solve", c4_file, "vc", "--out", str(rep)]) == 0
        data = json.loads(rep.read_text())
        assert data["outputs"]["size"] == 2
        assert data["verdict"] == "PASS"

    def test_fillin_c6(self, c6_file, tmp_path):
        rep = tmp_path / "rep.json"
        assert run(["solve", c6_file, "fillin", "--out", str(rep)]) == 0
        assert json.loads(rep.read_text())["outputs"]["size"] == 3

    def test_fillin_oracle_limit_exit_3(self, tmp_path, capsys):
        src = tmp_path / "big.col"
        save_dimacs(Graph.build(12, [(i, i + 1) for i in range(11)]), src)
        assert run(["solve", str(src), "fillin"]) == cli.EXIT_LIMIT
        assert "limited" in capsys.readouterr().err

    def test_heuristic(self, c6_file, tmp_path):
        rep = tmp_path / "rep.json"
        assert run(["solve", c6_file, "fillin-heuristic", "--strategy", "min-degree", "--out", str(rep)]) == 0
        data = json.loads(rep.read_text())
        assert data["outputs"]["size"] >= 3

    def test_vc_budget_exit_3(self, tmp_path, graphs):
        src = tmp_path / "pet.col"
        save_dimacs(graphs["petersen"], src)
        assert run(["solve", str(src), "vc", "--budget", "1", "--out", str(tmp_path / "r.json")]) == cli.EXIT_LIMIT

    def test_timings_opt_in(self, c4_file, tmp_path):
        rep = tmp_path / "rep.json"
        run(["solve", c4_file, "vc", "--out", str(rep)])
        assert json.loads(rep.read_text())["timings"] is None
        run(["solve", c4_file, "vc", "--timings", "--out", str(rep)])
        assert json.loads(rep.read_text())["timings"]["seconds"] >= 0


class TestVerify:
    @pytest.mark.parametrize("suite,extra", [
        ("sandwich", ["--nmax", "3", "--trials", "4"]),
        ("theorem4", ["--nmax", "4", "--trials", "3"]),
        ("transfer", ["--trials", "2"]),
        ("matrix", ["--nmax", "8", "--trials", "10"]),
    ])
    def test_suites_pass(self, suite, extra, tmp_path):
        rep = tmp_path / "rep.json"
        assert run(["verify", suite, *extra, "--out", str(rep)]) == 0
        data = json.loads(rep.read_text())
        assert data["verdict"] == "PASS" and data["checks"]

    def test_byte_identical_reports(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["verify", "matrix", "--trials", "5", "--seed", "11"]
        assert run([*argv, "--out", str(a)]) == 0
        assert run([*argv, "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_jobs_match_serial(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run(["verify", "sandwich", "--trials", "4", "--out", str(a)]) == 0
        assert run(["verify", "sandwich", "--trials", "4", "--jobs", "2", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestEliminate:
    def test_natural_on_cycle(self, c6_file, tmp_path):
        rep = tmp_path / "rep.json"
        assert run(["eliminate", c6_file, "--out", str(rep)]) == 0
        data = json.loads(rep.read_text())
        assert data["outputs"]["fill_size"] == 3

    def test_matrix_market_input(self, tmp_path):
        from fillinlab.matrix import save_matrix_market, tridiagonal_pattern

        mtx = tmp_path / "tri.mtx"
        save_matrix_market(tridiagonal_pattern(5), mtx)
        rep = tmp_path / "rep.json"
        assert run(["eliminate", str(mtx), "--out", str(rep)]) == 0
        data = json.loads(rep.read_text())
        assert data["outputs"]["fill_size"] == 0
        assert data["outputs"]["total_nonzeros"] == 13

    def test_explicit_ordering(self, tmp_path, graphs):
        src = tmp_path / "star.col"
        save_dimacs(graphs["star5"], src)
        rep = tmp_path / "rep.json"
        assert run(["eliminate", str(src), "--ordering", "0,1,2,3,4,5", "--out", str(rep)]) == 0
        assert json.loads(rep.read_text())["outputs"]["fill_size"] == 10


class TestReportRecheck:
    def test_ok(self, c4_file, tmp_path):
        rep = tmp_path / "rep.json"
        run(["solve", c4_file, "vc", "--out", str(rep)])
        assert run(["report", str(rep)]) == 0

    def test_tampered_cover_detected(self, c4_file, tmp_path, capsys):
        rep = tmp_path / "rep.json"
        run(["solve", c4_file, "vc", "--out", str(rep)])
        data = json.loads(rep.read_text())
        data["certificates"]["cover"] = [0]  # C4 needs two vertices
        rep.write_text(json.dumps(data))
        assert run(["report", str(rep)]) == cli.EXIT_CHECK_FAILED
        assert "cover" in capsys.readouterr().err

    def test_tampered_inequality_detected(self, c4_file, tmp_path):
        rep = tmp_path / "rep.json"
        run(["solve", c4_file, "vc", "--out", str(rep)])
        data = json.loads(rep.read_text())
        data["checks"][0]["lhs"] = 99
        rep.write_text(json.dumps(data))
        assert run(["report", str(rep)]) == cli.EXIT_CHECK_FAILED


class TestErrors:
    def test_missing_file(self):
        assert run(["solve", "/nonexistent.col", "vc"]) == cli.EXIT_BAD_INPUT

    def test_malformed_file(self, tmp_path):
        bad = tmp_path / "bad.col"
        bad.write_text("hello world\n")
        assert run(["solve", str(bad), "vc"]) == cli.EXIT_BAD_INPUT
