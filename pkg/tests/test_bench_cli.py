import json

import numpy as np
import pytest

from condg import InputError, SolverConfig, builtin_problem, membership, run_benchmark, sample_feasible
from condg.bench import derive_seeds, parse_report, report_to_csv, strip_timing, write_report
from condg.cli import main


class TestBenchmark:
    def test_report_fields(self):
        rep = run_benchmark("ex1", runs=10, seed=3)
        assert rep.runs == 10 and len(rep.per_run) == 10
        ok = sum(r.status == "Critical" for r in rep.per_run)
        assert rep.converged_percent == 100.0 * ok / 10
        assert rep.mean_gradient_evals == pytest.approx(rep.mean_iterations + 1)

    def test_single_run_deterministic(self):
        a = run_benchmark("ex2", runs=1, seed=42)
        b = run_benchmark("ex2", runs=1, seed=42)
        assert a == b

    def test_seed_derivation(self):
        assert derive_seeds(7, 5) == derive_seeds(7, 5)
        assert derive_seeds(7, 5) != derive_seeds(8, 5)
        assert derive_seeds(7, 3) == derive_seeds(7, 5)[:3]

    def test_starts_are_feasible(self):
        problem = builtin_problem("ex2")
        for s in derive_seeds(7, 20):
            assert membership(problem.region, sample_feasible(problem, 1, np.random.default_rng(s))[0])

    def test_unknown_problem(self):
        with pytest.raises(InputError):
            run_benchmark("nope", runs=1)

    def test_workers_match_sequential(self):
        a = run_benchmark("ex1", runs=4, seed=5)
        b = run_benchmark("ex1", runs=4, seed=5, workers=2)
        assert a == b

    def test_csv_roundtrip(self, tmp_path):
        rep = run_benchmark("ex2", runs=5, seed=1, config=SolverConfig(eps=1e-6, max_iter=1000))
        path = tmp_path / "r.csv"
        write_report(rep, path)
        text = path.read_text(encoding="utf-8")
        assert text.splitlines()[0] == "problem,runs,converged_percent,mean_iterations,mean_gradient_evals,mean_time_s,seed"
        back = parse_report(text)
        assert back == rep
        assert [r.seed for r in back.per_run] == [r.seed for r in rep.per_run]

    def test_strip_timing(self):
        text = report_to_csv(run_benchmark("ex1", runs=2, seed=0))
        stripped = strip_timing(text)
        assert "time" not in stripped
        assert stripped.splitlines()[0] == "problem,runs,converged_percent,mean_iterations,mean_gradient_evals,seed"


class TestCli:
    def test_solve(self, capsys, tmp_path):
        traj = tmp_path / "t.csv"
        assert main(["solve", "--problem", "ex1", "--x0", "2,1", "--trajectory", str(traj)]) == 0
        assert "status=Critical iterations=1" in capsys.readouterr().out
        assert traj.read_text().startswith("k,x_1,x_2,F_1,F_2,theta,t,elapsed_s")

    def test_solve_infeasible(self, capsys):
        assert main(["solve", "--problem", "ex1", "--x0", "0,0"]) == 1
        assert "initial point infeasible" in capsys.readouterr().err

    def test_solve_bad_vector(self, capsys):
        assert main(["solve", "--problem", "ex1", "--x0", "a,b"]) == 1

    def test_malformed_flags(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "--problem", "ex1"])
        assert exc.value.code == 1
        assert "usage" in capsys.readouterr().err

    def test_unknown_problem_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "--problem", "ex9", "--x0", "1,1"])
        assert exc.value.code == 1

    def test_bench(self, capsys, tmp_path):
        path = tmp_path / "rep.csv"
        assert main(["bench", "--problem", "ex2", "--runs", "100", "--seed", "7", "--report", str(path)]) == 0
        assert "converged_percent=100 " in capsys.readouterr().out
        assert parse_report(path.read_text()).converged_percent == 100.0

    def test_check_a1(self, capsys):
        assert main(["check-a1", "--problem", "ex1", "--samples", "20", "--seed", "1"]) == 0
        assert "holds=true samples_checked=20" in capsys.readouterr().out

    def test_subproblem(self, capsys):
        assert main(["subproblem", "--problem", "ex1", "--x", "2,1"]) == 0
        out = capsys.readouterr().out
        assert "theta=-0.57499999999999996" in out and "p=(0.5, 0.5)" in out

    def test_lp_solve(self, capsys, tmp_path):
        path = tmp_path / "lp.json"
        path.write_text(json.dumps({"c": [-1, -1], "A_ub": [[1, 1]], "b_ub": [1], "lower": [0, 0], "upper": [None, None]}))
        assert main(["lp-solve", "--file", str(path)]) == 0
        out = capsys.readouterr().out
        assert "status=Optimal" in out and "objective=-1" in out

    def test_lp_solve_unbounded(self, capsys, tmp_path):
        path = tmp_path / "lp.json"
        path.write_text(json.dumps({"c": [-1], "A_ub": [], "b_ub": [], "lower": [0]}))
        assert main(["lp-solve", "--file", str(path)]) == 0
        assert "status=Unbounded" in capsys.readouterr().out

    def test_lp_solve_missing_file(self, capsys, tmp_path):
        assert main(["lp-solve", "--file", str(tmp_path / "missing.json")]) == 1
