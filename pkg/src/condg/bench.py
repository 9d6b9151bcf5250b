"""Seeded multi-start benchmarks and their CSV report."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InputError
from .problem import builtin_problem, sample_feasible
from .solver import SolverConfig, SolveStatus, condg_solve

SUMMARY_COLUMNS = [
    "problem",
    "runs",
    "converged_percent",
    "mean_iterations",
    "mean_gradient_evals",
    "mean_time_s",
    "seed",
]
RUN_COLUMNS = ["run", "seed", "status", "iterations", "gradient_evals", "time_s"]
TIMING_COLUMNS = {"mean_time_s", "time_s"}


@dataclass(frozen=True)
class RunRecord:
    seed: int
    status: str
    iterations: int
    gradient_evals: int
    time: float = field(compare=False)


@dataclass(frozen=True)
class BenchmarkReport:
    problem: str
    runs: int
    converged_percent: float
    mean_iterations: float
    mean_gradient_evals: float
    mean_time_s: float = field(compare=False)
    seed: int = 0
    per_run: tuple[RunRecord, ...] = ()


def derive_seeds(seed: int, runs: int) -> list[int]:
    """Per-run seeds, a deterministic function of ``(seed, runs)``."""
    state = np.random.SeedSequence(seed).generate_state(runs, dtype=np.uint64)
    return [int(s) for s in state]


def start_point(problem, run_seed: int) -> np.ndarray:
    """The feasible start used for the run with sub-seed ``run_seed``."""
    return sample_feasible(problem, 1, np.random.default_rng(run_seed))[0]


def _single_run(problem_name: str, run_seed: int, config: SolverConfig) -> RunRecord:
    problem = builtin_problem(problem_name)
    x0 = start_point(problem, run_seed)
    res = condg_solve(problem, x0, SolverConfig(config.eps, config.max_iter, record_trajectory=False))
    return RunRecord(run_seed, res.status.value, res.iterations, res.gradient_evaluations, res.elapsed)


def run_benchmark(
    problem: str,
    runs: int = 100,
    seed: int = 0,
    config: SolverConfig | None = None,
    workers: int = 1,
) -> BenchmarkReport:
    """Solve ``runs`` random feasible starts and aggregate the results."""
    if runs < 1:
        raise InputError("runs must be positive")
    builtin_problem(problem)
    config = config or SolverConfig()
    seeds = derive_seeds(seed, runs)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_single_run, [problem] * runs, seeds, [config] * runs))
    else:
        records = [_single_run(problem, s, config) for s in seeds]

    n_ok = sum(r.status == SolveStatus.CRITICAL.value for r in records)
    return BenchmarkReport(
        problem=problem,
        runs=runs,
        converged_percent=100.0 * n_ok / runs,
        mean_iterations=float(np.mean([r.iterations for r in records])),
        mean_gradient_evals=float(np.mean([r.gradient_evals for r in records])),
        mean_time_s=float(np.mean([r.time for r in records])),
        seed=seed,
        per_run=tuple(records),
    )


def _g(v: float) -> str:
    return format(v, ".17g")


def report_to_csv(report: BenchmarkReport) -> str:
    """Summary table, a blank line, then one row per run."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    w.writerow(
        [
            report.problem,
            report.runs,
            _g(report.converged_percent),
            _g(report.mean_iterations),
            _g(report.mean_gradient_evals),
            _g(report.mean_time_s),
            report.seed,
        ]
    )
    w.writerow([])
    w.writerow(RUN_COLUMNS)
    for i, r in enumerate(report.per_run):
        w.writerow([i, r.seed, r.status, r.iterations, r.gradient_evals, _g(r.time)])
    return buf.getvalue()


def write_report(report: BenchmarkReport, path: str | Path) -> None:
    Path(path).write_text(report_to_csv(report), encoding="utf-8")


def parse_report(text: str) -> BenchmarkReport:
    rows = list(csv.reader(io.StringIO(text)))
    if len(rows) < 3 or rows[0] != SUMMARY_COLUMNS or rows[3:4] != [RUN_COLUMNS]:
        raise InputError("not a benchmark report")
    s = dict(zip(SUMMARY_COLUMNS, rows[1]))
    per_run = tuple(
        RunRecord(int(r[1]), r[2], int(r[3]), int(r[4]), float(r[5])) for r in rows[4:] if r
    )
    return BenchmarkReport(
        problem=s["problem"],
        runs=int(s["runs"]),
        converged_percent=float(s["converged_percent"]),
        mean_iterations=float(s["mean_iterations"]),
        mean_gradient_evals=float(s["mean_gradient_evals"]),
        mean_time_s=float(s["mean_time_s"]),
        seed=int(s["seed"]),
        per_run=per_run,
    )


def strip_timing(text: str) -> str:
    """Drop timing columns from report CSV text, for reproducibility diffs."""
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    keep = None
    for row in csv.reader(io.StringIO(text)):
        if not row:
            keep = None
            w.writerow([])
            continue
        if keep is None:
            keep = [i for i, name in enumerate(row) if name not in TIMING_COLUMNS]
        w.writerow([row[i] for i in keep])
    return out.getvalue()
