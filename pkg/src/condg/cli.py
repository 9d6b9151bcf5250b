"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 solver failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bench import run_benchmark, write_report
from .errors import InputError, InternalError
from .geometry import check_assumption_a1
from .lp import LinearProgram, solve_lp
from .problem import builtin_names, builtin_problem
from .solver import SolverConfig, SolveStatus, condg_solve, write_trajectory_csv
from .subproblem import SubproblemStatus, solve_subproblem

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _vector(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",")], dtype=float)
    except ValueError as exc:
        raise InputError(f"cannot parse vector {text!r}") from exc


def _fmt_vec(v) -> str:
    return "(" + ", ".join(format(float(t), ".17g") for t in v) + ")"


def _cmd_solve(args) -> int:
    problem = builtin_problem(args.problem)
    config = SolverConfig(eps=args.eps, max_iter=args.max_iter, record_trajectory=bool(args.trajectory))
    res = condg_solve(problem, _vector(args.x0), config)
    theta = "nan" if res.final_theta is None else format(res.final_theta, ".17g")
    print(f"status={res.status.value} iterations={res.iterations}")
    print(f"gradient_evaluations={res.gradient_evaluations} final_theta={theta} elapsed_s={res.elapsed:.6f}")
    print(f"final_x={_fmt_vec(res.final_x)}")
    if args.trajectory:
        write_trajectory_csv(res, args.trajectory)
    if res.status is SolveStatus.SUBPROBLEM_UNBOUNDED:
        print("subproblem unbounded below: assumption (A1) appears violated", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def _cmd_bench(args) -> int:
    config = SolverConfig(eps=args.eps, max_iter=args.max_iter, record_trajectory=False)
    rep = run_benchmark(args.problem, args.runs, args.seed, config, workers=args.workers)
    print(
        f"problem={rep.problem} runs={rep.runs} converged_percent={rep.converged_percent:g} "
        f"mean_iterations={rep.mean_iterations:g} mean_gradient_evals={rep.mean_gradient_evals:g} "
        f"mean_time_s={rep.mean_time_s:.6f} seed={rep.seed}"
    )
    if args.report:
        write_report(rep, args.report)
    return EXIT_OK


def _cmd_check_a1(args) -> int:
    rep = check_assumption_a1(builtin_problem(args.problem), args.samples, args.seed)
    print(f"holds={str(rep.holds).lower()} samples_checked={rep.samples_checked}")
    if not rep.holds:
        print(
            f"witness_point={_fmt_vec(rep.witness_point)} gradient_index={rep.witness_gradient_index} "
            f"direction={_fmt_vec(rep.witness_direction)}"
        )
    return EXIT_OK


def _cmd_subproblem(args) -> int:
    sol = solve_subproblem(builtin_problem(args.problem), _vector(args.x))
    if sol.status is SubproblemStatus.UNBOUNDED_BELOW:
        print("status=UnboundedBelow")
        return EXIT_SOLVER
    print(f"status=Solved theta={sol.theta:.17g}")
    print(f"p={_fmt_vec(sol.p)}")
    return EXIT_OK


def _cmd_lp_solve(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read LP file: {exc}") from exc
    sol = solve_lp(LinearProgram.from_dict(data))
    print(f"status={sol.status.value}")
    if sol.x is not None:
        print(f"objective={sol.objective:.17g}")
        print(f"x={_fmt_vec(sol.x)}")
    if sol.ray is not None:
        print(f"ray={_fmt_vec(sol.ray)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="condg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)
    names = builtin_names()

    p = sub.add_parser("solve", help="run the method from one start point")
    p.add_argument("--problem", required=True, choices=names)
    p.add_argument("--x0", required=True, help='comma-separated start point, e.g. "2,1"')
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--trajectory", metavar="PATH")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bench", help="seeded multi-start benchmark")
    p.add_argument("--problem", required=True, choices=names)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--report", metavar="PATH")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("check-a1", help="sampled dual-cone interior check")
    p.add_argument("--problem", required=True, choices=names)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_check_a1)

    p = sub.add_parser("subproblem", help="solve the linearized subproblem at a point")
    p.add_argument("--problem", required=True, choices=names)
    p.add_argument("--x", required=True)
    p.set_defaults(func=_cmd_subproblem)

    p = sub.add_parser("lp-solve", help="solve an LP given as JSON")
    p.add_argument("--file", required=True)
    p.set_defaults(func=_cmd_lp_solve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
