"""Conditional gradient method for multiobjective problems on polyhedra."""

from .errors import InputError, InternalError
from .lp import LinearProgram, LpSolution, LpStatus, solve_lp
from .geometry import (
    A1Report,
    PolyhedralCone,
    Polyhedron,
    check_assumption_a1,
    is_bounded,
    load_region,
    membership,
    recession_cone,
)
from .problem import (
    MultiObjectiveProblem,
    builtin_problem,
    check_gradients,
    eval_jacobian,
    eval_objectives,
    sample_feasible,
)
from .subproblem import SubproblemSolution, SubproblemStatus, is_pareto_critical, solve_subproblem
from .solver import (
    IterationRecord,
    RateCertificate,
    SolveResult,
    SolveStatus,
    SolverConfig,
    adaptive_step,
    condg_solve,
    rate_certificate,
    verify_descent,
)
from .bench import BenchmarkReport, run_benchmark

__all__ = [
    "A1Report",
    "BenchmarkReport",
    "InputError",
    "InternalError",
    "IterationRecord",
    "LinearProgram",
    "LpSolution",
    "LpStatus",
    "MultiObjectiveProblem",
    "PolyhedralCone",
    "Polyhedron",
    "RateCertificate",
    "SolveResult",
    "SolveStatus",
    "SolverConfig",
    "SubproblemSolution",
    "SubproblemStatus",
    "adaptive_step",
    "builtin_problem",
    "check_assumption_a1",
    "check_gradients",
    "condg_solve",
    "eval_jacobian",
    "eval_objectives",
    "is_bounded",
    "is_pareto_critical",
    "load_region",
    "membership",
    "rate_certificate",
    "recession_cone",
    "run_benchmark",
    "solve_lp",
    "sample_feasible",
    "solve_subproblem",
    "verify_descent",
]
