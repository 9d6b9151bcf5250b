"""The linearized minimax subproblem and the gap function.

At a feasible ``x`` the subproblem is

    min_{u in region} max_i <grad F_i(x), u - x>

solved in epigraph form over ``(u, gamma)``: minimize ``gamma`` subject to
``<grad F_i(x), u> - gamma <= <grad F_i(x), x>`` and ``A u <= b``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InputError, InternalError
from .geometry import membership
from .lp import LinearProgram, LpStatus, solve_lp
from .problem import MultiObjectiveProblem, eval_jacobian

SUBPROBLEM_TOL = 1e-9


class SubproblemStatus(enum.Enum):
    SOLVED = "Solved"
    UNBOUNDED_BELOW = "UnboundedBelow"


@dataclass(frozen=True)
class SubproblemSolution:
    status: SubproblemStatus
    p: np.ndarray | None = None
    theta: float | None = None
    direction: np.ndarray | None = None
    jacobian: np.ndarray | None = None


def epigraph_lp(problem: MultiObjectiveProblem, x: np.ndarray, J: np.ndarray) -> LinearProgram:
    n, m = problem.n, problem.m
    region = problem.region
    A = np.zeros((m + region.p, n + 1))
    A[:m, :n] = J
    A[:m, n] = -1.0
    A[m:, :n] = region.A
    b = np.concatenate([J @ x, region.b])
    c = np.zeros(n + 1)
    c[n] = 1.0
    return LinearProgram(c, A, b)


def solve_subproblem(problem: MultiObjectiveProblem, x) -> SubproblemSolution:
    """Compute ``p(x)`` and ``theta(x)`` at a feasible point."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != problem.n:
        raise InputError(f"expected a point of length {problem.n}, got {x.size}")
    if not membership(problem.region, x):
        raise InputError("subproblem point is infeasible")
    J = eval_jacobian(problem, x)
    sol = solve_lp(epigraph_lp(problem, x, J))
    if sol.status is LpStatus.UNBOUNDED:
        return SubproblemSolution(SubproblemStatus.UNBOUNDED_BELOW, jacobian=J)
    if sol.status is LpStatus.INFEASIBLE:
        raise InternalError("epigraph LP infeasible at a feasible point")
    p = sol.x[: problem.n]
    d = p - x
    # Recompute from the Jacobian rather than trusting the epigraph value.
    theta = float(np.max(J @ d))
    if theta > SUBPROBLEM_TOL:
        raise InternalError(f"gap function positive ({theta:.3e}) at a feasible point")
    return SubproblemSolution(SubproblemStatus.SOLVED, p=p, theta=theta, direction=d, jacobian=J)


def is_pareto_critical(sol: SubproblemSolution, eps: float = 1e-6) -> bool:
    if sol.status is not SubproblemStatus.SOLVED:
        raise InputError("criticality is undefined for an unbounded subproblem")
    return abs(sol.theta) <= eps
