"""Conditional gradient iteration with the adaptive step size, plus
post-hoc checks of the per-step descent bound and the O(1/k) rate bound."""

from __future__ import annotations

import csv
import enum
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InputError, InternalError
from .geometry import membership
from .problem import MultiObjectiveProblem, eval_jacobian, eval_objectives
from .subproblem import SubproblemStatus, solve_subproblem

DESCENT_TOL = 1e-8
RATE_TOL = 1e-8


class SolveStatus(enum.Enum):
    CRITICAL = "Critical"
    MAX_ITERATIONS = "MaxIterations"
    SUBPROBLEM_UNBOUNDED = "SubproblemUnbounded"


@dataclass(frozen=True)
class SolverConfig:
    eps: float = 1e-6
    max_iter: int = 1000
    record_trajectory: bool = True

    def __post_init__(self):
        if not self.eps > 0:
            raise InputError("eps must be positive")
        if self.max_iter < 1:
            raise InputError("max_iter must be at least 1")


@dataclass(frozen=True)
class IterationRecord:
    """State at iterate ``k``. ``step`` is ``None`` on the last record, where
    no step was taken."""

    k: int
    x: np.ndarray
    F: np.ndarray
    theta: float
    p: np.ndarray
    step: float | None
    elapsed: float


@dataclass
class SolveResult:
    status: SolveStatus
    final_x: np.ndarray
    final_theta: float | None
    iterations: int
    gradient_evaluations: int
    elapsed: float
    trajectory: list[IterationRecord] = field(default_factory=list)


def adaptive_step(theta: float, p, x, L: float) -> float:
    """``min(1, |theta| / (L * ||p - x||^2))``."""
    d = np.asarray(p, dtype=float) - np.asarray(x, dtype=float)
    dd = float(d @ d)
    if not L > 0:
        raise InputError("L must be positive")
    if not theta < 0:
        raise InputError("adaptive step needs a negative gap value")
    if dd == 0.0:
        raise InternalError("p(x) == x with a negative gap value")
    return min(1.0, -theta / (L * dd))


def condg_solve(problem: MultiObjectiveProblem, x0, config: SolverConfig | None = None) -> SolveResult:
    """Run the conditional gradient method from a feasible ``x0``."""
    config = config or SolverConfig()
    x = np.asarray(x0, dtype=float).reshape(-1)
    if x.size != problem.n:
        raise InputError(f"x0 must have length {problem.n}")
    if not membership(problem.region, x):
        raise InputError("initial point infeasible")

    start = time.monotonic()
    trajectory: list[IterationRecord] = []
    k = 0
    grad_evals = 0
    while True:
        sub = solve_subproblem(problem, x)
        grad_evals += 1
        if sub.status is SubproblemStatus.UNBOUNDED_BELOW:
            status, theta = SolveStatus.SUBPROBLEM_UNBOUNDED, None
            break
        theta = sub.theta
        done = abs(theta) <= config.eps
        if done or k >= config.max_iter:
            if config.record_trajectory:
                trajectory.append(
                    IterationRecord(k, x, eval_objectives(problem, x), theta, sub.p, None, time.monotonic() - start)
                )
            status = SolveStatus.CRITICAL if done else SolveStatus.MAX_ITERATIONS
            break
        t = adaptive_step(theta, sub.p, x, problem.lipschitz_L)
        if config.record_trajectory:
            trajectory.append(
                IterationRecord(k, x, eval_objectives(problem, x), theta, sub.p, t, time.monotonic() - start)
            )
        x = x + t * sub.direction
        k += 1

    return SolveResult(
        status=status,
        final_x=x,
        final_theta=theta,
        iterations=k,
        gradient_evaluations=grad_evals,
        elapsed=time.monotonic() - start,
        trajectory=trajectory,
    )


@dataclass(frozen=True)
class DescentCheck:
    slacks: np.ndarray
    worst: float
    passed: bool


def verify_descent(problem: MultiObjectiveProblem, trajectory: list[IterationRecord], tol: float = DESCENT_TOL) -> DescentCheck:
    """Check ``F(x_{k+1}) - F(x_k) <= -1/2 min(theta^2 / (L ||p - x||^2), -theta)``
    componentwise for every consecutive pair of records."""
    if len(trajectory) < 2:
        raise InputError("descent check needs at least two trajectory records")
    L = problem.lipschitz_L
    slacks = np.empty(len(trajectory) - 1)
    for idx, (cur, nxt) in enumerate(zip(trajectory, trajectory[1:])):
        d = cur.p - cur.x
        dd = float(d @ d)
        theta = cur.theta
        bound = -theta if dd == 0.0 else min(theta * theta / (L * dd), -theta)
        rhs = -0.5 * bound
        slacks[idx] = float(np.max(nxt.F - cur.F - rhs))
    worst = float(slacks.max())
    return DescentCheck(slacks, worst, worst <= tol)


@dataclass(frozen=True)
class RateCertificate:
    rho: float
    sigma: float
    beta: float
    bounds: np.ndarray
    gaps: np.ndarray
    passed: bool


def rate_certificate(
    problem: MultiObjectiveProblem,
    trajectory: list[IterationRecord],
    x_ref=None,
    tol: float = RATE_TOL,
) -> RateCertificate:
    """Check ``min_i (F_i(x_k) - F_i(x_ref)) <= 1 / (beta k)`` for recorded ``k >= 1``.

    ``rho`` and ``sigma`` are the largest gradient norm and the largest
    ``||p(x_k) - x_k||`` seen on the trajectory, and
    ``beta = min(1 / (2 rho sigma), 1 / (2 L sigma^2))``. Only valid for
    convex objectives; ``x_ref`` defaults to the last iterate.
    """
    if not problem.is_convex:
        raise InputError("rate certificate requires convexity")
    if not trajectory:
        raise InputError("rate certificate needs a non-empty trajectory")
    x_ref = trajectory[-1].x if x_ref is None else np.asarray(x_ref, dtype=float)
    F_ref = eval_objectives(problem, x_ref)
    rho = max(float(np.linalg.norm(eval_jacobian(problem, r.x), axis=1).max()) for r in trajectory)
    sigma = max(float(np.linalg.norm(r.p - r.x)) for r in trajectory)
    if sigma == 0.0 or rho == 0.0:
        beta = np.inf
    else:
        beta = min(1.0 / (2 * rho * sigma), 1.0 / (2 * problem.lipschitz_L * sigma**2))
    later = [r for r in trajectory if r.k >= 1]
    ks = np.array([r.k for r in later], dtype=float)
    bounds = 1.0 / (beta * ks) if ks.size else np.zeros(0)
    gaps = np.array([float(np.min(r.F - F_ref)) for r in later])
    passed = bool(np.all(gaps <= bounds + tol))
    return RateCertificate(rho, sigma, beta, bounds, gaps, passed)


def _fmt(v: float) -> str:
    return format(v, ".17g")


def write_trajectory_csv(result: SolveResult, path: str | Path) -> None:
    """One row per iterate: ``k, x_1..x_n, F_1..F_m, theta, t, elapsed_s``."""
    traj = result.trajectory
    if not traj:
        raise InputError("no trajectory was recorded")
    n, m = traj[0].x.size, traj[0].F.size
    header = ["k", *(f"x_{j + 1}" for j in range(n)), *(f"F_{i + 1}" for i in range(m)), "theta", "t", "elapsed_s"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in traj:
            w.writerow(
                [
                    r.k,
                    *(_fmt(v) for v in r.x),
                    *(_fmt(v) for v in r.F),
                    _fmt(r.theta),
                    "" if r.step is None else _fmt(r.step),
                    _fmt(r.elapsed),
                ]
            )
