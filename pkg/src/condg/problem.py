"""Multiobjective problem instances and the built-in test problems."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InputError
from .geometry import Polyhedron, _as_vector, sample_points


@dataclass(frozen=True)
class MultiObjectiveProblem:
    """Vector objective ``F: R^n -> R^m`` with exact Jacobian on a polyhedron.

    Parameters
    ----------
    objective_eval : callable
        Maps an n-vector to the m-vector ``F(x)``.
    jacobian_eval : callable
        Maps an n-vector to the m x n matrix whose rows are the gradients.
    lipschitz_L : float
        Common Lipschitz constant of all gradients on the region.
    sample_box : (lo, hi), optional
        Window used to draw random feasible points by rejection.
    """

    name: str
    n: int
    m: int
    objective_eval: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    jacobian_eval: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    lipschitz_L: float
    region: Polyhedron = field(repr=False)
    is_convex: bool
    sample_box: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise InputError("n and m must be positive")
        if not self.lipschitz_L > 0:
            raise InputError("Lipschitz constant must be positive")
        if self.region.n != self.n:
            raise InputError("region dimension does not match the problem")


def eval_objectives(problem: MultiObjectiveProblem, x) -> np.ndarray:
    x = _as_vector(x, problem.n)
    return np.asarray(problem.objective_eval(x), dtype=float).reshape(problem.m)


def eval_jacobian(problem: MultiObjectiveProblem, x) -> np.ndarray:
    x = _as_vector(x, problem.n)
    return np.asarray(problem.jacobian_eval(x), dtype=float).reshape(problem.m, problem.n)


def check_gradients(problem: MultiObjectiveProblem, x, h: float = 1e-6) -> np.ndarray:
    """Relative error of the Jacobian against central differences.

    Entry ``(i, j)`` is ``|fd_ij - J_ij| / max(1, |J_ij|)``.
    """
    if not h > 0:
        raise InputError("step h must be positive")
    x = _as_vector(x, problem.n)
    J = eval_jacobian(problem, x)
    fd = np.empty_like(J)
    for j in range(problem.n):
        e = np.zeros(problem.n)
        e[j] = h
        fd[:, j] = (eval_objectives(problem, x + e) - eval_objectives(problem, x - e)) / (2 * h)
    return np.abs(fd - J) / np.maximum(1.0, np.abs(J))


def sample_feasible(problem: MultiObjectiveProblem, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` feasible points uniformly from the problem's sampling box."""
    if problem.sample_box is None:
        raise InputError(f"problem {problem.name!r} has no sampling box")
    return sample_points(problem.region, problem.sample_box, count, rng)


# Built-in instances -------------------------------------------------------


def _ex1_F(x):
    return np.array([x[0] + 0.01 * (x[1] + 0.5) ** 2, 0.01 * (x[0] + 0.5) ** 2 + x[1]])


def _ex1_J(x):
    return np.array([[1.0, 0.02 * (x[1] + 0.5)], [0.02 * (x[0] + 0.5), 1.0]])


def _ex2_F(x):
    return np.array([-x[0] + 2.0 * x[1], x[0] + 0.5 * np.sin(x[1]) + 1.1 * x[1]])


def _ex2_J(x):
    return np.array([[-1.0, 2.0], [1.0, 0.5 * np.cos(x[1]) + 1.1]])


def _make_ex1() -> MultiObjectiveProblem:
    # x >= 0, x1 + x2 >= 1, x2 >= 0.5
    region = Polyhedron(
        np.array([[-1.0, 0.0], [0.0, -1.0], [-1.0, -1.0], [0.0, -1.0]]),
        np.array([0.0, 0.0, -1.0, -0.5]),
    )
    return MultiObjectiveProblem(
        name="ex1",
        n=2,
        m=2,
        objective_eval=_ex1_F,
        jacobian_eval=_ex1_J,
        lipschitz_L=0.02,
        region=region,
        is_convex=True,
        sample_box=(np.array([0.0, 0.0]), np.array([5.0, 5.0])),
    )


def _make_ex2() -> MultiObjectiveProblem:
    region = Polyhedron(np.array([[0.5, -1.0], [-0.5, -1.0]]), np.array([0.0, 0.0]))
    return MultiObjectiveProblem(
        name="ex2",
        n=2,
        m=2,
        objective_eval=_ex2_F,
        jacobian_eval=_ex2_J,
        lipschitz_L=0.5,
        region=region,
        is_convex=False,
        sample_box=(np.array([-5.0, 0.0]), np.array([5.0, 5.0])),
    )


_REGISTRY = {"ex1": _make_ex1, "ex2": _make_ex2}
_CACHE: dict[str, MultiObjectiveProblem] = {}


def builtin_names() -> list[str]:
    return sorted(_REGISTRY)


def builtin_problem(name: str) -> MultiObjectiveProblem:
    if name not in _REGISTRY:
        raise InputError(f"unknown problem {name!r}; choose from {', '.join(builtin_names())}")
    if name not in _CACHE:
        _CACHE[name] = _REGISTRY[name]()
    return _CACHE[name]
