"""Hand-built problem instances used across test modules."""

import numpy as np

from condg import MultiObjectiveProblem, Polyhedron


def orthant_violation_problem():
    """Omega = R^2_+ with the constant gradient (-1, 0): the subproblem is unbounded."""
    return MultiObjectiveProblem(
        name="orthant",
        n=2,
        m=1,
        objective_eval=lambda x: np.array([-x[0]]),
        jacobian_eval=lambda x: np.array([[-1.0, 0.0]]),
        lipschitz_L=1.0,
        region=Polyhedron(-np.eye(2), np.zeros(2)),
        is_convex=True,
        sample_box=(np.zeros(2), np.full(2, 5.0)),
    )


def box_problem(grad):
    """Unit square with a constant (arbitrary) gradient."""
    g = np.asarray(grad, dtype=float)
    return MultiObjectiveProblem(
        name="box",
        n=2,
        m=1,
        objective_eval=lambda x: np.array([g @ x]),
        jacobian_eval=lambda x: g[None, :],
        lipschitz_L=1.0,
        region=unit_box(),
        is_convex=True,
        sample_box=(np.zeros(2), np.ones(2)),
    )


def unit_box(n=2):
    return Polyhedron(np.vstack([np.eye(n), -np.eye(n)]), np.concatenate([np.ones(n), np.zeros(n)]))
