"""Polyhedral regions, recession cones and the dual-cone interior test.

Regions are stored in the canonical form ``{x : A x <= b}``. The recession
cone of such a region is ``{d : A d <= 0}``; every LP posed on the cone is
intersected with the box ``[-1, 1]^n`` so that it always has an optimum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from .errors import InputError, InternalError
from .lp import LinearProgram, LpStatus, solve_lp

if TYPE_CHECKING:
    from .problem import MultiObjectiveProblem

FEASIBILITY_TOL = 1e-8
A1_TOL = 1e-9
CONE_ZERO_TOL = 1e-7


def _as_vector(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != n:
        raise InputError(f"expected a vector of length {n}, got {x.size}")
    return x


@dataclass(frozen=True)
class Polyhedron:
    """The set ``{x : A x <= b}``; nonemptiness is checked on construction."""

    A: np.ndarray
    b: np.ndarray
    check_nonempty: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if A.ndim == 1 and A.size == 0:
            raise InputError("a region with no rows needs an explicit (0, n) matrix")
        if A.ndim != 2 or A.shape[1] < 1 or A.shape[0] != b.size:
            raise InputError(f"region needs a p x n matrix and a p-vector, got {A.shape} and {b.size}")
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        if self.check_nonempty and A.shape[0]:
            sol = solve_lp(LinearProgram(np.zeros(self.n), A, b))
            if sol.status is LpStatus.INFEASIBLE:
                raise InputError("region is empty")

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def p(self) -> int:
        return self.A.shape[0]

    @classmethod
    def from_rows(cls, n: int, rows: list[dict]) -> "Polyhedron":
        """Build from ``{"a": [...], "op": "<=" | ">=" | "=", "b": value}`` rows."""
        A, b = [], []
        for i, row in enumerate(rows):
            try:
                a = [float(v) for v in row["a"]]
                op = row["op"]
                rhs = float(row["b"])
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"malformed region row {i}") from exc
            if len(a) != n:
                raise InputError(f"region row {i} has {len(a)} coefficients, expected {n}")
            if op == "<=":
                A.append(a)
                b.append(rhs)
            elif op == ">=":
                A.append([-v for v in a])
                b.append(-rhs)
            elif op == "=":
                A.extend([a, [-v for v in a]])
                b.extend([rhs, -rhs])
            else:
                raise InputError(f"unknown relation {op!r} in region row {i}")
        return cls(np.array(A, dtype=float).reshape(len(b), n), np.array(b, dtype=float))

    def to_rows(self) -> dict:
        return {
            "n": self.n,
            "rows": [{"a": a.tolist(), "op": "<=", "b": float(v)} for a, v in zip(self.A, self.b)],
        }


def load_region(path: str | Path) -> Polyhedron:
    """Read a region file (UTF-8 JSON with ``n`` and ``rows``)."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: not valid JSON") from exc
    try:
        n = int(data["n"])
        rows = data["rows"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: region file needs 'n' and 'rows'") from exc
    if n < 1:
        raise InputError("region dimension must be positive")
    return Polyhedron.from_rows(n, rows)


def membership(region: Polyhedron, x, tol: float = FEASIBILITY_TOL) -> bool:
    x = _as_vector(x, region.n)
    if region.p == 0:
        return True
    return bool(np.max(region.A @ x - region.b) <= tol)


@dataclass(frozen=True)
class PolyhedralCone:
    """The cone ``{d : A d <= 0}``."""

    A: np.ndarray

    @property
    def n(self) -> int:
        return self.A.shape[1]

    def contains(self, d, tol: float = CONE_ZERO_TOL) -> bool:
        d = _as_vector(d, self.n)
        if self.A.shape[0] == 0:
            return True
        return bool(np.max(self.A @ d) <= tol)


def recession_cone(region: Polyhedron) -> PolyhedralCone:
    return PolyhedralCone(region.A)


def _box_lp(cone: PolyhedralCone, c, extra_A=None, extra_b=None):
    A, b = cone.A, np.zeros(cone.A.shape[0])
    if extra_A is not None:
        A = np.vstack([A, extra_A])
        b = np.concatenate([b, extra_b])
    n = cone.n
    sol = solve_lp(LinearProgram(np.asarray(c, dtype=float), A, b, -np.ones(n), np.ones(n)))
    if sol.status is not LpStatus.OPTIMAL:
        # d = 0 is always feasible and the box is compact.
        raise InternalError(f"cone LP ended with status {sol.status.value}")
    return sol


def _nonzero_direction(cone: PolyhedralCone, extra_A=None, extra_b=None):
    """Return a cone direction with some |d_j| > tol, or ``None``."""
    for j in range(cone.n):
        for s in (1.0, -1.0):
            c = np.zeros(cone.n)
            c[j] = -s
            sol = _box_lp(cone, c, extra_A, extra_b)
            if -sol.objective > CONE_ZERO_TOL:
                return sol.x
    return None


def is_bounded(cone: PolyhedralCone) -> bool:
    """True iff the cone is ``{0}``, i.e. its parent region is bounded."""
    return _nonzero_direction(cone) is None


@dataclass(frozen=True)
class A1Report:
    holds: bool
    samples_checked: int
    witness_point: np.ndarray | None = None
    witness_gradient_index: int | None = None
    witness_direction: np.ndarray | None = None


def sample_points(region: Polyhedron, box, count: int, rng: np.random.Generator, max_draws: int = 1_000_000):
    """Rejection-sample ``count`` points of ``region`` uniformly from ``box = (lo, hi)``."""
    lo, hi = (np.asarray(v, dtype=float) for v in box)
    out = []
    draws = 0
    while len(out) < count:
        if draws >= max_draws:
            raise InputError("sampling box barely intersects the region")
        x = rng.uniform(lo, hi)
        draws += 1
        if membership(region, x):
            out.append(x)
    return np.array(out).reshape(count, region.n)


def check_assumption_a1(problem: "MultiObjectiveProblem", sample_count: int, seed: int) -> A1Report:
    """Sampled certificate that every gradient lies in the interior of the
    dual of the recession cone.

    At each sampled point and for each gradient ``g`` the test first
    minimizes ``<g, d>`` over the cone (boxed); a negative value is a
    violation. Otherwise it looks for a nonzero cone direction with
    ``<g, d> <= 0``, which would place ``g`` on the boundary of the dual cone.
    Bounded regions pass immediately.
    """
    if sample_count < 1:
        raise InputError("sample_count must be positive")
    region = problem.region
    cone = recession_cone(region)
    if is_bounded(cone):
        return A1Report(holds=True, samples_checked=0)
    from .problem import eval_jacobian, sample_feasible

    points = sample_feasible(problem, sample_count, np.random.default_rng(seed))
    for k, x in enumerate(points, start=1):
        J = eval_jacobian(problem, x)
        for i, g in enumerate(J):
            sol = _box_lp(cone, g)
            if sol.objective < -A1_TOL:
                return A1Report(False, k, x, i, sol.x)
            d = _nonzero_direction(cone, g[None, :], np.zeros(1))
            if d is not None:
                return A1Report(False, k, x, i, d)
    return A1Report(holds=True, samples_checked=sample_count)
