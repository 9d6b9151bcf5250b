"""Dense two-phase tableau simplex for small linear programs.

Solves

    minimize    <c, x>
    subject to  A_ub x <= b_ub,  lower <= x <= upper

where bounds may be infinite. Bland's rule is used for both entering and
leaving choices, so the pivot sequence is a deterministic function of the
input. Unboundedness is reported together with an improving ray that is
re-checked against the original data before it is returned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, InternalError

LP_TOL = 1e-9


class LpStatus(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """Minimize ``c @ x`` subject to ``A_ub @ x <= b_ub`` and box bounds.

    ``lower``/``upper`` default to free variables (``-inf``/``+inf``).
    """

    c: np.ndarray
    A_ub: np.ndarray
    b_ub: np.ndarray
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        n = c.size
        A = np.asarray(self.A_ub, dtype=float)
        if A.size == 0:
            A = A.reshape(0, n)
        b = np.asarray(self.b_ub, dtype=float).reshape(-1)
        if A.ndim != 2 or A.shape[1] != n or A.shape[0] != b.size:
            raise InputError(
                f"inconsistent LP dimensions: c has {n} entries, A_ub is {A.shape}, b_ub has {b.size}"
            )
        lo = np.full(n, -np.inf) if self.lower is None else np.asarray(self.lower, dtype=float).reshape(-1)
        hi = np.full(n, np.inf) if self.upper is None else np.asarray(self.upper, dtype=float).reshape(-1)
        if lo.size != n or hi.size != n:
            raise InputError("bounds must have one entry per variable")
        if np.any(np.isnan(lo)) or np.any(np.isnan(hi)) or np.any(lo == np.inf) or np.any(hi == -np.inf):
            raise InputError("invalid variable bounds")
        both = np.isfinite(lo) & np.isfinite(hi)
        if np.any(lo[both] > hi[both]):
            raise InputError("lower bound exceeds upper bound")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A_ub", A)
        object.__setattr__(self, "b_ub", b)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def n(self) -> int:
        return self.c.size

    @property
    def p(self) -> int:
        return self.A_ub.shape[0]

    def to_dict(self) -> dict:
        def enc(v):
            return [None if not np.isfinite(t) else float(t) for t in v]

        return {
            "c": self.c.tolist(),
            "A_ub": self.A_ub.tolist(),
            "b_ub": self.b_ub.tolist(),
            "lower": enc(self.lower),
            "upper": enc(self.upper),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LinearProgram":
        """Build from the JSON form; ``null``/``"inf"``/``"-inf"`` mark missing bounds."""
        try:
            c = data["c"]
        except (KeyError, TypeError) as exc:
            raise InputError("LP document needs a 'c' entry") from exc
        n = len(c)

        def dec(values, default):
            if values is None:
                return np.full(n, default)
            out = []
            for v in values:
                out.append(default if v is None else float(v))
            return np.array(out, dtype=float)

        A = data.get("A_ub") or []
        b = data.get("b_ub") or []
        return cls(
            c=np.array(c, dtype=float),
            A_ub=np.array(A, dtype=float).reshape(len(b), n),
            b_ub=np.array(b, dtype=float),
            lower=dec(data.get("lower"), -np.inf),
            upper=dec(data.get("upper"), np.inf),
        )


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    x: np.ndarray | None = None
    objective: float | None = None
    ray: np.ndarray | None = field(default=None, compare=False)
    pivots: int = 0


# Column kinds for the bound transformation x = shift + sign * y.
_SHIFT_LOWER, _SHIFT_UPPER, _FREE = 0, 1, 2


class _Tableau:
    """Row-major tableau ``T`` with right-hand side in the last column."""

    def __init__(self, T: np.ndarray, basis: list[int], tol: float, max_pivots: int):
        self.T = T
        self.basis = basis
        self.tol = tol
        self.max_pivots = max_pivots
        self.pivots = 0

    def pivot(self, r: int, j: int) -> None:
        T = self.T
        T[r] /= T[r, j]
        for i in range(T.shape[0]):
            if i != r and T[i, j] != 0.0:
                T[i] -= T[i, j] * T[r]
        self.basis[r] = j

    def run(self, cost: np.ndarray, ncols: int) -> int | None:
        """Minimize ``cost`` over columns ``< ncols``.

        Returns ``None`` at optimality, or the entering column index along
        which the objective is unbounded.
        """
        T, tol = self.T, self.tol
        while True:
            cb = cost[self.basis]
            reduced = cost[:ncols] - cb @ T[:, :ncols]
            entering = next((j for j in range(ncols) if reduced[j] < -tol), None)
            if entering is None:
                return None
            col = T[:, entering]
            rows = np.flatnonzero(col > tol)
            if rows.size == 0:
                return entering
            ratios = T[rows, -1] / col[rows]
            best = ratios.min()
            ties = rows[ratios <= best + tol * max(1.0, abs(best))]
            leave = min(ties, key=lambda r: self.basis[r])
            if self.pivots >= self.max_pivots:
                raise InternalError("simplex iteration cap exceeded: cycling suspected")
            self.pivot(int(leave), entering)
            self.pivots += 1


def solve_lp(lp: LinearProgram, tol: float = LP_TOL, max_pivots: int | None = None) -> LpSolution:
    """Solve ``lp`` with the two-phase simplex method (Bland's rule)."""
    n, p = lp.n, lp.p
    lo, hi = lp.lower, lp.upper

    # Map every x_j onto nonnegative tableau variables.
    kinds = []
    ycols: list[list[int]] = []
    ny = 0
    for j in range(n):
        if np.isfinite(lo[j]):
            kinds.append(_SHIFT_LOWER)
            ycols.append([ny])
            ny += 1
        elif np.isfinite(hi[j]):
            kinds.append(_SHIFT_UPPER)
            ycols.append([ny])
            ny += 1
        else:
            kinds.append(_FREE)
            ycols.append([ny, ny + 1])
            ny += 2

    # x = shift + M y
    M = np.zeros((n, ny))
    shift = np.zeros(n)
    for j in range(n):
        if kinds[j] == _SHIFT_LOWER:
            M[j, ycols[j][0]] = 1.0
            shift[j] = lo[j]
        elif kinds[j] == _SHIFT_UPPER:
            M[j, ycols[j][0]] = -1.0
            shift[j] = hi[j]
        else:
            M[j, ycols[j][0]] = 1.0
            M[j, ycols[j][1]] = -1.0

    rows_G = [lp.A_ub @ M]
    rows_h = [lp.b_ub - lp.A_ub @ shift]
    finite_pairs = [j for j in range(n) if np.isfinite(lo[j]) and np.isfinite(hi[j])]
    for j in finite_pairs:
        g = np.zeros(ny)
        g[ycols[j][0]] = 1.0
        rows_G.append(g[None, :])
        rows_h.append(np.array([hi[j] - lo[j]]))
    G = np.vstack(rows_G) if rows_G else np.zeros((0, ny))
    h = np.concatenate(rows_h) if rows_h else np.zeros(0)
    nrows = G.shape[0]

    n_bounds = int(np.isfinite(lo).sum() + np.isfinite(hi).sum())
    if max_pivots is None:
        max_pivots = 10 * (p + n + n_bounds)
    max_pivots = max(max_pivots, 1)

    neg = h < 0
    n_art = int(neg.sum())
    ncols = ny + nrows + n_art
    T = np.zeros((nrows, ncols + 1))
    basis = []
    art = ny + nrows
    for r in range(nrows):
        sign = -1.0 if neg[r] else 1.0
        T[r, :ny] = sign * G[r]
        T[r, ny + r] = sign
        T[r, -1] = sign * h[r]
        if neg[r]:
            T[r, art] = 1.0
            basis.append(art)
            art += 1
        else:
            basis.append(ny + r)

    tab = _Tableau(T, basis, tol, max_pivots)
    n_real = ny + nrows

    if n_art:
        cost1 = np.zeros(ncols)
        cost1[n_real:] = 1.0
        if tab.run(cost1, ncols) is not None:
            raise InternalError("phase one reported unbounded")
        infeas = float(cost1[tab.basis] @ tab.T[:, -1])
        if infeas > tol * max(1.0, float(np.abs(h).max())):
            return LpSolution(LpStatus.INFEASIBLE, pivots=tab.pivots)
        # Drive artificials out of the basis; drop rows that are redundant.
        keep = []
        for r in range(nrows):
            if tab.basis[r] >= n_real:
                cand = np.flatnonzero(np.abs(tab.T[r, :n_real]) > tol)
                if cand.size == 0:
                    continue
                tab.pivot(r, int(cand[0]))
            keep.append(r)
        tab.T = tab.T[keep][:, list(range(n_real)) + [ncols]]
        tab.basis = [tab.basis[r] for r in keep]

    cost2 = np.zeros(n_real)
    cost2[:ny] = lp.c @ M
    entering = tab.run(cost2, n_real)

    if entering is not None:
        dy = np.zeros(n_real)
        dy[entering] = 1.0
        for r, bvar in enumerate(tab.basis):
            dy[bvar] = -tab.T[r, entering]
        ray = M @ dy[:ny]
        _verify_ray(lp, ray, tol)
        return LpSolution(LpStatus.UNBOUNDED, ray=ray, pivots=tab.pivots)

    yfull = np.zeros(n_real)
    for r, bvar in enumerate(tab.basis):
        yfull[bvar] = tab.T[r, -1]
    x = shift + M @ yfull[:ny]
    return LpSolution(LpStatus.OPTIMAL, x=x, objective=float(lp.c @ x), pivots=tab.pivots)


def _verify_ray(lp: LinearProgram, ray: np.ndarray, tol: float) -> None:
    scale = max(1.0, float(np.abs(ray).max()))
    bad = (
        (lp.p and np.any(lp.A_ub @ ray > tol * scale * 10))
        or float(lp.c @ ray) >= 0.0
        or np.any(ray[np.isfinite(lp.lower)] < -tol * scale)
        or np.any(ray[np.isfinite(lp.upper)] > tol * scale)
    )
    if bad:
        raise InternalError("simplex produced an uncertified unbounded ray")
