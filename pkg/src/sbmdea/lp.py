"""Deterministic dense linear programming.

A small two-phase tableau simplex with Bland's anti-cycling rule (entering:
smallest index with negative reduced cost; leaving: minimum ratio, ties broken
by smallest basic-variable index).  Determinism matters here: downstream
scores depend on *which* optimal vertex is returned, and canonical slack
selection is built on top of repeatable solves.

The hot loop is jitted with numba when available; the pure-Python fallback is
the same code path, only slower.  Problems are desk scale (tens of rows and
columns), so a dense tableau is the right tool.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SolverError

try:  # pragma: no cover - exercised implicitly on import
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


__all__ = [
    "LinearProgram",
    "LpSolution",
    "solve_lp",
    "solve_standard",
    "lexicographic_slacks",
]

LE, EQ, GE = -1, 0, 1

_STATUS_OPTIMAL = 0
_STATUS_INFEASIBLE = 1
_STATUS_UNBOUNDED = 2
_STATUS_STALLED = 3

_MAX_ITER = 20000
_PIVOT_TOL = 1e-10
_COST_TOL = 1e-10


@dataclass(frozen=True)
class LinearProgram:
    """min/max c @ v subject to rows A v (<=|=|>=) b and per-variable bounds.

    rel holds one of -1 (<=), 0 (=), +1 (>=) per row.  Bounds default to
    [0, inf); lower = -inf marks a free variable.
    """

    sense: str
    c: np.ndarray
    A: np.ndarray
    rel: np.ndarray
    b: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        c = np.asarray(self.c, dtype=float)
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        rel = np.asarray(self.rel, dtype=np.int8)
        b = np.asarray(self.b, dtype=float)
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if A.shape[1] != c.size:
            raise ValueError("rows must share the objective's dimension")
        if not (A.shape[0] == rel.size == b.size):
            raise ValueError("A, rel and b must agree on the number of rows")
        if lower.size != c.size or upper.size != c.size:
            raise ValueError("bounds must cover every variable")
        if np.any(lower > upper):
            raise ValueError("bounds must satisfy lower <= upper")
        for name, val in (("c", c), ("A", A), ("rel", rel), ("b", b),
                          ("lower", lower), ("upper", upper)):
            object.__setattr__(self, name, val)

    @classmethod
    def from_rows(cls, sense, objective, rows, *, lower=None, upper=None):
        """Build from (coefficients, relation, rhs) triples; relation is one
        of "<=", "=", ">="."""
        objective = np.asarray(objective, dtype=float)
        n = objective.size
        relmap = {"<=": LE, "=": EQ, ">=": GE}
        A = np.zeros((len(rows), n))
        rel = np.zeros(len(rows), dtype=np.int8)
        b = np.zeros(len(rows))
        for i, (coefs, r, rhs) in enumerate(rows):
            A[i] = np.asarray(coefs, dtype=float)
            rel[i] = relmap[r]
            b[i] = rhs
        if lower is None:
            lower = np.zeros(n)
        if upper is None:
            upper = np.full(n, np.inf)
        return cls(sense, objective, A, rel, b, np.asarray(lower, float),
                   np.asarray(upper, float))

    @property
    def n_vars(self) -> int:
        return self.c.size

    @property
    def n_rows(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class LpSolution:
    """Solver result: status is 'optimal', 'infeasible' or 'unbounded'."""

    status: str
    objective_value: float
    primal: np.ndarray
    duals: np.ndarray | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


@njit(cache=True)
def _simplex_core(A, b, c, max_iter):  # pragma: no cover - jitted
    """min c@z s.t. A@z = b, z >= 0 via two-phase tableau simplex.

    Returns (status, z, objective, duals, iterations).  Rows of (A, b) may
    carry negative b; they are flipped internally.
    """
    m, n = A.shape
    total = n + m  # structural + artificial columns

    # Tableau: m constraint rows, then phase-1 and phase-2 cost rows.
    T = np.zeros((m + 2, total + 1))
    for i in range(m):
        sign = 1.0 if b[i] >= 0.0 else -1.0
        for j in range(n):
            T[i, j] = sign * A[i, j]
        T[i, n + i] = 1.0
        T[i, total] = sign * b[i]

    basis = np.empty(m, dtype=np.int64)
    for i in range(m):
        basis[i] = n + i

    # Phase-1 reduced costs: 0 - sum of constraint rows over structural cols.
    for j in range(n):
        acc = 0.0
        for i in range(m):
            acc += T[i, j]
        T[m, j] = -acc
    acc = 0.0
    for i in range(m):
        acc += T[i, total]
    T[m, total] = -acc

    # Phase-2 cost row starts as the raw objective and is reduced alongside.
    for j in range(n):
        T[m + 1, j] = c[j]

    iters = 0
    for phase in range(2):
        cost = m if phase == 0 else m + 1
        limit = total if phase == 0 else n  # artificials may not re-enter
        while True:
            if iters >= max_iter:
                return _STATUS_STALLED, np.zeros(n), 0.0, np.zeros(m), iters
            # Bland entering rule: smallest index with negative reduced cost.
            q = -1
            for j in range(limit):
                if T[cost, j] < -_COST_TOL:
                    q = j
                    break
            if q < 0:
                break
            # Ratio test; ties go to the smallest basic-variable index.
            p = -1
            best = np.inf
            best_var = np.int64(1 << 60)
            for i in range(m):
                a = T[i, q]
                if a > _PIVOT_TOL:
                    r = T[i, total] / a
                    if r < best - 1e-12 or (r <= best + 1e-12 and basis[i] < best_var):
                        best = r
                        p = i
                        best_var = basis[i]
            if p < 0:
                if phase == 0:
                    return _STATUS_STALLED, np.zeros(n), 0.0, np.zeros(m), iters
                return _STATUS_UNBOUNDED, np.zeros(n), 0.0, np.zeros(m), iters
            # Pivot on (p, q).
            piv = T[p, q]
            for j in range(total + 1):
                T[p, j] /= piv
            for i in range(m + 2):
                if i == p:
                    continue
                f = T[i, q]
                if f != 0.0:
                    for j in range(total + 1):
                        T[i, j] -= f * T[p, j]
                    T[i, q] = 0.0
            basis[p] = q
            iters += 1

        if phase == 0:
            if -T[m, total] > 1e-7:
                return _STATUS_INFEASIBLE, np.zeros(n), 0.0, np.zeros(m), iters
            # Drive remaining artificial variables out of the basis.
            for i in range(m):
                if basis[i] >= n:
                    q = -1
                    for j in range(n):
                        if abs(T[i, j]) > _PIVOT_TOL:
                            q = j
                            break
                    if q < 0:
                        # Redundant row: neutralize it.
                        for j in range(total + 1):
                            T[i, j] = 0.0
                        continue
                    piv = T[i, q]
                    for j in range(total + 1):
                        T[i, j] /= piv
                    for k in range(m + 2):
                        if k == i:
                            continue
                        f = T[k, q]
                        if f != 0.0:
                            for j in range(total + 1):
                                T[k, j] -= f * T[i, j]
                            T[k, q] = 0.0
                    basis[i] = q

    z = np.zeros(n)
    for i in range(m):
        if basis[i] < n:
            z[basis[i]] = T[i, total]
    duals = np.empty(m)
    for i in range(m):
        duals[i] = -T[m + 1, n + i]
    return _STATUS_OPTIMAL, z, -T[m + 1, total], duals, iters


def solve_standard(A, b, c, *, max_iter: int = _MAX_ITER):
    """Solve min c@z s.t. A@z = b, z >= 0.

    Returns (status, z, objective, duals) with status one of "optimal",
    "infeasible", "unbounded".  Raises SolverError on numerical stall.
    """
    A = np.ascontiguousarray(A, dtype=float)
    b = np.ascontiguousarray(b, dtype=float)
    c = np.ascontiguousarray(c, dtype=float)
    status, z, obj, duals, _ = _simplex_core(A, b, c, max_iter)
    if status == _STATUS_STALLED:
        raise SolverError("simplex stalled: iteration limit or numerical breakdown")
    if status == _STATUS_INFEASIBLE:
        return "infeasible", z, np.nan, None
    if status == _STATUS_UNBOUNDED:
        return "unbounded", z, -np.inf, None
    # Duals of rows with negative b were computed on the flipped row.
    flip = np.where(b < 0.0, -1.0, 1.0)
    return "optimal", z, obj, duals * flip


def solve_lp(lp: LinearProgram, *, eps_feas: float = 1e-9) -> LpSolution:
    """Solve a general-form LP deterministically.

    Identical inputs produce identical primal vectors (fixed Bland pivoting).
    The returned point is an optimal basic solution; rows and bounds are
    re-verified within eps_feas, and violation raises SolverError.
    """
    n = lp.n_vars
    lower, upper = lp.lower, lp.upper

    # Standard-form columns: shift finite lower bounds to zero, split free
    # variables into positive/negative parts.
    col_of = []        # per original var: (mode, col) with mode '+'/'split'
    shift = np.zeros(n)
    ncols = 0
    split_cols = {}
    for j in range(n):
        if np.isneginf(lower[j]):
            split_cols[j] = (ncols, ncols + 1)
            col_of.append(("split", ncols))
            ncols += 2
        else:
            shift[j] = lower[j]
            col_of.append(("+", ncols))
            ncols += 1

    def expand(row: np.ndarray) -> np.ndarray:
        out = np.zeros(ncols)
        for j in range(n):
            mode, k = col_of[j]
            if mode == "+":
                out[k] = row[j]
            else:
                out[k] = row[j]
                out[k + 1] = -row[j]
        return out

    rows = []
    rhs = []
    for i in range(lp.n_rows):
        rows.append((expand(lp.A[i]), lp.rel[i], lp.b[i] - lp.A[i] @ shift))
    for j in range(n):
        if np.isfinite(upper[j]) and not np.isneginf(lower[j]):
            e = np.zeros(n)
            e[j] = 1.0
            rows.append((expand(e), LE, upper[j] - lower[j]))
        elif np.isfinite(upper[j]):
            e = np.zeros(n)
            e[j] = 1.0
            rows.append((expand(e), LE, upper[j]))

    n_ineq = sum(1 for _, r, _ in rows if r != EQ)
    m_rows = len(rows)
    A_std = np.zeros((m_rows, ncols + n_ineq))
    b_std = np.zeros(m_rows)
    k = ncols
    for i, (coefs, r, rb) in enumerate(rows):
        A_std[i, :ncols] = coefs
        b_std[i] = rb
        if r == LE:
            A_std[i, k] = 1.0
            k += 1
        elif r == GE:
            A_std[i, k] = -1.0
            k += 1

    sign = 1.0 if lp.sense == "min" else -1.0
    c_std = np.zeros(ncols + n_ineq)
    c_std[:ncols] = sign * expand(lp.c)

    # Row equilibration keeps pivot tolerances meaningful across data scales.
    scale = np.maximum(np.abs(A_std).max(axis=1), 1e-30)
    A_scaled = A_std / scale[:, None]
    b_scaled = b_std / scale

    status, z, obj, duals = solve_standard(A_scaled, b_scaled, c_std)
    if status != "optimal":
        return LpSolution(status, np.nan if status == "infeasible" else sign * -np.inf,
                          np.full(n, np.nan))

    primal = np.empty(n)
    for j in range(n):
        mode, kk = col_of[j]
        if mode == "+":
            primal[j] = z[kk] + shift[j]
        else:
            primal[j] = z[kk] - z[kk + 1]

    objective = float(lp.c @ primal)

    # Feasibility is verified relative to each row's magnitude: a residual of
    # 1e-12 times a coefficient of 1e3 is solver noise, not infeasibility.
    row_scale = np.maximum(np.abs(lp.A).max(axis=1), np.abs(lp.b))
    row_scale = np.maximum(row_scale, 1.0) * max(1.0, np.abs(primal).max())
    resid = lp.A @ primal - lp.b
    tol_rows = eps_feas * row_scale
    bound_scale = eps_feas * max(1.0, np.abs(primal).max())
    ok = (
        np.all(np.abs(resid[lp.rel == EQ]) <= tol_rows[lp.rel == EQ])
        and np.all(resid[lp.rel == LE] <= tol_rows[lp.rel == LE])
        and np.all(resid[lp.rel == GE] >= -tol_rows[lp.rel == GE])
        and np.all(primal >= lower - bound_scale)
        and np.all(primal <= upper + bound_scale)
    )
    if not ok:
        raise SolverError("optimal basis violates feasibility tolerances")

    row_duals = None
    if duals is not None:
        row_duals = sign * (duals[: lp.n_rows] / scale[: lp.n_rows])
    return LpSolution("optimal", objective, primal, row_duals)


def lexicographic_slacks(
    lp: LinearProgram,
    optimum: float,
    *,
    slack_cols=None,
    eps_score: float = 1e-6,
    eps_feas: float = 1e-9,
) -> LpSolution:
    """Canonical optimal point: re-solve with the objective pinned to
    `optimum` (within eps_score) while minimizing the summed slack columns.

    slack_cols selects the variables whose sum is minimized; None means all.
    Infeasible pinning (an `optimum` the LP cannot attain) is reported as an
    infeasible solution.
    """
    n = lp.n_vars
    if slack_cols is None:
        slack_cols = np.arange(n)
    secondary = np.zeros(n)
    secondary[np.asarray(slack_cols, dtype=int)] = 1.0

    A = np.vstack([lp.A, lp.c[None, :], lp.c[None, :]])
    rel = np.concatenate([lp.rel, [LE, GE]])
    b = np.concatenate([lp.b, [optimum + eps_score, optimum - eps_score]])
    pinned = LinearProgram("min", secondary, A, rel, b, lp.lower, lp.upper)
    return solve_lp(pinned, eps_feas=eps_feas)
