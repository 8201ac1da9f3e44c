"""Charnes-Cooper builders for the slacks-based fractional programs.

Each slacks-based score is a linear-fractional program over (lambda, slacks).
Homogenizing with a scalar tau (tau = 1 / denominator) and scaling every
variable by tau turns it into an LP; dividing the optimal scaled variables by
tau recovers the fractional solution.  The builders below produce the LP plus
a back-map that performs that division.

Variable layout is always [tau, Lambda_1..n, S_minus_1..m, S_plus_1..s].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SolverError
from .lp import EQ, GE, LE, LinearProgram, LpSolution
from .model import Activity, ModelConfig, ReferenceSet

__all__ = ["SbmLpMap", "build_sbm_lp", "SBM_KINDS"]

SBM_KINDS = ("efficiency", "superefficiency", "relaxed")


@dataclass(frozen=True)
class SbmLpMap:
    """Back-map from scaled LP variables to fractional-program quantities."""

    kind: str
    n: int
    m: int
    s: int

    @property
    def tau_col(self) -> int:
        return 0

    @property
    def lam_cols(self) -> slice:
        return slice(1, 1 + self.n)

    @property
    def slack_minus_cols(self) -> slice:
        return slice(1 + self.n, 1 + self.n + self.m)

    @property
    def slack_plus_cols(self) -> slice:
        return slice(1 + self.n + self.m, 1 + self.n + self.m + self.s)

    @property
    def slack_cols(self) -> np.ndarray:
        """All scaled slack columns (the lexicographic tie-break objective)."""
        return np.arange(1 + self.n, 1 + self.n + self.m + self.s)

    def recover(self, solution: LpSolution):
        """(score, lambda, slack_minus, slack_plus) in original units."""
        if not solution.optimal:
            raise SolverError(f"cannot back-map a {solution.status} LP solution")
        tau = solution.primal[self.tau_col]
        if tau <= 1e-12:
            raise SolverError("degenerate homogenizing variable (tau ~ 0)")
        lam = solution.primal[self.lam_cols] / tau
        s_minus = solution.primal[self.slack_minus_cols] / tau
        s_plus = solution.primal[self.slack_plus_cols] / tau
        return float(solution.objective_value), lam, s_minus, s_plus


def _prices(a: Activity, config: ModelConfig):
    """Objective prices alpha (inputs) and beta (outputs) after weight
    normalization, zeroed on the unpriced side of oriented models."""
    w_in, w_out = config.weight_vectors(a.m, a.s)
    alpha = w_in / a.inputs
    beta = w_out / a.outputs
    if config.orientation == "input":
        beta = np.zeros_like(beta)
    elif config.orientation == "output":
        alpha = np.zeros_like(alpha)
    return alpha, beta


def build_sbm_lp(
    kind: str,
    a: Activity,
    ref: ReferenceSet,
    config: ModelConfig,
    *,
    at: tuple[np.ndarray, np.ndarray] | None = None,
) -> tuple[LinearProgram, SbmLpMap]:
    """Build the homogenized LP for one of the slacks-based programs.

    kind = "efficiency":        min (1 - sum alpha s-) / (1 + sum beta s+)
                                s.t. x = X lam + s-, y = Y lam - s+.
    kind = "superefficiency":   min (1 + sum alpha t-) / (1 - sum beta t+)
                                s.t. x + t- >= X lam, 0 < y - t+ <= Y lam.
    kind = "relaxed":           the efficiency shape with free slacks and
                                equality constraints X lam = x - s, Y lam = y + s.

    `at` replaces the activity used in the *constraint* rows (the objective
    keeps the denominators of `a`); this is how the efficiency of a shifted
    point is priced against the original activity.  Under variable returns to
    scale a sum(Lambda) = tau row is appended.  Oriented super-efficiency pins
    the unpriced slack side to zero.
    """
    if kind not in SBM_KINDS:
        raise ValueError(f"kind must be one of {SBM_KINDS}")
    ref.check_activity(a)
    n, m, s = ref.n, ref.m, ref.s
    xbar, ybar = (a.inputs, a.outputs) if at is None else at
    xbar = np.asarray(xbar, dtype=float)
    ybar = np.asarray(ybar, dtype=float)
    if xbar.size != m or ybar.size != s:
        raise ValueError("`at` point must match the reference dimensions")

    alpha, beta = _prices(a, config)
    eps_pos = config.tol.eps_pos
    nv = 1 + n + m + s
    mp = SbmLpMap(kind, n, m, s)

    lower = np.zeros(nv)
    upper = np.full(nv, np.inf)
    rows_A = []
    rows_rel = []
    rows_b = []

    def add(coefs, rel, b):
        rows_A.append(coefs)
        rows_rel.append(rel)
        rows_b.append(b)

    c = np.zeros(nv)
    c[0] = 1.0

    if kind == "efficiency" or kind == "relaxed":
        c[mp.slack_minus_cols] = -alpha
        norm = np.zeros(nv)
        norm[0] = 1.0
        norm[mp.slack_plus_cols] = beta
        add(norm, EQ, 1.0)
        for i in range(m):
            row = np.zeros(nv)
            row[0] = xbar[i]
            row[mp.lam_cols] = -ref.X[i]
            row[1 + n + i] = -1.0
            add(row, EQ, 0.0)
        for r in range(s):
            row = np.zeros(nv)
            row[0] = ybar[r]
            row[mp.lam_cols] = -ref.Y[r]
            row[1 + n + m + r] = 1.0
            add(row, EQ, 0.0)
        if kind == "relaxed":
            lower[mp.slack_minus_cols] = -np.inf
            lower[mp.slack_plus_cols] = -np.inf
            upper[0] = 1.0 / eps_pos  # floors the fractional denominator
    else:  # superefficiency
        c[mp.slack_minus_cols] = alpha
        norm = np.zeros(nv)
        norm[0] = 1.0
        norm[mp.slack_plus_cols] = -beta
        add(norm, EQ, 1.0)
        for i in range(m):
            row = np.zeros(nv)
            row[0] = xbar[i]
            row[mp.lam_cols] = -ref.X[i]
            row[1 + n + i] = 1.0
            add(row, GE, 0.0)
        for r in range(s):
            row = np.zeros(nv)
            row[0] = ybar[r]
            row[mp.lam_cols] = -ref.Y[r]
            row[1 + n + m + r] = -1.0
            add(row, LE, 0.0)
        if config.orientation == "input":
            upper[mp.slack_plus_cols] = 0.0  # outputs stay fixed
        else:
            for r in range(s):
                row = np.zeros(nv)
                row[1 + n + m + r] = 1.0
                row[0] = -(1.0 - eps_pos) * ybar[r]
                add(row, LE, 0.0)
        if config.orientation == "output":
            upper[mp.slack_minus_cols] = 0.0  # inputs stay fixed

    if config.rts == "vrs":
        row = np.zeros(nv)
        row[mp.lam_cols] = 1.0
        row[0] = -1.0
        add(row, EQ, 0.0)

    lp = LinearProgram(
        "min",
        c,
        np.asarray(rows_A),
        np.asarray(rows_rel, dtype=np.int8),
        np.asarray(rows_b),
        lower,
        upper,
    )
    return lp, mp
