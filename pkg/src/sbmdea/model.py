"""Domain types: activities, reference sets and model configuration.

All types are immutable after construction (arrays are frozen read-only) so
they can be shared freely across threads or processes.  Every score in this
package is a pure function of (activity, reference set, config).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError

__all__ = [
    "Activity",
    "ReferenceSet",
    "ModelConfig",
    "Tolerances",
    "Region",
]


def _frozen_vector(v, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"{name} must be a non-empty 1-d vector")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


def _frozen_matrix(m, name: str) -> np.ndarray:
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-d matrix")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Activity:
    """An (inputs, outputs) pair of strictly positive vectors.

    Units are arbitrary and may differ per coordinate; every score here is
    invariant under per-coordinate rescaling.  Zero or negative data are
    rejected at construction.
    """

    inputs: np.ndarray
    outputs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "inputs", _frozen_vector(self.inputs, "inputs"))
        object.__setattr__(self, "outputs", _frozen_vector(self.outputs, "outputs"))
        if np.any(self.inputs <= 0.0):
            raise ValueError("all inputs must be strictly positive")
        if np.any(self.outputs <= 0.0):
            raise ValueError("all outputs must be strictly positive")

    @property
    def m(self) -> int:
        return self.inputs.size

    @property
    def s(self) -> int:
        return self.outputs.size

    def same_shape(self, other: "Activity") -> None:
        if self.m != other.m or self.s != other.s:
            raise DimensionError(
                f"activity shapes differ: ({self.m},{self.s}) vs ({other.m},{other.s})"
            )


@dataclass(frozen=True)
class ReferenceSet:
    """Named DMUs arranged column-wise: X is the m-by-n input matrix, Y the s-by-n output matrix."""

    names: tuple
    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(str(n) for n in self.names))
        object.__setattr__(self, "X", _frozen_matrix(self.X, "X"))
        object.__setattr__(self, "Y", _frozen_matrix(self.Y, "Y"))
        if self.X.shape[1] != self.Y.shape[1]:
            raise DimensionError("X and Y must have the same number of columns")
        if len(self.names) != self.X.shape[1]:
            raise DimensionError("one name per DMU column is required")
        if self.X.shape[1] < 1:
            raise ValueError("a reference set needs at least one DMU")
        if np.any(self.X <= 0.0) or np.any(self.Y <= 0.0):
            raise ValueError("all reference data must be strictly positive")

    @property
    def n(self) -> int:
        return self.X.shape[1]

    @property
    def m(self) -> int:
        return self.X.shape[0]

    @property
    def s(self) -> int:
        return self.Y.shape[0]

    def activity(self, j: int) -> Activity:
        """The activity of the j-th DMU."""
        return Activity(self.X[:, j], self.Y[:, j])

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown DMU name {name!r}") from None

    def drop(self, name: str) -> "ReferenceSet":
        """The reference set without the named DMU (leave-one-out frontier)."""
        j = self.index_of(name)
        keep = [k for k in range(self.n) if k != j]
        if not keep:
            raise ValueError("cannot drop the only DMU in a reference set")
        return ReferenceSet(
            tuple(self.names[k] for k in keep), self.X[:, keep], self.Y[:, keep]
        )

    def with_activity(self, name: str, a: Activity) -> "ReferenceSet":
        """A copy in which the named DMU carries the given activity."""
        j = self.index_of(name)
        X = self.X.copy()
        Y = self.Y.copy()
        X[:, j] = a.inputs
        Y[:, j] = a.outputs
        return ReferenceSet(self.names, X, Y)

    def check_activity(self, a: Activity) -> None:
        if a.m != self.m or a.s != self.s:
            raise DimensionError(
                f"activity shape ({a.m},{a.s}) does not match reference set "
                f"({self.m},{self.s})"
            )


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerance bundle.

    eps_feas   LP row/bound feasibility.
    eps_zero   decision threshold for "this slack is zero".
    eps_score  score-equality comparisons and objective pinning.
    eps_pos    margin that keeps projected outputs strictly positive,
               enforcing t_plus <= (1 - eps_pos) * y.
    outer_tol  box/function tolerance of the outer (derivative-free) solver.
    """

    eps_feas: float = 1e-9
    eps_zero: float = 1e-7
    eps_score: float = 1e-6
    eps_pos: float = 1e-6
    outer_tol: float = 1e-6

    def __post_init__(self):
        for name, value in (
            ("eps_feas", self.eps_feas),
            ("eps_zero", self.eps_zero),
            ("eps_score", self.eps_score),
            ("eps_pos", self.eps_pos),
            ("outer_tol", self.outer_tol),
        ):
            if not (0.0 < value < 1e-2):
                raise ValueError(f"{name} must lie strictly between 0 and 1e-2")


ORIENTATIONS = ("nonoriented", "input", "output")
RTS_KINDS = ("crs", "vrs")


@dataclass(frozen=True)
class ModelConfig:
    """Model options shared by every score.

    orientation   "nonoriented", "input" or "output".
    rts           returns to scale, "crs" or "vrs".
    input_weights / output_weights
                  optional strictly positive weights; they are normalized by
                  their sums, so only ratios matter.  None means equal weights.
    tol           tolerance bundle.
    outer_budget  cap on inner LP solves per outer optimization; None picks
                  5000 * (m + s) at call time.
    seed_lower_bound
                  seed the outer search at the super-efficiency slacks, whose
                  value is the known lower bound for the dominated-set optimum.
    """

    orientation: str = "nonoriented"
    rts: str = "crs"
    input_weights: np.ndarray | None = None
    output_weights: np.ndarray | None = None
    tol: Tolerances = field(default_factory=Tolerances)
    outer_budget: int | None = None
    seed_lower_bound: bool = True

    def __post_init__(self):
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}")
        if self.rts not in RTS_KINDS:
            raise ValueError(f"rts must be one of {RTS_KINDS}")
        for attr in ("input_weights", "output_weights"):
            w = getattr(self, attr)
            if w is not None:
                w = _frozen_vector(w, attr)
                if np.any(w <= 0.0):
                    raise ValueError(f"{attr} must be strictly positive")
                object.__setattr__(self, attr, w)
        if self.outer_budget is not None and self.outer_budget < 1:
            raise ValueError("outer_budget must be at least 1")

    def budget_for(self, m: int, s: int) -> int:
        return self.outer_budget if self.outer_budget is not None else 5000 * (m + s)

    def weight_vectors(self, m: int, s: int) -> tuple[np.ndarray, np.ndarray]:
        """Normalized weight vectors (sum to 1); equal weights by default."""
        w_in = self.input_weights
        w_out = self.output_weights
        if w_in is None:
            w_in = np.ones(m)
        elif w_in.size != m:
            raise DimensionError(f"input_weights must have length {m}")
        if w_out is None:
            w_out = np.ones(s)
        elif w_out.size != s:
            raise DimensionError(f"output_weights must have length {s}")
        return w_in / w_in.sum(), w_out / w_out.sum()


class Region(enum.Enum):
    """Three-way split of the activity space.

    I    inefficient activities (the technical inefficiency zone).
    II   efficient activities whose super-efficiency projection is efficient.
    III  efficient activities with an inefficient super-efficiency projection.
    """

    I = "I"
    II = "II"
    III = "III"

    def __str__(self) -> str:  # noqa: D105 - cosmetic
        return self.value
