"""Exception hierarchy shared by all sbmdea modules."""


class SbmdeaError(Exception):
    """Base class for all sbmdea errors."""


class DimensionError(SbmdeaError, ValueError):
    """Operands disagree on the number of inputs or outputs."""


class SolverError(SbmdeaError, RuntimeError):
    """The LP solver failed (numerical breakdown, iteration limit, or an
    unexpected infeasible/unbounded status)."""


class InfeasibleOriented(SbmdeaError, RuntimeError):
    """An oriented model has no feasible point (possible under variable
    returns to scale)."""


class BudgetExhausted(SbmdeaError, RuntimeError):
    """The outer optimizer ran out of inner-solve budget before finding any
    feasible evaluation."""


class DivisionByNearZero(SbmdeaError, ArithmeticError):
    """A ratio of scores was requested but a denominator is numerically
    indistinguishable from zero."""


class ParseError(SbmdeaError, ValueError):
    """A dataset file could not be parsed. Carries the offending cell."""

    def __init__(self, row: int, col: str, reason: str):
        self.row = row
        self.col = col
        self.reason = reason
        super().__init__(f"row {row}, column {col!r}: {reason}")
