"""Exception types shared across the package."""


class StopsetError(Exception):
    """Base class for all stopset-specific errors."""


class DimensionMismatch(StopsetError):
    """A vector or pattern does not match the matrix dimensions."""


class EnumerationLimit(StopsetError):
    """An exhaustive computation would exceed its hard size guard.

    Raised instead of attempting infeasible work (2^n vector sweeps,
    2^K message sweeps, 2^(L*w) matrix sweeps past their guards).
    """
