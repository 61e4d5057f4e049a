"""Exception types shared across the package."""

__all__ = ["SkewnessError", "RankAmbiguityError", "ChartError"]


class SkewnessError(ValueError):
    """Input matrix is not skew-symmetric within tolerance."""


class RankAmbiguityError(ArithmeticError):
    """A singular value falls inside the rank-decision band.

    Kernel dimensions drive branch choices downstream, so an ambiguous rank
    is reported instead of silently resolved.
    """


class ChartError(ArithmeticError):
    """An operation left the invertible-U coordinate chart."""
