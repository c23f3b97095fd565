"""Exception types shared across the package."""


class BeamsimError(Exception):
    """Base class for beamsim errors."""


class SingularStatisticsError(BeamsimError):
    """Raised when a matrix built from the data is too ill-conditioned to use.

    Typically means the sample support is degenerate (too few snapshots, or a
    search direction orthogonal to all observed data).  Diagonal loading or
    more snapshots are the usual remedies.
    """
