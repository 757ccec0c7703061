"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific class that applies.
"""


class ConfigError(ValueError):
    """Bad run configuration (CLI flags, symbol files, schema violations)."""


class DomainError(ValueError):
    """Input outside the mathematical domain (pole or lattice proximity)."""


class ToleranceError(RuntimeError):
    """A numerical tolerance could not be met (quadrature, tracking, checks)."""


class TrackingError(ToleranceError):
    """A swept eigenvalue branch fell below the value floor mid-window."""
