# lumpgap/errors.py
"""Exception hierarchy. Library code raises these; the CLI maps them to exit codes."""
from typing import Optional, Sequence, Tuple


class LumpGapError(Exception):
    """Root of every error raised by lumpgap."""


class ConfigError(LumpGapError):
    """Invalid setting or command-line override."""


class ShapeError(LumpGapError, ValueError):
    """Operand dimensions do not agree."""

    def __init__(self, message: str, left: Tuple[int, ...] = (), right: Tuple[int, ...] = ()):
        super().__init__(message)
        self.left = tuple(left)
        self.right = tuple(right)


class ConstraintViolationError(LumpGapError):
    """Block model parameters violate a bound or a row-sum constraint."""

    def __init__(self, violations: Sequence[Tuple[str, float]]):
        self.violations = list(violations)
        names = ", ".join(f"{name} (residual {value:.3e})" for name, value in self.violations)
        super().__init__(f"constraint violated: {names}")

    @property
    def constraints(self):
        return [name for name, _ in self.violations]


class ModelParseError(LumpGapError):
    """Model file could not be read or is malformed."""

    def __init__(self, message: str, path: Optional[str] = None,
                 line: Optional[int] = None, key: Optional[str] = None):
        self.path = path
        self.line = line
        self.key = key
        where = path or "<model>"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{where}: {message}")


class PartitionArgumentError(LumpGapError, ValueError):
    """Partition enumeration or classification called with unsupported arguments."""


class DomainError(LumpGapError):
    """Input lies outside the mathematical domain of the operation."""


class NumericalFailure(LumpGapError):
    """An iterative routine failed to converge."""


class InternalConsistencyError(LumpGapError):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, message: str, discrepancy: Optional[float] = None):
        super().__init__(message)
        self.discrepancy = discrepancy
