"""Exception types shared across the package."""


class LogconvexError(Exception):
    """Base class for every error raised by this package."""


class GridError(LogconvexError, ValueError):
    """Invalid grid construction, or mismatched grids between operands."""


class EvaluationError(LogconvexError, ValueError):
    """Evaluation failed (non-finite result) or was requested out of range."""


class WindowError(LogconvexError, ValueError):
    """A head/tail analysis window does not contain enough knots."""


class ConfigError(LogconvexError, ValueError):
    """Malformed runtime configuration."""
