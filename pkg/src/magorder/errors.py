"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """An exhaustive routine was asked to run above its vertex cap."""


class EdgeListParseError(ValueError):
    """Malformed edge-list input.  Carries the offending line number."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class ConfigError(ValueError):
    """Invalid experiment configuration or command-line usage."""


class CiNumericalError(RuntimeError):
    """A conditional-independence test could not be evaluated numerically."""

    def __init__(self, message, query=None):
        if query is not None:
            x, y, z = query
            message = f"{message} (query: {x} _||_ {y} | {sorted(z)})"
        super().__init__(message)
        self.query = query


class OrientationConflict(RuntimeError):
    """Two orientation rules tried to place contradictory edge marks.

    ``trace`` holds the rule applications made so far, most recent last,
    so the offending sequence can be inspected.
    """

    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = list(trace)
