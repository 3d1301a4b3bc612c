"""Exception types shared across the toolkit."""


class VRPBenchError(Exception):
    """Base class for all toolkit errors."""


class ParseError(VRPBenchError):
    """Malformed input file. Carries the offending 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(VRPBenchError):
    """A solution or instance violates a structural invariant.

    Structural breakage (wrong separator count, duplicated customers,
    unknown ids) is a distinct failure mode from infeasibility, which is
    reported through the evaluator's infinite cost instead.
    """
