"""Exception hierarchy shared by the library and the CLI."""


class CodeToolError(Exception):
    """Base class for every error raised by this package."""


class FieldError(CodeToolError, ValueError):
    pass


class SpecSyntaxError(CodeToolError, ValueError):
    pass


class AdmissionError(CodeToolError, ValueError):
    """A function cannot be used for the requested construction."""

    def __init__(self, message, reasons=None):
        super().__init__(message)
        self.reasons = list(reasons or [])


class CapacityError(CodeToolError, ValueError):
    pass


class PreconditionError(CodeToolError):
    """Hypotheses of a closed form or prediction are not satisfied."""


class VerificationError(CodeToolError):
    """Two computations that must agree did not."""
