"""Exception types shared across the package."""


class SpecError(ValueError):
    """Bad input: malformed spec data, unknown family, invalid coefficients."""


class InvalidSpecError(SpecError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class PrefixOnlyError(SpecError):
    """Raised when symbolic b2 is required but only a finite window is known."""


class MomentError(SpecError):
    pass


class ClosureAbort(RuntimeError):
    """Closure stopped for an internal resource reason (not a verdict)."""
