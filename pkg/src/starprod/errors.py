"""Exception types shared across the package."""


class StarprodError(Exception):
    pass


class SizeTooSmall(StarprodError, ValueError):
    pass


class LengthMismatch(StarprodError, ValueError):
    pass


class NotProper(StarprodError, ValueError):
    pass


class BudgetExceeded(StarprodError):
    """Search stopped on its node or time budget; the answer is unknown."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ParseError(StarprodError, ValueError):
    pass


class WrapTooSmall(StarprodError, ValueError):
    pass


class PrefixMismatch(StarprodError, ValueError):
    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class NotRepresentable(StarprodError, ValueError):
    pass


class VerificationFailed(StarprodError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnsupportedSpec(StarprodError, ValueError):
    pass


class InvalidInputColoring(StarprodError, ValueError):
    pass


class Unreachable(StarprodError, RuntimeError):
    pass
