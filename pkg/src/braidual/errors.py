class BraidualError(Exception):
    """Base class for every error raised by the library."""


class ShapeMismatch(BraidualError):
    pass


class Singular(BraidualError):
    pass


class NoAntipode(BraidualError):
    pass


class AntipodeNotInvertible(BraidualError):
    pass


class InvalidParameter(BraidualError):
    pass


class NotClosed(BraidualError):
    pass


class PrecheckFailed(BraidualError):
    """A structure failed one of its defining identities.

    The offending report is kept on ``report`` so callers can print the
    failing equation and witness.
    """

    def __init__(self, report, message=None):
        self.report = report
        if message is None:
            bad = [e.equation_id for e in report.failures()]
            message = "failed: " + ", ".join(bad) if bad else "precheck failed"
        super().__init__(message)


class ParseError(BraidualError):
    def __init__(self, line: int, column: int, reason: str):
        self.line = line
        self.column = column
        self.reason = reason
        super().__init__(f"{line}:{column}: {reason}")
