"""Exception hierarchy.

Every domain failure derives from :class:`OrdTopError`; the CLI maps any of
them to exit code 1.
"""


class OrdTopError(Exception):
    """Base class for all library errors."""


class BadIndex(OrdTopError, IndexError):
    pass


class CycleDetected(OrdTopError):
    def __init__(self, x: int, y: int):
        super().__init__(f"cover relation forces {x} <= {y} <= {x}; not antisymmetric")
        self.pair = (x, y)


class GroundTooLarge(OrdTopError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"ground set of size {size} exceeds the enumeration cap {cap}")
        self.size = size
        self.cap = cap


class GroundMismatch(OrdTopError):
    pass


class EmptyCore(OrdTopError):
    pass


class CarrierMismatch(OrdTopError):
    pass


class TermSyntaxError(OrdTopError, ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class ArityMismatch(OrdTopError, TypeError):
    pass


class SplitOfZero(OrdTopError, ValueError):
    pass


class ExhaustedRejection(OrdTopError):
    pass


class TooLargeForExhaustive(OrdTopError):
    pass


class NotAnInterval(OrdTopError):
    pass


class InvalidCandidate(OrdTopError):
    """The candidate cover does not satisfy the separation hypotheses."""

    def __init__(self, reason, detail: str = ""):
        msg = str(reason) if not detail else f"{reason}: {detail}"
        super().__init__(msg)
        self.reason = reason


class VerificationFailed(OrdTopError):
    """A self-check of the witness construction failed.

    This cannot happen on a valid candidate unless the algebra kernel is
    broken, so it is deliberately distinct from :class:`InvalidCandidate`.
    """

    def __init__(self, check_name: str, report=None):
        super().__init__(f"witness verification failed: {check_name}")
        self.check_name = check_name
        self.report = report


class PreconditionError(OrdTopError, ValueError):
    pass
