"""
Error vocabulary shared by the library and the command line.

Every error carries the exit code the CLI returns for it:
1 validation, 2 parse, 3 algorithmic failure.
"""


class FuzzyApproxError(Exception):
    exit_code = 3


# ---------- VALIDATION (exit 1) ----------


class ValidationError(FuzzyApproxError, ValueError):
    exit_code = 1


class MonotonicityViolation(ValidationError):
    def __init__(self, which: str, index: int, message: str = ""):
        self.which = which
        self.index = index
        super().__init__(
            message
            or f"{which} is not {'nondecreasing' if which == 'lo' else 'nonincreasing'} at index {index}"
        )


class CrossingViolation(ValidationError):
    def __init__(self, index: int, lo: float, hi: float, message: str = ""):
        self.index = index
        self.lo = lo
        self.hi = hi
        super().__init__(message or f"lo={lo!r} > hi={hi!r} at index {index}")


class LengthMismatch(ValidationError):
    pass


class OrderViolation(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class GridMismatch(ValidationError):
    pass


class RangeViolation(ValidationError):
    pass


# ---------- PARSE (exit 2) ----------


class ParseError(FuzzyApproxError):
    exit_code = 2

    def __init__(self, message: str, line: int = None, field: str = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


# ---------- ALGORITHMIC (exit 3) ----------


class AlgorithmicError(FuzzyApproxError):
    exit_code = 3


class EmptyClass(AlgorithmicError):
    pass


class CannotSeparate(AlgorithmicError):
    pass


class CoverFailure(AlgorithmicError):
    pass


class MembershipFailure(AlgorithmicError):
    pass


class BoundViolation(AlgorithmicError):
    pass


class SeparationHypothesisUnmet(AlgorithmicError, UserWarning):
    """Raised by the construction, only warned about by attainment_point."""
