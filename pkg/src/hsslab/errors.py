"""Exception hierarchy shared by every layer of the package."""


class HSSError(Exception):
    """Base class for all errors raised by hsslab."""


class NotPrime(HSSError, ValueError):
    pass


class ZeroInverse(HSSError, ZeroDivisionError):
    pass


class ModulusMismatch(HSSError, ValueError):
    pass


class DimensionMismatch(HSSError, ValueError):
    pass


class Singular(HSSError, ValueError):
    pass


class DuplicatePoint(HSSError, ValueError):
    pass


class ArityMismatch(HSSError, ValueError):
    pass


class ParseError(HSSError, ValueError):
    pass


class ParamViolation(HSSError, ValueError):
    pass


class DegreeViolation(HSSError, ValueError):
    pass


class LengthMismatch(HSSError, ValueError):
    pass


class IndexOutOfRange(HSSError, IndexError):
    pass


class BudgetExceeded(HSSError, RuntimeError):
    pass


class ScalarMismatch(HSSError, ValueError):
    pass


class InvalidPair(HSSError, ValueError):
    """Raised when a distinguisher's input pair is not admissible for f."""
