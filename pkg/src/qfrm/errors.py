"""Exception types shared across the package."""


class QfrmError(Exception):
    """Base class for every error raised by this package."""


class NonPrime(QfrmError, ValueError):
    """Field characteristic must be prime (or the order a prime power)."""


class FieldTooLarge(QfrmError, ValueError):
    """Requested field order exceeds the supported cap."""


class InverseOfZero(QfrmError, ZeroDivisionError):
    """Multiplicative inverse of the zero element."""


class EvenCharacteristic(QfrmError, ValueError):
    """Operation requires odd characteristic but the field is even."""


class OddCharacteristic(QfrmError, ValueError):
    """Operation requires even characteristic but the field is odd."""


class OutOfRange(QfrmError, ValueError):
    """Numeric argument outside its admissible range."""


class DimensionMismatch(QfrmError, ValueError):
    """Vector or coefficient table has the wrong shape."""


class SingularSubstitution(QfrmError, ValueError):
    """Variable substitution matrix is not invertible."""


class ZeroCoefficient(QfrmError, ValueError):
    """Diagonal coefficients must all be nonzero."""


class InconsistentRankType(QfrmError, ValueError):
    """A (rank, type) pair violates the classification invariants."""


class InconsistentQuery(QfrmError, ValueError):
    """Coset query combines options that cannot occur together."""


class InexactDivision(QfrmError, ArithmeticError):
    """A closed-form count failed its exact-divisibility check."""


class NonDivisibleWeight(QfrmError, ArithmeticError):
    """A weight expected to be divisible by q - 1 is not."""


class BudgetExceeded(QfrmError, RuntimeError):
    """Exhaustive enumeration would exceed the configured budget."""


class UnsupportedParameters(QfrmError, ValueError):
    """Code family is undefined for the requested parameters."""


class UnsupportedForBinary(QfrmError, ValueError):
    """Operation applies only to q > 2."""


class InternalInconsistency(QfrmError, RuntimeError):
    """Two computation paths that must agree disagreed."""
