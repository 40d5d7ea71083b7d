"""Exception types shared across the package."""


class PRMError(Exception):
    """Base class for domain errors (CLI exit code 2)."""


class NonPrimeCharacteristic(PRMError, ValueError):
    pass


class OrderExceedsCap(PRMError, ValueError):
    pass


class DivisionByZero(PRMError, ZeroDivisionError):
    pass


class DependentForms(PRMError, ValueError):
    pass


class DimensionMismatch(PRMError, ValueError):
    pass


class FieldMismatch(PRMError, ValueError):
    pass


class ZeroPolynomial(PRMError, ValueError):
    pass


class ZeroForm(PRMError, ValueError):
    """Dehomogenizing c*h^d at h leaves no affine part."""


class DegreeOutOfRange(PRMError, ValueError):
    pass


class LengthMismatch(PRMError, ValueError):
    pass


class DomainViolation(PRMError, ValueError):
    pass


class TooManyHyperplanes(DomainViolation):
    pass


class NonSquareOrder(DomainViolation):
    pass


class NoPassantFound(PRMError, RuntimeError):
    pass


class PointOnConic(PRMError, ValueError):
    pass


class BadIndex(PRMError, IndexError):
    pass


class BudgetExceeded(PRMError, RuntimeError):
    """Enumeration would exceed the configured budget (CLI exit code 3)."""
