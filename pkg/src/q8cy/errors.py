"""Exceptions shared across the package."""


class Q8CYError(Exception):
    """Base class for all package errors."""


class DivisionByZero(Q8CYError):
    pass


class MixedFields(Q8CYError):
    """Two operands belong to different coefficient fields."""


class NoSquareRootOfMinusOne(Q8CYError):
    """The field contains no element i with i^2 = -1."""


class InfiniteField(Q8CYError):
    """Enumeration requested over a field of characteristic 0."""


class BadCharacteristic(Q8CYError):
    """The field characteristic is unsupported for this operation."""


class DegreeOverflow(Q8CYError):
    """A polynomial operation exceeded the per-variable degree cap."""


class BudgetExceeded(Q8CYError):
    """A Groebner computation hit its pair or term budget."""

    def __init__(self, message, pairs_done=0, terms_held=0):
        super().__init__(message)
        self.pairs_done = pairs_done
        self.terms_held = terms_held


class EnumerationTooLarge(Q8CYError):
    """A point scan would exceed the enumeration budget."""
