"""Exact construction and certification of quaternionic quadric intersections.

The package builds the pencil of four quadrics in P^7 carrying the free
action of the 8-element quaternion group, certifies the action-freeness and
smoothness of concrete members with Groebner-basis Nullstellensatz
certificates and finite-field point scans, and reproduces the numerical
invariants of the construction (isotypic dimensions, Euler characteristics,
the Riemann-Roch identity for the quotient).
"""

from .errors import (
    BadCharacteristic,
    BudgetExceeded,
    DegreeOverflow,
    DivisionByZero,
    EnumerationTooLarge,
    InfiniteField,
    MixedFields,
    NoSquareRootOfMinusOne,
    Q8CYError,
)
from .fields import (
    FieldSpec,
    Scalar,
    arith,
    enumerate_field,
    field_for,
    parse_field_string,
    sqrt_minus_one,
)
from .poly import COORDS, NVARS, Poly, poly_arith
from .ideal import (
    GBLimits,
    GroebnerBasis,
    buchberger,
    hilbert_series_numerator,
    is_projectively_empty,
    normal_form,
    verify_buchberger,
)
from . import quaternion

__version__ = "0.1.0"
