"""carlitz_lab: exact arithmetic for Drinfeld-module identities over F_q[T]."""

from .ffield import Field, FieldError, field_make
from .algebra import (
    LaurentApprox,
    MPoly,
    RatFn,
    UPoly,
    frobenius_twist,
    laurent_of_ratfn,
    monic_irreducibles,
    monic_polys,
)

__version__ = "0.1.0"

__all__ = [
    "Field",
    "FieldError",
    "field_make",
    "UPoly",
    "RatFn",
    "MPoly",
    "LaurentApprox",
    "frobenius_twist",
    "laurent_of_ratfn",
    "monic_polys",
    "monic_irreducibles",
    "__version__",
]
