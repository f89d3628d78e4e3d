"""Exception types raised by the library."""


class LinfieldError(Exception):
    """Base class for all library errors."""


class FieldError(LinfieldError):
    """Invalid field construction or element outside its domain."""


class IncompatibleFieldsError(LinfieldError):
    """Operands live in fields with no declared compatible embedding."""


class PolynomialError(LinfieldError):
    """Invalid polynomial input (zero/constant where forbidden, reducible, ...)."""


class DependentBasisError(LinfieldError):
    """A set of elements was GF(q)-linearly dependent (Moore determinant zero)."""


class InseparableError(LinfieldError):
    """The coefficient of x vanishes, so the polynomial has repeated roots."""


class CapExceededError(LinfieldError):
    """A search or enumeration exceeded its configured cap."""


class ParseError(LinfieldError):
    """Malformed polynomial, field, or matrix literal."""
