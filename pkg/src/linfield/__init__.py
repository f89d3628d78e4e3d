"""linfield: exact computation with q-polynomials over finite fields.

Moore determinants, Singer and semilinear matrix groups, and Galois-group
identification of additive polynomials by factorization patterns.
"""

__version__ = "0.1.0"

from .errors import (LinfieldError, FieldError, IncompatibleFieldsError,
                     PolynomialError, DependentBasisError, InseparableError,
                     CapExceededError, ParseError)
from .ff import (FF, FFElement, field_create, embed, frobenius, element_order,
                 parse_field)
from .polys import (UniPoly, FieldExtension, factor_degrees, factor, find_roots,
                    is_irreducible, poly_order, splitting_degree,
                    squarefree_decomposition)

__all__ = [
    "LinfieldError", "FieldError", "IncompatibleFieldsError", "PolynomialError",
    "DependentBasisError", "InseparableError", "CapExceededError", "ParseError",
    "FF", "FFElement", "field_create", "embed", "frobenius", "element_order",
    "parse_field",
    "UniPoly", "FieldExtension", "factor_degrees", "factor", "find_roots",
    "is_irreducible", "poly_order", "splitting_degree", "squarefree_decomposition",
    "__version__",
]
