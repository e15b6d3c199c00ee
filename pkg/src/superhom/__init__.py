"""Exact homology of the doubly weighted Lie superalgebra of polynomial vector fields and forms."""

from .algebra import (Element, Generator, bracket, double_weight, euler_field,
                      exterior_derivative, interior_product, lie_derivative)
from .chains import (Chain, ChainBasis, ComplexSlice, canonicalize, closed_form_basis,
                     complex_slice, enumerate_basis, ii_multiply, m_range, wedge)
from .homology import (HomologyReport, a1_operator, betti, boundary, boundary_matrix,
                       boundary_prime, homology)
from .linalg import ExactMatrix, rank
from .notation import format_chain, format_element, parse_chain, parse_element

__version__ = "0.1.0"
