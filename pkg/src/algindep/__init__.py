"""Jacobian-determinant criteria for algebraic independence.

Exact symbolic layer (polynomials, rational functions, Jacobians, zero
testing) plus certified enclosures of the special values used in the case
studies.
"""

__version__ = "0.1.0"
