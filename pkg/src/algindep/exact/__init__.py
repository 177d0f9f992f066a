"""Exact rationals, polynomials, rational functions and enclosures.

Rationals are :class:`fractions.Fraction`; everything else is defined here.
"""

from fractions import Fraction as Rational

from .enclosure import DEFAULT_PREC, Enclosure, decimal_interval, matches_digits, round_dyadic
from .polynomial import Polynomial, align, grlex_key, poly_arithmetic, poly_eval, poly_partial
from .ratfunc import RationalFunction, ratfn_arithmetic, ratfn_partial, substitute

PointAssignment = dict  # variable name -> Enclosure

__all__ = [
    "DEFAULT_PREC",
    "Enclosure",
    "PointAssignment",
    "Polynomial",
    "Rational",
    "RationalFunction",
    "align",
    "decimal_interval",
    "grlex_key",
    "matches_digits",
    "poly_arithmetic",
    "poly_eval",
    "poly_partial",
    "ratfn_arithmetic",
    "ratfn_partial",
    "round_dyadic",
    "substitute",
]
