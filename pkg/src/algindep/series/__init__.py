"""Certified enclosures of the special values used in the case studies."""

from ._common import Precision
from .elementary import elementary, exp, ln, pi, sqrt
from .elliptic import (
    agm,
    elliptic_E,
    elliptic_K,
    golden_ratio_constant,
    modulus_parameters,
    modulus_ratio,
    ratio_over,
    solve_modulus,
)
from .fibonacci import FIB, FibCache, exp_fib_series, exp_residue, fib_lucas, zeta_fib
from .qseries import ZETA_NEG, bernoulli, q_series, ramanujan, theta, zeta_at_negative_integer

__all__ = [
    "FIB",
    "FibCache",
    "Precision",
    "ZETA_NEG",
    "agm",
    "bernoulli",
    "elementary",
    "elliptic_E",
    "elliptic_K",
    "exp",
    "exp_fib_series",
    "exp_residue",
    "fib_lucas",
    "golden_ratio_constant",
    "ln",
    "modulus_parameters",
    "modulus_ratio",
    "pi",
    "q_series",
    "ramanujan",
    "ratio_over",
    "solve_modulus",
    "sqrt",
    "theta",
    "zeta_at_negative_integer",
    "zeta_fib",
]
