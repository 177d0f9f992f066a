"""Lambert-type q-series (A, B, C families), Ramanujan's P, Q, R and theta."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from ..errors import ArithmeticDomainError, ValidationError
from ..exact import Enclosure
from ._common import GUARD, FixedSum, as_rational, bits_of, finish, target


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with the B_1 = -1/2 convention."""
    if n == 0:
        return Fraction(1)
    return -sum(comb(n + 1, k) * bernoulli(k) for k in range(n)) / (n + 1)


def zeta_at_negative_integer(n: int) -> Fraction:
    """zeta(-n) = -B_{n+1} / (n + 1) for n >= 1."""
    return -bernoulli(n + 1) / (n + 1)


ZETA_NEG = {1: Fraction(-1, 12), 3: Fraction(1, 120), 5: Fraction(-1, 252)}
for _n, _v in ZETA_NEG.items():
    if zeta_at_negative_integer(_n) != _v:
        raise AssertionError(f"zeta(-{_n}) table disagrees with the Bernoulli formula")


def lambert_sum(
    q: Fraction,
    power: int,
    num_step: int,
    den_step: int,
    alternating: bool,
    bits: int,
) -> Enclosure:
    """Enclose ``sum_{n>=1} s_n n^power q^(num_step n) / (1 - q^(den_step n))``.

    ``s_n = (-1)^(n+1)`` when ``alternating`` else 1. Tail after N is bounded
    by ``(N+1)^power rho^(N+1) / ((1 - r)(1 - |q|^den_step))`` with
    ``rho = |q|^num_step`` and ``r = rho ((N+2)/(N+1))^power < 1``.
    """
    if q == 0:
        return Enclosure(Fraction(0))
    if abs(q) >= 1:
        raise ArithmeticDomainError("q-series need |q| < 1")
    aq = abs(q)
    rho = aq**num_step
    den_floor = 1 - aq**den_step
    acc = FixedSum(bits + GUARD)
    eps = target(bits)
    qa = q**num_step
    qb = q**den_step
    pa, pb = Fraction(1), Fraction(1)
    n = 0
    while True:
        n += 1
        pa *= qa
        pb *= qb
        term = n**power * pa / (1 - pb)
        if alternating and n % 2 == 0:
            term = -term
        acc.add(term)
        r = rho * Fraction(n + 2, n + 1) ** power
        if r < 1:
            tail = (n + 1) ** power * rho ** (n + 1) / ((1 - r) * den_floor)
            if tail <= eps:
                return acc.enclosure(tail)


def tail_bound_lambert(q: Fraction, power: int, num_step: int, den_step: int, n: int) -> Fraction | None:
    """The tail bound used by :func:`lambert_sum` after ``n`` terms (None if not yet geometric)."""
    aq = abs(Fraction(q))
    rho = aq**num_step
    r = rho * Fraction(n + 2, n + 1) ** power
    if r >= 1:
        return None
    return (n + 1) ** power * rho ** (n + 1) / ((1 - r) * (1 - aq**den_step))


_FAMILIES = {
    "A": (2, 2, False),
    "B": (2, 2, True),
    "C": (1, 2, False),
}


def q_series(family: str, order: int, q, prec=128) -> Enclosure:
    """A_{order}(q), B_{order}(q) or C_{order}(q) for odd ``order``."""
    bits = bits_of(prec)
    if family not in _FAMILIES:
        raise ValidationError(f"family must be one of A, B, C (got {family!r})", "family")
    if isinstance(order, bool) or not isinstance(order, int) or order < 1 or order % 2 == 0:
        raise ValidationError("order must be an odd positive integer", "order")
    q = as_rational(q, "q")
    if abs(q) >= 1:
        raise ArithmeticDomainError("q-series need 0 < |q| < 1")
    a, b, alt = _FAMILIES[family]
    return finish(lambert_sum(q, order, a, b, alt, bits), bits)


_RAMANUJAN = {"P": (-24, 1), "Q": (240, 3), "R": (-504, 5)}


def ramanujan(which: str, q, prec=128) -> Enclosure:
    """P = -24 S_1, Q = 240 S_3, R = -504 S_5 with
    ``S_{j+1}(q) = zeta(-2j-1)/2 + sum n^(2j+1) q^n / (1 - q^n)``."""
    bits = bits_of(prec)
    if which not in _RAMANUJAN:
        raise ValidationError(f"which must be P, Q or R (got {which!r})", "which")
    q = as_rational(q, "q")
    if abs(q) >= 1:
        raise ArithmeticDomainError("Ramanujan functions need |q| < 1")
    coef, power = _RAMANUJAN[which]
    const = coef * ZETA_NEG[power] / 2
    s = lambert_sum(q, power, 1, 1, False, bits + 10)
    return finish(const + coef * s, bits)


def theta(q, prec=128) -> Enclosure:
    """1 + 2 sum_{v>=1} q^(v^2); tail after N is at most 2 q^((N+1)^2) / (1 - q)."""
    bits = bits_of(prec)
    q = as_rational(q, "q")
    if not 0 <= q < 1:
        raise ArithmeticDomainError("theta needs 0 <= q < 1")
    if q == 0:
        return Enclosure(Fraction(1))
    acc = FixedSum(bits + GUARD)
    eps = target(bits)
    v = 0
    while True:
        v += 1
        acc.add(2 * q ** (v * v))
        tail = theta_tail(q, v)
        if tail <= eps:
            return finish(1 + acc.enclosure(tail), bits)


def theta_tail(q: Fraction, n: int) -> Fraction:
    return 2 * q ** ((n + 1) ** 2) / (1 - q)
