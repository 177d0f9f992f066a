"""Certified pi, ln, sqrt and exp on exact rationals (and monotone lifts to
enclosures)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from ..errors import ArithmeticDomainError, ValidationError
from ..exact import Enclosure
from ..exact.enclosure import _log2_floor
from ._common import GUARD, FixedSum, as_rational, bits_of, finish


def _atan_inv(x: int, w: int) -> Enclosure:
    """arctan(1/x) for integer x >= 2; alternating series, error <= next term."""
    acc = FixedSum(w)
    eps = Fraction(1, 1 << (w - 4))
    k = 0
    power = x
    while True:
        term = Fraction(1, (2 * k + 1) * power)
        acc.add(term if k % 2 == 0 else -term)
        k += 1
        power *= x * x
        nxt = Fraction(1, (2 * k + 1) * power)
        if nxt < eps:
            return acc.enclosure(nxt)


@lru_cache(maxsize=32)
def _pi_at(w: int) -> Enclosure:
    # Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    return (16 * _atan_inv(5, w + 8) - 4 * _atan_inv(239, w + 8)).rounded(w)


def pi(prec=128) -> Enclosure:
    bits = bits_of(prec)
    return finish(_pi_at(bits + GUARD), bits)


def _atanh_series(u: Fraction, w: int) -> Enclosure:
    """atanh(u) = sum u^(2i+1)/(2i+1) for |u| <= 1/2 with geometric tail."""
    if u == 0:
        return Enclosure(Fraction(0))
    acc = FixedSum(w)
    eps = Fraction(1, 1 << (w - 4))
    u2 = u * u
    power = u
    i = 0
    while True:
        acc.add(power / (2 * i + 1))
        i += 1
        power *= u2
        tail = abs(power) / ((2 * i + 1) * (1 - u2))
        if tail < eps:
            return acc.enclosure(tail)


@lru_cache(maxsize=32)
def _ln2_at(w: int) -> Enclosure:
    return (2 * _atanh_series(Fraction(1, 3), w + 4)).rounded(w)


def _ln_at(x: Fraction, w: int) -> Enclosure:
    if x <= 0:
        raise ArithmeticDomainError("ln needs a positive argument")
    if x == 1:
        return Enclosure(Fraction(0))
    # x = 2^k * y with y near 1
    k = _log2_floor(x)
    y = x / Fraction(2) ** k
    if y > Fraction(4, 3):
        k += 1
        y /= 2
    u = (y - 1) / (y + 1)
    extra = max(0, abs(k).bit_length())
    ln_y = 2 * _atanh_series(u, w + 4)
    total = ln_y + k * _ln2_at(w + extra + 4) if k else ln_y
    return total.rounded(w)


def ln(x, prec=128) -> Enclosure:
    bits = bits_of(prec)
    x = as_rational(x, "x")
    if x <= 0:
        raise ArithmeticDomainError("ln needs a positive argument")
    return finish(_ln_at(x, bits + GUARD), bits)


def _sqrt_at(x: Fraction, w: int) -> Enclosure:
    if x < 0:
        raise ArithmeticDomainError("sqrt needs a non-negative argument")
    if x == 0:
        return Enclosure(Fraction(0))
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Enclosure(Fraction(rn, rd))
    shift = max(0, w - _log2_floor(x) // 2 + 2)
    scaled_num = n << (2 * shift)
    lo_int = isqrt(scaled_num // d)
    c = -((-scaled_num) // d)
    hi_int = isqrt(c)
    if hi_int * hi_int < c:
        hi_int += 1
    scale = 1 << shift
    return Enclosure.from_bounds(Fraction(lo_int, scale), Fraction(hi_int, scale))


def sqrt(x, prec=128) -> Enclosure:
    bits = bits_of(prec)
    x = as_rational(x, "x")
    return finish(_sqrt_at(x, bits + GUARD), bits)


def _exp_series(z: Fraction, w: int) -> Enclosure:
    """exp(z) for |z| <= 1 by the Taylor series with factorial tail."""
    acc = FixedSum(w)
    eps = Fraction(1, 1 << (w - 4))
    term = Fraction(1)
    n = 0
    az = abs(z)
    while True:
        acc.add(term)
        n += 1
        term = term * z / n
        if n + 1 > az:
            tail = abs(term) / (1 - az / (n + 1))
            if tail < eps:
                return acc.enclosure(tail)


def _exp_at(z: Fraction, w: int) -> Enclosure:
    if z == 0:
        return Enclosure(Fraction(1))
    r = max(0, _log2_floor(z) + 1)
    val = _exp_series(z / (1 << r), w + 2 * r + 8)
    for _ in range(r):
        val = (val * val).rounded(w + 2 * r + 8)
    return val.rounded(w)


def exp(z, prec=128) -> Enclosure:
    bits = bits_of(prec)
    z = as_rational(z, "z")
    return finish(_exp_at(z, bits + GUARD), bits)


# monotone lifts to enclosure arguments ----------------------------------


def sqrt_enclosure(x: Enclosure, w: int) -> Enclosure:
    if x.lower < 0:
        if x.upper < 0:
            raise ArithmeticDomainError("sqrt of a negative enclosure")
        raise ArithmeticDomainError("sqrt of an enclosure straddling zero")
    if x.rad == 0:
        return _sqrt_at(x.mid, w)
    return Enclosure.from_bounds(_sqrt_at(x.lower, w).lower, _sqrt_at(x.upper, w).upper).rounded(w)


def ln_enclosure(x: Enclosure, w: int) -> Enclosure:
    if x.lower <= 0:
        raise ArithmeticDomainError("ln of an enclosure reaching zero")
    if x.rad == 0:
        return _ln_at(x.mid, w)
    return Enclosure.from_bounds(_ln_at(x.lower, w).lower, _ln_at(x.upper, w).upper).rounded(w)


def exp_enclosure(x: Enclosure, w: int) -> Enclosure:
    if x.rad == 0:
        return _exp_at(x.mid, w)
    return Enclosure.from_bounds(_exp_at(x.lower, w).lower, _exp_at(x.upper, w).upper).rounded(w)


def pi_at(w: int) -> Enclosure:
    return _pi_at(w)


def elementary(kind: str, arg=None, prec=128) -> Enclosure:
    if kind == "pi":
        return pi(prec)
    if arg is None:
        raise ValidationError(f"{kind} needs an argument", "arg")
    if kind == "ln":
        return ln(arg, prec)
    if kind == "sqrt":
        return sqrt(arg, prec)
    if kind == "exp":
        return exp(arg, prec)
    raise ValidationError(f"unknown elementary function {kind!r}", "kind")

