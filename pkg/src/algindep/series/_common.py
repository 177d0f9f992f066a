"""Shared plumbing for certified series: precision handling and a fixed-point
accumulator whose truncation error is counted in units of the last place."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ValidationError
from ..exact import Enclosure

GUARD = 32


@dataclass(frozen=True)
class Precision:
    """Target: output radius <= 2^-bits * max(1, |mid|)."""

    bits: int

    def __post_init__(self):
        if isinstance(self.bits, bool) or not isinstance(self.bits, int) or self.bits < 8:
            raise ValidationError("precision must be an integer number of bits >= 8", "prec")


def bits_of(prec) -> int:
    if isinstance(prec, Precision):
        return prec.bits
    return Precision(prec).bits


def target(bits: int) -> Fraction:
    return Fraction(1, 1 << (bits + 2))


class FixedSum:
    """Sum of exact rationals kept as an integer multiple of ``2^-w``.

    Each addition floors, so the exact sum lies in
    ``[acc, acc + ulps] * 2^-w``.
    """

    __slots__ = ("w", "acc", "ulps")

    def __init__(self, w: int):
        self.w = w
        self.acc = 0
        self.ulps = 0

    def add(self, t: Fraction):
        if t:
            self.acc += (t.numerator << self.w) // t.denominator
            self.ulps += 1

    def enclosure(self, tail: Fraction = Fraction(0)) -> Enclosure:
        scale = 1 << self.w
        lo = Fraction(self.acc, scale) - tail
        hi = Fraction(self.acc + self.ulps, scale) + tail
        return Enclosure.from_bounds(lo, hi)


def finish(enc: Enclosure, bits: int) -> Enclosure:
    """Compact the midpoint; keeps a few guard bits beyond the target."""
    return enc.rounded(bits + 8)


def as_rational(x, name: str) -> Fraction:
    if isinstance(x, float):
        raise ValidationError(f"{name} must be an exact rational, not a float", name)
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValidationError(f"{name} must be an exact rational", name) from None
