"""Midpoint-radius enclosures with exact rational endpoints.

Arithmetic on :class:`Enclosure` is exact: the result interval contains every
pointwise result of the operands and no rounding happens unless a caller asks
for it through :meth:`Enclosure.rounded`, which moves the midpoint to a dyadic
rational and charges the movement to the radius.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Rational as _RationalABC

from ..errors import ArithmeticDomainError, ValidationError

DEFAULT_PREC = 128
_RAD_BITS = 32


def _log2_floor(x: Fraction) -> int:
    """floor(log2(|x|)) for nonzero rational x."""
    n, d = abs(x.numerator), x.denominator
    e = n.bit_length() - d.bit_length()
    # 2^e <= n/d < 2^(e+1) after at most one correction
    if e >= 0:
        if n < (d << e):
            e -= 1
    elif (n << -e) < d:
        e -= 1
    return e


def round_dyadic(x: Fraction, bits: int, mode: str = "nearest") -> Fraction:
    """Round ``x`` to a dyadic rational carrying ``bits`` significant bits.

    ``mode`` is one of ``"nearest"``, ``"down"`` (toward -inf) or ``"up"``.
    """
    x = Fraction(x)
    if x == 0:
        return x
    shift = bits - 1 - _log2_floor(x)
    n, d = x.numerator, x.denominator
    if shift >= 0:
        n <<= shift
    else:
        d <<= -shift
    if mode == "down":
        q = n // d
    elif mode == "up":
        q = -((-n) // d)
    else:
        q, r = divmod(n, d)
        if 2 * r >= d:
            q += 1
    if shift >= 0:
        return Fraction(q, 1 << shift)
    return Fraction(q << -shift)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True, slots=True)
class Enclosure:
    """The closed interval ``[mid - rad, mid + rad]``."""

    mid: Fraction
    rad: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "mid", _as_fraction(self.mid))
        object.__setattr__(self, "rad", _as_fraction(self.rad))
        if self.rad < 0:
            raise ValidationError("enclosure radius must be non-negative", "rad")

    # construction -------------------------------------------------------

    @classmethod
    def exact(cls, x) -> "Enclosure":
        return cls(_as_fraction(x), Fraction(0))

    @classmethod
    def from_bounds(cls, lo, hi) -> "Enclosure":
        lo, hi = _as_fraction(lo), _as_fraction(hi)
        if lo > hi:
            raise ValidationError(f"empty interval [{lo}, {hi}]")
        return cls((lo + hi) / 2, (hi - lo) / 2)

    @classmethod
    def from_decimal(cls, text: str) -> "Enclosure":
        """Read a truncated decimal: the radius is one unit in the last place."""
        text = text.strip()
        try:
            d = Decimal(text)
        except InvalidOperation:
            raise ValidationError(f"not a decimal number: {text!r}") from None
        if not d.is_finite():
            raise ValidationError(f"not a finite decimal: {text!r}")
        exponent = d.as_tuple().exponent
        return cls(Fraction(d), Fraction(10) ** exponent)

    @classmethod
    def coerce(cls, x) -> "Enclosure":
        if isinstance(x, Enclosure):
            return x
        return cls.exact(x)

    # queries ------------------------------------------------------------

    @property
    def lower(self) -> Fraction:
        return self.mid - self.rad

    @property
    def upper(self) -> Fraction:
        return self.mid + self.rad

    @property
    def width(self) -> Fraction:
        return 2 * self.rad

    @property
    def magnitude(self) -> Fraction:
        """Upper bound on ``|x|`` over the interval."""
        return abs(self.mid) + self.rad

    @property
    def is_exact(self) -> bool:
        return self.rad == 0

    def contains(self, x) -> bool:
        if isinstance(x, Enclosure):
            return self.lower <= x.lower and x.upper <= self.upper
        x = _as_fraction(x)
        return self.lower <= x <= self.upper

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def contains_zero(self) -> bool:
        return abs(self.mid) <= self.rad

    def excludes_zero(self) -> bool:
        return not self.contains_zero()

    def intersects(self, other: "Enclosure") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def hull(self, other: "Enclosure") -> "Enclosure":
        return Enclosure.from_bounds(min(self.lower, other.lower), max(self.upper, other.upper))

    def widened(self, extra) -> "Enclosure":
        return Enclosure(self.mid, self.rad + _as_fraction(extra))

    def rounded(self, prec: int = DEFAULT_PREC) -> "Enclosure":
        """Dyadic midpoint at ``prec`` bits, radius rounded up; still contains self."""
        mid = round_dyadic(self.mid, prec)
        err = abs(self.mid - mid)
        rad = self.rad + err
        if rad:
            rad = round_dyadic(rad, _RAD_BITS, "up")
        return Enclosure(mid, rad)

    # arithmetic ---------------------------------------------------------

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.mid, self.rad)

    def __pos__(self) -> "Enclosure":
        return self

    def __add__(self, other) -> "Enclosure":
        try:
            o = Enclosure.coerce(other)
        except TypeError:
            return NotImplemented
        return Enclosure(self.mid + o.mid, self.rad + o.rad)

    __radd__ = __add__

    def __sub__(self, other) -> "Enclosure":
        try:
            o = Enclosure.coerce(other)
        except TypeError:
            return NotImplemented
        return Enclosure(self.mid - o.mid, self.rad + o.rad)

    def __rsub__(self, other) -> "Enclosure":
        try:
            o = Enclosure.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> "Enclosure":
        try:
            o = Enclosure.coerce(other)
        except TypeError:
            return NotImplemented
        mid = self.mid * o.mid
        rad = abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad
        return Enclosure(mid, rad)

    __rmul__ = __mul__

    def reciprocal(self) -> "Enclosure":
        if self.contains_zero():
            raise ArithmeticDomainError("division by an enclosure containing zero")
        if self.rad == 0:
            return Enclosure(1 / self.mid)
        return Enclosure.from_bounds(1 / self.upper, 1 / self.lower)

    def __truediv__(self, other) -> "Enclosure":
        try:
            o = Enclosure.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other) -> "Enclosure":
        try:
            o = Enclosure.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.reciprocal()

    def __pow__(self, n: int) -> "Enclosure":
        if not isinstance(n, int) or n < 0:
            raise ValueError("enclosures support non-negative integer powers only")
        if n == 0:
            return Enclosure(Fraction(1))
        if self.rad == 0:
            return Enclosure(self.mid**n)
        lo, hi = self.lower, self.upper
        if lo >= 0:
            return Enclosure.from_bounds(lo**n, hi**n)
        if hi <= 0:
            if n % 2 == 0:
                return Enclosure.from_bounds(hi**n, lo**n)
            return Enclosure.from_bounds(lo**n, hi**n)
        if n % 2 == 0:
            return Enclosure.from_bounds(0, max(-lo, hi) ** n)
        return Enclosure.from_bounds(lo**n, hi**n)

    # display ------------------------------------------------------------

    def to_decimal_string(self, digits: int = 20) -> str:
        """Midpoint to ``digits`` significant digits (display only)."""
        from decimal import localcontext

        with localcontext() as ctx:
            ctx.prec = digits
            m = Decimal(self.mid.numerator) / Decimal(self.mid.denominator)
        return str(m)

    def __str__(self) -> str:
        if self.rad == 0:
            return str(self.mid)
        r = float(self.rad)
        return f"{self.to_decimal_string()} +/- {r:.3e}"

    def to_json(self) -> dict:
        return {
            "mid": str(self.mid),
            "rad": str(self.rad),
            "approx": self.to_decimal_string(),
            "rad_approx": f"{float(self.rad):.3e}",
        }


def decimal_interval(text: str) -> tuple[Fraction, Fraction]:
    """The interval ``[d, d + ulp]`` named by a truncated decimal digit string."""
    e = Enclosure.from_decimal(text)
    d = e.mid
    ulp = e.rad
    if d >= 0:
        return d, d + ulp
    return d - ulp, d


def matches_digits(enc: Enclosure, text: str) -> bool:
    """True when ``enc`` lies inside the truncated-decimal interval of ``text``."""
    lo, hi = decimal_interval(text)
    return lo <= enc.lower and enc.upper <= hi
