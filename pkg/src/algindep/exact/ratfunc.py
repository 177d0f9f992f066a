"""Rational functions as unreduced numerator/denominator pairs.

No gcd cancellation is attempted. The pair is only content-normalized: the
denominator has integer coefficients with content 1 and a positive leading
coefficient. Equality is decided by cross-multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import ArithmeticDomainError, StructuralError
from .enclosure import DEFAULT_PREC, Enclosure
from .polynomial import Polynomial


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.constant(num.variables, 1)
        if num.variables != den.variables:
            raise StructuralError("numerator and denominator use different variable lists")
        if den.is_zero():
            raise ArithmeticDomainError("rational function with zero denominator")
        c, prim = den.primitive()
        self.num = num * (1 / c) if c != 1 else num
        self.den = prim

    @classmethod
    def coerce(cls, x, variables: Sequence[str]) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return cls(Polynomial.coerce(x, variables))

    @property
    def variables(self) -> tuple[str, ...]:
        return self.num.variables

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        """True when the stored denominator is a constant."""
        return self.den.is_constant()

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise StructuralError("rational function has a non-constant denominator")
        return self.num * (1 / self.den.constant_value())

    def used_variables(self) -> set[str]:
        return self.num.used_variables() | self.den.used_variables()

    def with_variables(self, variables: Sequence[str]) -> "RationalFunction":
        return RationalFunction(self.num.with_variables(variables), self.den.with_variables(variables))

    def _lift(self, other) -> "RationalFunction | None":
        if isinstance(other, RationalFunction):
            if other.variables != self.variables:
                raise StructuralError(
                    f"variable lists differ: {list(self.variables)} vs {list(other.variables)}"
                )
            return other
        if isinstance(other, (Polynomial, int, Fraction)):
            p = Polynomial.coerce(other, self.variables)
            if p.variables != self.variables:
                raise StructuralError(
                    f"variable lists differ: {list(self.variables)} vs {list(p.variables)}"
                )
            return RationalFunction(p)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ArithmeticDomainError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> "RationalFunction":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        return RationalFunction(self.num**n, self.den**n)

    def partial(self, name: str) -> "RationalFunction":
        """Quotient rule: ``(num' * den - num * den') / den^2``."""
        dn = self.num.partial(name)
        dd = self.den.partial(name)
        if dd.is_zero():
            return RationalFunction(dn, self.den)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ArithmeticDomainError("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def eval_enclosure(self, point: Mapping[str, Enclosure], prec: int = DEFAULT_PREC) -> Enclosure:
        n = self.num.eval_enclosure(point, prec)
        d = self.den.eval_enclosure(point, prec)
        if d.contains_zero():
            raise ArithmeticDomainError("denominator enclosure contains zero")
        q = n / d
        return q if q.is_exact else q.rounded(prec)

    def equals(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return False
        return self.num * o.den == o.num * self.den

    def __eq__(self, other) -> bool:
        if isinstance(other, (RationalFunction, Polynomial, int, Fraction)):
            return self.equals(other)
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        from ..parse import format_canonical

        return f"RationalFunction({format_canonical(self)!r})"

    def __str__(self) -> str:
        from ..parse import format_canonical

        return format_canonical(self)


def ratfn_arithmetic(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    if a.variables != b.variables:
        raise StructuralError("rational functions over different variable lists")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown rational-function operation {op!r}")


def ratfn_partial(r: RationalFunction, var: str) -> RationalFunction:
    return r.partial(var)


def substitute(p: Polynomial, values: Mapping[str, RationalFunction], variables: Sequence[str]) -> RationalFunction:
    """Replace variables of ``p`` by rational functions over ``variables``.

    Unreplaced variables of ``p`` must appear in ``variables``.
    """
    variables = tuple(variables)
    images = []
    for v in p.variables:
        if v in values:
            images.append(RationalFunction.coerce(values[v], variables).with_variables(variables))
        elif v in p.used_variables():
            images.append(RationalFunction(Polynomial.variable(variables, v)))
        else:
            images.append(None)
    total = RationalFunction(Polynomial.zero(variables))
    for e, c in p.terms.items():
        term = RationalFunction(Polynomial.constant(variables, c))
        for img, k in zip(images, e):
            if k:
                term = term * img**k
        total = total + term
    return total
