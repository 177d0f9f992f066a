"""Sparse multivariate polynomials over Q.

A :class:`Polynomial` is stored as integer coefficients over one common
positive denominator, so the inner loops (product, derivative, evaluation)
run on plain integers through :mod:`algindep.kernels`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .. import kernels
from ..errors import ArithmeticDomainError, StructuralError
from .enclosure import DEFAULT_PREC, Enclosure

Exponent = tuple[int, ...]


def grlex_key(e: Exponent) -> tuple:
    """Sort key placing larger monomials first under graded lex order."""
    return (-sum(e), tuple(-x for x in e))


def _content(coeffs: Mapping[Exponent, int]) -> int:
    g = 0
    for c in coeffs.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


class Polynomial:
    """Immutable polynomial in an ordered tuple of named variables."""

    __slots__ = ("variables", "_coeffs", "_den", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise StructuralError(f"duplicate variable names in {variables}")
        nv = len(variables)
        fracs = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nv or any(x < 0 for x in e):
                raise StructuralError(f"exponent vector {e} does not fit variables {variables}")
            c = Fraction(c)
            if c:
                fracs[e] = fracs.get(e, 0) + c
        den = 1
        for c in fracs.values():
            den = den * c.denominator // gcd(den, c.denominator)
        coeffs = {e: int(c * den) for e, c in fracs.items() if c}
        self._set(variables, coeffs, den)

    def _set(self, variables, coeffs, den):
        g = gcd(_content(coeffs), den) if coeffs else den
        if g > 1:
            coeffs = {e: c // g for e, c in coeffs.items()}
            den //= g
        if not coeffs:
            den = 1
        self.variables = variables
        self._coeffs = coeffs
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple, coeffs: dict, den: int = 1) -> "Polynomial":
        p = cls.__new__(cls)
        p._set(variables, coeffs, den)
        return p

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls._raw(tuple(variables), {}, 1)

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "Polynomial":
        variables = tuple(variables)
        c = Fraction(c)
        if not c:
            return cls.zero(variables)
        return cls._raw(variables, {(0,) * len(variables): c.numerator}, c.denominator)

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        try:
            i = variables.index(name)
        except ValueError:
            raise StructuralError(f"unknown variable {name!r}; declared {list(variables)}") from None
        e = [0] * len(variables)
        e[i] = 1
        return cls._raw(variables, {tuple(e): 1}, 1)

    @classmethod
    def coerce(cls, x, variables: Sequence[str]) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        return cls.constant(variables, x)

    # views --------------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        """Exponent vector -> coefficient, in graded lex order (largest first)."""
        return {e: Fraction(self._coeffs[e], self._den) for e in self.monomials()}

    def monomials(self) -> list[Exponent]:
        return sorted(self._coeffs, key=grlex_key)

    def coefficient(self, e: Exponent) -> Fraction:
        return Fraction(self._coeffs.get(tuple(e), 0), self._den)

    def integer_form(self) -> tuple[dict[Exponent, int], int]:
        """``(coeffs, den)`` with ``self == sum(coeffs) / den``; do not mutate."""
        return self._coeffs, self._den

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return not self._coeffs or (len(self._coeffs) == 1 and not any(next(iter(self._coeffs))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise StructuralError("polynomial is not constant")
        return self.coefficient((0,) * self.nvars)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._coeffs), default=-1)

    def degree_in(self, name: str) -> int:
        i = self._index(name)
        return max((e[i] for e in self._coeffs), default=-1)

    def leading(self) -> tuple[Exponent, Fraction]:
        if not self._coeffs:
            raise ArithmeticDomainError("zero polynomial has no leading term")
        e = min(self._coeffs, key=grlex_key)
        return e, Fraction(self._coeffs[e], self._den)

    def used_variables(self) -> set[str]:
        used = set()
        for e in self._coeffs:
            used.update(v for v, k in zip(self.variables, e) if k)
        return used

    def __len__(self) -> int:
        return len(self._coeffs)

    # alignment ----------------------------------------------------------

    def _index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise StructuralError(
                f"unknown variable {name!r}; declared {list(self.variables)}"
            ) from None

    def with_variables(self, variables: Sequence[str]) -> "Polynomial":
        """Re-express over another variable list containing every used variable."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        for v in self.used_variables():
            if v not in pos:
                raise StructuralError(f"variable {v!r} missing from target list {list(variables)}")
        idx = [pos.get(v) for v in self.variables]
        out = {}
        for e, c in self._coeffs.items():
            ne = [0] * len(variables)
            for k, j in zip(e, idx):
                if k:
                    ne[j] = k
            out[tuple(ne)] = c
        return Polynomial._raw(variables, out, self._den)

    def _check(self, other: "Polynomial"):
        if self.variables != other.variables:
            raise StructuralError(
                f"variable lists differ: {list(self.variables)} vs {list(other.variables)}"
            )

    def _lift(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.variables, other)
        return None

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._combine(o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._combine(o, -1)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o._combine(self, -1)

    def _combine(self, o: "Polynomial", sign: int) -> "Polynomial":
        if not o._coeffs:
            return self
        if not self._coeffs:
            return o if sign == 1 else -o
        da, db = self._den, o._den
        g = gcd(da, db)
        la, lb = db // g, da // g
        coeffs = kernels.add_terms(self._coeffs, la, o._coeffs, sign * lb)
        return Polynomial._raw(self.variables, coeffs, da * la)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.variables, kernels.scale_terms(self._coeffs, -1), self._den)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Polynomial._raw(
                self.variables,
                kernels.scale_terms(self._coeffs, c.numerator),
                self._den * c.denominator,
            )
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Polynomial._raw(
            self.variables, kernels.mul_terms(self._coeffs, o._coeffs), self._den * o._den
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def partial(self, name: str) -> "Polynomial":
        i = self._index(name)
        return Polynomial._raw(self.variables, kernels.diff_terms(self._coeffs, i), self._den)

    def exact_div(self, d: "Polynomial") -> "Polynomial":
        """Quotient ``self / d`` when ``d`` divides ``self`` exactly over Q."""
        self._check(d)
        if d.is_zero():
            raise ArithmeticDomainError("division by the zero polynomial")
        if d.is_constant():
            return self * (1 / d.constant_value())
        lead_e, lead_c = d.leading()
        rem = self
        quotient_terms: dict[Exponent, Fraction] = {}
        while not rem.is_zero():
            e, c = rem.leading()
            qe = tuple(a - b for a, b in zip(e, lead_e))
            if any(x < 0 for x in qe):
                raise ArithmeticDomainError("polynomial division is not exact")
            qc = c / lead_c
            quotient_terms[qe] = qc
            rem = rem - d.monomial_multiple(qe, qc)
        return Polynomial(self.variables, quotient_terms)

    def monomial_multiple(self, e: Exponent, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.variables)
        coeffs = {
            tuple(a + b for a, b in zip(k, e)): v * c.numerator for k, v in self._coeffs.items()
        }
        return Polynomial._raw(self.variables, coeffs, self._den * c.denominator)

    def primitive(self) -> tuple[Fraction, "Polynomial"]:
        """``(c, p)`` with ``self == c * p`` and ``p`` integer, content 1, positive lead."""
        if self.is_zero():
            return Fraction(0), self
        g = _content(self._coeffs)
        _, lc = self.leading()
        if lc < 0:
            g = -g
        p = Polynomial._raw(self.variables, {e: c // g for e, c in self._coeffs.items()}, 1)
        return Fraction(g, self._den), p

    # evaluation ---------------------------------------------------------

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        """Exact value at a rational point (every used variable must be bound)."""
        nums, dens = [], []
        for v in self.variables:
            if v in point:
                x = Fraction(point[v])
            elif v in self.used_variables():
                raise StructuralError(f"variable {v!r} is not bound")
            else:
                x = Fraction(0)
            nums.append(x.numerator)
            dens.append(x.denominator)
        n, d = kernels.eval_terms(self._coeffs, nums, dens)
        return Fraction(n, d * self._den)

    def eval_enclosure(self, point: Mapping[str, Enclosure], prec: int = DEFAULT_PREC) -> Enclosure:
        """Enclosure of the value over the box ``point``.

        Exact (radius 0) when every bound enclosure is exact; otherwise each
        monomial is bounded with interval powers and the sum is rounded to
        ``prec`` bits.
        """
        used = self.used_variables()
        for v in used:
            if v not in point:
                raise StructuralError(f"variable {v!r} is not bound")
        boxes = {v: Enclosure.coerce(point[v]) for v in used}
        if all(b.rad == 0 for b in boxes.values()):
            return Enclosure(self.evaluate({v: b.mid for v, b in boxes.items()}))
        idx = [(i, boxes[v]) for i, v in enumerate(self.variables) if v in boxes]
        pow_cache: dict[tuple[int, int], Enclosure] = {}
        total = Enclosure(Fraction(0))
        for e, c in self._coeffs.items():
            term = Enclosure(Fraction(c, self._den))
            for i, box in idx:
                k = e[i]
                if k:
                    key = (i, k)
                    pk = pow_cache.get(key)
                    if pk is None:
                        pk = (box**k).rounded(prec + 8)
                        pow_cache[key] = pk
                    term = term * pk
            total = (total + term).rounded(prec + 8)
        return total.rounded(prec)

    # comparison / hashing -----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return (
                self.variables == other.variables
                and self._den == other._den
                and self._coeffs == other._coeffs
            )
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, self._den, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self) -> str:
        from ..parse import format_polynomial

        return f"Polynomial({format_polynomial(self)!r}, {list(self.variables)})"

    def __str__(self) -> str:
        from ..parse import format_polynomial

        return format_polynomial(self)


def align(polys: Iterable[Polynomial], variables: Sequence[str]) -> list[Polynomial]:
    return [p.with_variables(variables) for p in polys]


def poly_arithmetic(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_partial(p: Polynomial, var: str) -> Polynomial:
    return p.partial(var)


def poly_eval(p: Polynomial, point: Mapping[str, Enclosure], prec: int = DEFAULT_PREC) -> Enclosure:
    return p.eval_enclosure(point, prec)
