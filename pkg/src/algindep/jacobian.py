"""Jacobian matrices for the four criterion shapes and exact determinants.

Orientation: entry ``(j, i)`` is the derivative of equation ``j`` with
respect to variable ``i`` (rows are equations, columns are variables).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import StructuralError
from .exact import DEFAULT_PREC, Enclosure, Polynomial, RationalFunction


@dataclass(frozen=True)
class SymbolicMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[RationalFunction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SymbolicMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise StructuralError("matrix must have at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise StructuralError("ragged matrix")
        variables = None
        for r in rows:
            for x in r:
                if isinstance(x, (Polynomial, RationalFunction)):
                    variables = x.variables
                    break
            if variables is not None:
                break
        variables = variables or ()
        entries = tuple(tuple(RationalFunction.coerce(x, variables) for x in r) for r in rows)
        return cls(len(entries), ncols, entries)

    @property
    def variables(self) -> tuple[str, ...]:
        return self.entries[0][0].variables

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ji: tuple[int, int]) -> RationalFunction:
        j, i = ji
        return self.entries[j][i]

    def is_polynomial(self) -> bool:
        return all(e.is_polynomial() for row in self.entries for e in row)

    def polynomial_rows(self) -> list[list[Polynomial]]:
        return [[e.as_polynomial() for e in row] for row in self.entries]

    def denominators(self) -> list[Polynomial]:
        """Distinct non-constant entry denominators, in first-seen order."""
        seen: list[Polynomial] = []
        for row in self.entries:
            for e in row:
                if not e.den.is_constant() and e.den not in seen:
                    seen.append(e.den)
        return seen

    def evaluate(self, point: Mapping[str, object]) -> list[list[Fraction]]:
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def eval_enclosure(self, point: Mapping[str, Enclosure], prec: int = DEFAULT_PREC) -> list[list[Enclosure]]:
        return [[e.eval_enclosure(point, prec) for e in row] for row in self.entries]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SymbolicMatrix":
        return SymbolicMatrix(
            len(rows), len(cols), tuple(tuple(self.entries[j][i] for i in cols) for j in rows)
        )

    def swap_columns(self, a: int, b: int) -> "SymbolicMatrix":
        cols = list(range(self.cols))
        cols[a], cols[b] = cols[b], cols[a]
        return self.submatrix(range(self.rows), cols)

    def to_strings(self) -> list[list[str]]:
        from .parse import format_canonical

        return [[format_canonical(e) for e in row] for row in self.entries]


@dataclass(frozen=True)
class ClearedJacobian:
    """``N[j][i] = dT_j/dX_i * U_j - T_j * dU_j/dX_i`` with ``U_j`` the denominators.

    ``det(J_R) * prod(U_j^2) == det(N)``.
    """

    numerators: tuple[tuple[Polynomial, ...], ...]
    denominators: tuple[Polynomial, ...]

    def matrix(self) -> SymbolicMatrix:
        return SymbolicMatrix.from_rows(self.numerators)

    def determinant(self, method: str = "auto") -> Polynomial:
        return determinant(self.matrix(), method).as_polynomial()


def _check_vars(exprs, allowed: Sequence[str], what: str):
    allowed_set = set(allowed)
    for k, e in enumerate(exprs):
        extra = e.used_variables() - allowed_set
        if extra:
            raise StructuralError(f"{what}[{k}] uses variables {sorted(extra)} outside {list(allowed)}")


def _as_ratfns(exprs, variables: Sequence[str]) -> list[RationalFunction]:
    out = []
    for e in exprs:
        if isinstance(e, Polynomial):
            e = RationalFunction(e)
        elif not isinstance(e, RationalFunction):
            raise StructuralError(f"expected Polynomial or RationalFunction, got {type(e).__name__}")
        out.append(e.with_variables(variables))
    return out


def jacobian_of_map(rhs: Sequence, x_vars: Sequence[str]) -> SymbolicMatrix:
    """Jacobian of ``X -> (R_1(X), ..., R_n(X))``; square."""
    x_vars = tuple(x_vars)
    if len(rhs) != len(x_vars):
        raise StructuralError(f"map has {len(rhs)} components but {len(x_vars)} variables")
    _check_vars(rhs, x_vars, "rhs")
    rs = _as_ratfns(rhs, x_vars)
    return SymbolicMatrix(len(rs), len(x_vars), tuple(tuple(r.partial(x) for x in x_vars) for r in rs))


def jacobian_implicit(eqs: Sequence[Polynomial], x_vars: Sequence[str]) -> SymbolicMatrix:
    """Jacobian of implicit equations ``f_j(X, Y)`` with respect to ``x_vars`` only.

    Entries stay polynomials in both the X and Y variables.
    """
    x_vars = tuple(x_vars)
    if len(eqs) != len(x_vars):
        raise StructuralError(f"{len(eqs)} equations but {len(x_vars)} differentiation variables")
    for k, f in enumerate(eqs):
        if not isinstance(f, Polynomial):
            if isinstance(f, RationalFunction) and f.is_polynomial():
                f = f.as_polynomial()
            else:
                raise StructuralError(f"equation {k} is not a polynomial")
        missing = set(x_vars) - set(f.variables)
        if missing:
            raise StructuralError(f"equation {k} lacks variables {sorted(missing)}")
    polys = [f.as_polynomial() if isinstance(f, RationalFunction) else f for f in eqs]
    variables = polys[0].variables
    polys = [p.with_variables(variables) for p in polys]
    return SymbolicMatrix(
        len(polys),
        len(x_vars),
        tuple(tuple(RationalFunction(p.partial(x)) for x in x_vars) for p in polys),
    )


def cleared_jacobian(rhs: Sequence, x_vars: Sequence[str]) -> ClearedJacobian:
    x_vars = tuple(x_vars)
    if len(rhs) != len(x_vars):
        raise StructuralError(f"map has {len(rhs)} components but {len(x_vars)} variables")
    _check_vars(rhs, x_vars, "rhs")
    rows = []
    dens = []
    for r in _as_ratfns(rhs, x_vars):
        t, u = r.num, r.den
        rows.append(tuple(t.partial(x) * u - t * u.partial(x) for x in x_vars))
        dens.append(u)
    return ClearedJacobian(tuple(rows), tuple(dens))


# determinants -------------------------------------------------------------


def _cofactor_poly(m: list[list[Polynomial]]) -> Polynomial:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for i in range(n):
        a = m[0][i]
        if a.is_zero():
            continue
        minor = [row[:i] + row[i + 1 :] for row in m[1:]]
        term = a * _cofactor_poly(minor)
        if i % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else Polynomial.zero(m[0][0].variables)


def _cofactor_rf(m: list[list[RationalFunction]]) -> RationalFunction:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for i in range(n):
        a = m[0][i]
        if a.is_zero():
            continue
        minor = [row[:i] + row[i + 1 :] for row in m[1:]]
        term = a * _cofactor_rf(minor)
        if i % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else RationalFunction.coerce(0, m[0][0].variables)


def bareiss_poly(m: list[list[Polynomial]]) -> Polynomial:
    """Fraction-free elimination; every division is exact."""
    n = len(m)
    a = [list(row) for row in m]
    variables = a[0][0].variables
    sign = 1
    prev = Polynomial.constant(variables, 1)
    for k in range(n - 1):
        pivot = next((r for r in range(k, n) if not a[r][k].is_zero()), None)
        if pivot is None:
            return Polynomial.zero(variables)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                v = a[i][j] * akk
                if not aik.is_zero():
                    v = v - aik * a[k][j]
                a[i][j] = v.exact_div(prev) if not prev.is_constant() else v * (1 / prev.constant_value())
            a[i][k] = Polynomial.zero(variables)
        prev = akk
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def _cleared_rows(mat: SymbolicMatrix) -> tuple[list[list[Polynomial]], Polynomial]:
    """Multiply each row by the product of its distinct denominators."""
    variables = mat.variables
    rows = []
    scale = Polynomial.constant(variables, 1)
    for row in mat.entries:
        dens: list[Polynomial] = []
        for e in row:
            if not e.den.is_constant() and e.den not in dens:
                dens.append(e.den)
        out = []
        for e in row:
            p = e.num * (1 / e.den.constant_value()) if e.den.is_constant() else e.num
            for d in dens:
                if d != e.den:
                    p = p * d
            out.append(p)
        for d in dens:
            scale = scale * d
        rows.append(out)
    return rows, scale


def determinant(mat: SymbolicMatrix, method: str = "auto") -> RationalFunction:
    """Exact symbolic determinant; ``auto`` uses cofactors up to 3x3, Bareiss beyond."""
    if not mat.is_square:
        raise StructuralError(f"determinant of a non-square {mat.rows}x{mat.cols} matrix")
    if method == "auto":
        method = "cofactor" if mat.rows <= 3 else "bareiss"
    for i in range(mat.cols):
        if all(mat.entries[j][i].is_zero() for j in range(mat.rows)):
            return RationalFunction.coerce(0, mat.variables)
    if method == "cofactor":
        if mat.is_polynomial():
            return RationalFunction(_cofactor_poly(mat.polynomial_rows()))
        return _cofactor_rf([list(r) for r in mat.entries])
    if method == "bareiss":
        rows, scale = _cleared_rows(mat)
        return RationalFunction(bareiss_poly(rows), scale)
    raise ValueError(f"unknown determinant method {method!r}")


def numeric_determinant(m: list[list[Fraction]]) -> Fraction:
    """Exact determinant of a rational matrix by Gaussian elimination."""
    a = [list(map(Fraction, row)) for row in m]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        pivot = next((r for r in range(k, n) if a[r][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        akk = a[k][k]
        det *= akk
        for i in range(k + 1, n):
            f = a[i][k] / akk
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return det


def enclosure_determinant(m: list[list[Enclosure]], prec: int = DEFAULT_PREC) -> Enclosure:
    """Determinant of an enclosure matrix by cofactor expansion (sound, no division)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = Enclosure(Fraction(0))
    for i in range(n):
        minor = [row[:i] + row[i + 1 :] for row in m[1:]]
        term = m[0][i] * enclosure_determinant(minor, prec)
        total = (total - term if i % 2 else total + term).rounded(prec + 8)
    return total
