"""Is a symbolic determinant identically zero?

Random integer points give a fast, exact certificate of non-vanishing; an
identically-zero verdict is only ever issued after full symbolic expansion.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import UndecidedError
from .exact import Polynomial, RationalFunction
from .jacobian import SymbolicMatrix, determinant, numeric_determinant

SAMPLE_BOUND = 2**16
NONZERO = "NonzeroWitness"
ZERO = "IdenticallyZero"


@dataclass
class Effort:
    samples: int = 0
    redraws: int = 0
    symbolic: bool = False


@dataclass
class ZeroTestResult:
    status: str
    witness: dict[str, Fraction] | None = None
    witness_value: Fraction | None = None
    effort: Effort = field(default_factory=Effort)
    determinant: RationalFunction | None = None

    @property
    def nonzero(self) -> bool:
        return self.status == NONZERO


def sample_point(seed: int, counter: int, variables, bound: int = SAMPLE_BOUND) -> dict[str, int]:
    """Counter-based draw from ``[-bound, bound]^vars``; independent of call order."""
    span = 2 * bound + 1
    point = {}
    for k, v in enumerate(variables):
        h = hashlib.blake2b(
            f"{seed}:{counter}:{k}".encode(), digest_size=16, person=b"algindep-zt"
        ).digest()
        point[v] = int.from_bytes(h, "big") % span - bound
    return point


def _evaluate(mat: SymbolicMatrix, point) -> list[list[Fraction]] | None:
    rows = []
    for row in mat.entries:
        out = []
        for e in row:
            d = e.den.evaluate(point)
            if d == 0:
                return None
            out.append(e.num.evaluate(point) / d)
        rows.append(out)
    return rows


def matrix_value_at(mat: SymbolicMatrix, point) -> Fraction | None:
    """Exact determinant of ``mat`` at ``point``; None if a denominator vanishes."""
    vals = _evaluate(mat, point)
    return None if vals is None else numeric_determinant(vals)


def _grid_witness(mat: SymbolicMatrix, det: RationalFunction):
    # a nonzero polynomial of degree <= d in each variable is nonzero somewhere on {0..d}^v
    q = det.num
    for d in mat.denominators():
        q = q * d
    variables = mat.variables
    degs = [max(q.degree_in(v), 0) for v in variables]
    for combo in itertools.product(*(range(d + 1) for d in degs)):
        point = dict(zip(variables, combo))
        if q.evaluate(point) != 0:
            return point
    raise AssertionError("nonzero polynomial vanished on its whole degree grid")


def det_zero_status(
    mat: SymbolicMatrix,
    seed: int = 0,
    budget: int = 64,
    symbolic_fallback: bool = True,
) -> ZeroTestResult:
    """Decide whether ``det(mat)`` vanishes identically.

    Deterministic in ``(mat, seed, budget)``. Samples whose denominators
    vanish are redrawn without counting against the budget, up to
    ``10 * budget`` redraws.
    """
    if not mat.is_square:
        from .errors import StructuralError

        raise StructuralError("zero test needs a square matrix")
    if budget <= 0 and not symbolic_fallback:
        raise UndecidedError("budget is 0 and symbolic fallback is disabled; raise --budget")
    variables = mat.variables
    effort = Effort()
    counter = 0
    while effort.samples < budget and effort.redraws <= 10 * budget:
        point = sample_point(seed, counter, variables)
        counter += 1
        value = matrix_value_at(mat, point)
        if value is None:
            effort.redraws += 1
            continue
        effort.samples += 1
        if value != 0:
            return ZeroTestResult(NONZERO, {k: Fraction(v) for k, v in point.items()}, value, effort)
    if not symbolic_fallback:
        raise UndecidedError(f"all {effort.samples} samples vanished; raise the budget or allow expansion")
    effort.symbolic = True
    det = determinant(mat)
    if det.is_zero():
        return ZeroTestResult(ZERO, None, None, effort, det)
    point = _grid_witness(mat, det)
    value = matrix_value_at(mat, point)
    return ZeroTestResult(NONZERO, {k: Fraction(v) for k, v in point.items()}, value, effort, det)


def poly_is_zero(p: Polynomial) -> bool:
    return p.is_zero()


def recheck(mat: SymbolicMatrix, result: ZeroTestResult) -> bool:
    """Independently re-verify a zero-test result."""
    if result.status == NONZERO:
        value = matrix_value_at(mat, result.witness)
        return value is not None and value != 0 and value == result.witness_value
    det = result.determinant if result.determinant is not None else determinant(mat, "bareiss")
    return det.num.is_zero() and not det.num.integer_form()[0]
