import gc
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from _gen import from_sympy, rand_nonzero_poly, rand_poly, rand_ratfn, syms, to_sympy
from algindep import kernels
from algindep import _kernels_py
from algindep.errors import ArithmeticDomainError, StructuralError
from algindep.exact import (
    Enclosure,
    Polynomial,
    RationalFunction,
    decimal_interval,
    matches_digits,
    poly_arithmetic,
    poly_eval,
    poly_partial,
    ratfn_arithmetic,
    ratfn_partial,
    substitute,
)
from algindep.exact.enclosure import round_dyadic

V = ("X1", "X2", "X3")
S = syms(V)


# polynomials -------------------------------------------------------------


def test_terms_and_grlex_order():
    p = Polynomial(("X1", "X2"), {(1, 1): 1, (2, 0): 1, (0, 0): 5, (0, 1): -2})
    assert list(p.terms) == [(2, 0), (1, 1), (0, 1), (0, 0)]
    assert str(p) == "X1^2 + X1*X2 - 2*X2 + 5"
    assert str(Polynomial.zero(("X1",))) == "0"


def test_zero_coefficients_dropped_and_equality():
    p = Polynomial(V, {(1, 0, 0): 0, (0, 1, 0): Fraction(3, 6)})
    assert p.terms == {(0, 1, 0): Fraction(1, 2)}
    assert p == Polynomial(V, {(0, 1, 0): Fraction(2, 4)})
    assert hash(p) == hash(Polynomial(V, {(0, 1, 0): Fraction(2, 4)}))


@pytest.mark.parametrize("seed", range(40))
def test_arithmetic_matches_sympy(seed):
    rng = random.Random(seed)
    a, b = rand_poly(rng, V), rand_poly(rng, V)
    sa, sb = to_sympy(a, S), to_sympy(b, S)
    assert poly_arithmetic(a, b, "add") == from_sympy(sa + sb, V, S)
    assert poly_arithmetic(a, b, "sub") == from_sympy(sa - sb, V, S)
    assert poly_arithmetic(a, b, "mul") == from_sympy(sa * sb, V, S)
    assert a**3 == from_sympy(sa**3, V, S)
    for i, x in enumerate(V):
        assert poly_partial(a, x) == from_sympy(sympy.diff(sa, S[i]), V, S)


def test_ring_laws_200_triples():
    rng = random.Random(100)
    zero = Polynomial.zero(V)
    for _ in range(200):
        a, b, c = (rand_poly(rng, V, big=True) for _ in range(3))
        ar = poly_arithmetic
        assert ar(a, ar(b, c, "add"), "mul") == ar(ar(a, b, "mul"), ar(a, c, "mul"), "add")
        assert ar(ar(a, b, "mul"), c, "mul") == ar(a, ar(b, c, "mul"), "mul")
        assert ar(ar(a, b, "add"), c, "add") == ar(a, ar(b, c, "add"), "add")
        assert ar(a, b, "mul") == ar(b, a, "mul")
        assert ar(a, a, "sub") == zero


@pytest.mark.parametrize("seed", range(20))
def test_exact_division(seed):
    rng = random.Random(200 + seed)
    a = rand_nonzero_poly(rng, V)
    b = rand_nonzero_poly(rng, V)
    assert (a * b).exact_div(b) == a


def test_inexact_division_raises():
    x1 = Polynomial.variable(V, "X1")
    x2 = Polynomial.variable(V, "X2")
    with pytest.raises(ArithmeticDomainError):
        (x1 + 1).exact_div(x2)
    with pytest.raises(ArithmeticDomainError):
        x1.exact_div(Polynomial.zero(V))


def test_variable_mismatch_is_structural_error():
    with pytest.raises(StructuralError):
        Polynomial.variable(("X1",), "X1") + Polynomial.variable(("X2",), "X2")
    with pytest.raises(StructuralError):
        Polynomial.variable(("X1",), "X2")


def test_degree_queries():
    p = Polynomial(V, {(2, 1, 0): 1, (0, 0, 4): -1})
    assert p.total_degree() == 4
    assert p.degree_in("X1") == 2
    assert p.used_variables() == {"X1", "X2", "X3"}
    assert Polynomial(V, {(1, 0, 0): 1}).used_variables() == {"X1"}
    assert Polynomial.constant(V, 7).is_constant()


@pytest.mark.parametrize("seed", range(20))
def test_evaluate_matches_sympy(seed):
    rng = random.Random(300 + seed)
    p = rand_poly(rng, V, big=True)
    pt = {x: Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for x in V}
    expected = to_sympy(p, S).subs({s: sympy.Rational(pt[x].numerator, pt[x].denominator) for s, x in zip(S, V)})
    assert p.evaluate(pt) == Fraction(int(sympy.numer(expected)), int(sympy.denom(expected)))


def test_poly_eval_soundness_500_boxes():
    rng = random.Random(7)
    for _ in range(500):
        p = rand_poly(rng, V, max_deg=4, max_terms=6)
        point = {
            x: Enclosure(Fraction(rng.randint(-10**6, 10**6), 10**5), Fraction(rng.randint(0, 1000), 10**9))
            for x in V
        }
        enc = poly_eval(p, point, 64)
        assert p.evaluate({x: e.mid for x, e in point.items()}) in enc
        # a corner of the box is also covered
        corner = {x: e.upper for x, e in point.items()}
        assert p.evaluate(corner) in enc


def test_poly_eval_exact_point_is_exact():
    p = Polynomial(V, {(1, 1, 0): 3, (0, 0, 2): Fraction(1, 7)})
    pt = {x: Enclosure(Fraction(i + 1, 3)) for i, x in enumerate(V)}
    assert poly_eval(p, pt).is_exact


# kernels ---------------------------------------------------------------


@pytest.mark.parametrize("seed", range(10))
def test_compiled_and_pure_kernels_agree(seed):
    rng = random.Random(400 + seed)
    a = rand_poly(rng, V, big=True).integer_form()[0]
    b = rand_poly(rng, V, big=True).integer_form()[0]
    k, p = kernels, _kernels_py
    assert k.mul_terms(a, b) == p.mul_terms(a, b)
    assert k.add_terms(a, 3, b, -5) == p.add_terms(a, 3, b, -5)
    assert k.scale_terms(a, 11) == p.scale_terms(a, 11)
    assert k.diff_terms(a, 1) == p.diff_terms(a, 1)
    assert k.eval_terms(a, [2, -3, 5], [3, 1, 7]) == p.eval_terms(a, [2, -3, 5], [3, 1, 7])


def test_large_exponents_survive_garbage_collection():
    # exponents beyond the small-int cache must be owned by the result tuples
    a = {(300, 0, 1): 2, (0, 999, 0): -1}
    b = {(400, 1, 0): 3, (5, 700, 2): 7}
    got = kernels.mul_terms(a, b)
    for _ in range(200):
        kernels.mul_terms(got, b)
    gc.collect()
    assert got == _kernels_py.mul_terms(a, b)
    assert sorted(got) == [(5, 1699, 2), (305, 700, 3), (400, 1000, 0), (700, 1, 1)]


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


# rational functions ------------------------------------------------------


@pytest.mark.parametrize("seed", range(30))
def test_ratfn_arithmetic_matches_sympy(seed):
    rng = random.Random(500 + seed)
    a, b = rand_ratfn(rng, V), rand_ratfn(rng, V)
    sa, sb = to_sympy(a, S), to_sympy(b, S)
    for op, ref in (("add", sa + sb), ("sub", sa - sb), ("mul", sa * sb)):
        got = to_sympy(ratfn_arithmetic(a, b, op), S)
        assert sympy.simplify(got - ref) == 0
    d = ratfn_partial(a, "X2")
    assert sympy.simplify(to_sympy(d, S) - sympy.diff(sa, S[1])) == 0


def test_ratfn_equality_by_cross_multiplication():
    x1 = Polynomial.variable(V, "X1")
    x2 = Polynomial.variable(V, "X2")
    r1 = RationalFunction(x1 * x2, x2 * x2)
    r2 = RationalFunction(x1, x2)
    assert r1 == r2
    assert r1 != RationalFunction(x2, x1)


def test_ratfn_division_by_zero():
    x1 = RationalFunction(Polynomial.variable(V, "X1"))
    with pytest.raises(ArithmeticDomainError):
        x1 / RationalFunction(Polynomial.zero(V))
    with pytest.raises(ArithmeticDomainError):
        RationalFunction(Polynomial.variable(V, "X1"), Polynomial.zero(V))


def test_ratfn_denominator_normalized():
    x1 = Polynomial.variable(V, "X1")
    r = RationalFunction(x1, Polynomial(V, {(0, 1, 0): -4, (0, 0, 0): 6}))
    assert r.den.leading()[1] > 0
    assert all(c.denominator == 1 for c in r.den.terms.values())


def test_substitute():
    vx = ("X1", "X2")
    p = Polynomial(vx, {(2, 0): 1, (0, 1): -1})
    t = RationalFunction(Polynomial.variable(("T",), "T"), Polynomial(("T",), {(1,): 1, (0,): 1}))
    out = substitute(p, {"X1": t, "X2": t}, ("T",))
    tt = sympy.Symbol("T")
    ref = (tt / (tt + 1)) ** 2 - tt / (tt + 1)
    assert sympy.simplify(to_sympy(out, [tt]) - ref) == 0


# enclosures ------------------------------------------------------------


def fracs(lo=-10**6, hi=10**6):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=10**6)


def encs():
    return st.builds(lambda m, r: Enclosure(m, abs(r)), fracs(), fracs(0, 100))


@settings(max_examples=200, deadline=None)
@given(encs(), encs(), st.floats(0, 1), st.floats(0, 1))
def test_enclosure_arithmetic_contains_pointwise_results(a, b, s, t):
    x = a.lower + Fraction(s) * (a.upper - a.lower)
    y = b.lower + Fraction(t) * (b.upper - b.lower)
    assert x + y in a + b
    assert x - y in a - b
    assert x * y in a * b
    if b.excludes_zero():
        assert x / y in a / b
    assert x**3 in a**3
    assert x**2 in a**2


@settings(max_examples=200, deadline=None)
@given(encs(), st.integers(8, 200))
def test_rounded_is_superset(a, prec):
    r = a.rounded(prec)
    assert a.lower >= r.lower and a.upper <= r.upper
    assert r.mid.denominator & (r.mid.denominator - 1) == 0


def test_round_dyadic_modes():
    x = Fraction(1, 3)
    assert round_dyadic(x, 10, "down") <= x <= round_dyadic(x, 10, "up")
    assert abs(round_dyadic(x, 10) - x) <= Fraction(1, 2**10)


def test_square_of_straddling_interval_is_nonnegative():
    e = Enclosure(Fraction(0), Fraction(1))
    assert (e**2).lower >= 0


def test_reciprocal_of_zero_straddle_raises():
    with pytest.raises(ArithmeticDomainError):
        Enclosure(Fraction(0), Fraction(1)).reciprocal()


def test_decimal_truncation_semantics():
    lo, hi = decimal_interval("2.076730850")
    assert lo == Fraction(2076730850, 10**9) and hi - lo == Fraction(1, 10**9)
    lo, hi = decimal_interval("-1.5")
    assert (lo, hi) == (Fraction(-16, 10), Fraction(-15, 10))
    assert matches_digits(Enclosure(Fraction(20767308505, 10**10), Fraction(1, 10**12)), "2.076730850")
    assert not matches_digits(Enclosure(Fraction(20767308505, 10**10), Fraction(1, 10**9)), "2.076730850")


def test_from_decimal_has_one_ulp_radius():
    e = Enclosure.from_decimal("0.125")
    assert e.mid == Fraction(1, 8) and e.rad == Fraction(1, 1000)


def test_negative_radius_rejected():
    with pytest.raises(ValueError):
        Enclosure(Fraction(0), Fraction(-1))
