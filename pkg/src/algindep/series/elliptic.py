"""Complete elliptic integrals via the arithmetic-geometric mean, and the
modulus fixed by a prescribed ratio K(k')/K(k).

The AGM iterates satisfy ``b_n <= AGM <= a_n``; iterating on enclosures of
``a_n`` and ``b_n`` gives a two-sided bracket that tightens quadratically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ArithmeticDomainError, PrecisionError, ValidationError
from ..exact import Enclosure
from ._common import GUARD, as_rational, bits_of, finish
from .elementary import ln_enclosure, pi_at, sqrt_enclosure

_MAX_ITER = 200


def agm(a: Enclosure, b: Enclosure, w: int) -> Enclosure:
    """Enclosure of AGM(a, b) for positive enclosures, working at ``w`` bits."""
    if a.lower <= 0 or b.lower <= 0:
        raise ArithmeticDomainError("AGM needs positive arguments")
    eps = Fraction(1, 1 << w)
    lo = min(a.lower, b.lower)
    hi = max(a.upper, b.upper)
    for _ in range(_MAX_ITER):
        a, b = ((a + b) / 2).rounded(w), sqrt_enclosure((a * b).rounded(w), w)
        new_lo = max(lo, b.lower)
        new_hi = min(hi, a.upper)
        # iterates only sharpen once rounding stops paying off
        if new_hi - new_lo >= hi - lo and hi - lo <= 16 * eps * hi:
            break
        lo, hi = new_lo, new_hi
        if hi - lo <= eps * hi:
            break
    return Enclosure.from_bounds(lo, hi)


@dataclass(frozen=True)
class EllipticPair:
    """Quantities at one modulus: ``agm = AGM(1, k')`` and ``e_factor = 1 - sum 2^(n-1) c_n^2``.

    ``K = pi / (2 agm)`` and ``E = K * e_factor``.
    """

    agm: Enclosure
    e_factor: Enclosure


def complementary(k: Fraction, w: int) -> Enclosure:
    return sqrt_enclosure(Enclosure(1 - k * k), w)


def _pair(k: Fraction, w: int, with_e: bool = True) -> EllipticPair:
    if not 0 <= k < 1:
        raise ArithmeticDomainError("modulus must satisfy 0 <= k < 1")
    if k == 0:
        return EllipticPair(Enclosure(Fraction(1)), Enclosure(Fraction(1)))
    kp = complementary(k, w)
    if not with_e:
        return EllipticPair(agm(Enclosure(Fraction(1)), kp, w), Enclosure(Fraction(0)))
    eps = Fraction(1, 1 << w)
    a, b = Enclosure(Fraction(1)), kp
    c = Enclosure(k)
    s = (c * c / 2).rounded(w)
    m_lower = kp.lower  # AGM(1, k') >= k'
    n = 0
    while True:
        a_next = ((a + b) / 2).rounded(w)
        b = sqrt_enclosure((a * b).rounded(w), w)
        a = a_next
        c = (c * c / (4 * a)).rounded(w)
        n += 1
        s = (s + (2 ** (n - 1)) * c * c).rounded(w)
        m_lower = max(m_lower, b.lower)
        rho = c.upper / (4 * m_lower)
        if rho < Fraction(1, 2):
            c_next = c.upper**2 / (4 * m_lower)
            tail = 2**n * c_next**2 / (1 - 2 * rho * rho)
            if tail <= eps or n >= _MAX_ITER:
                break
        if n >= _MAX_ITER:
            raise PrecisionError("elliptic E iteration did not converge")
    g = agm(a, b, w)
    e_factor = Enclosure.from_bounds(1 - s.upper - tail, 1 - s.lower)
    return EllipticPair(g, e_factor)


def _check_k(k, allow_one: bool) -> Fraction:
    k = as_rational(k, "k")
    if k < 0:
        k = -k
    if k > 1 or (k == 1 and not allow_one):
        if k == 1:
            raise ArithmeticDomainError("K(k) diverges at k = 1")
        raise ArithmeticDomainError("modulus must satisfy |k| < 1")
    return k


def elliptic_K(k, prec=128) -> Enclosure:
    """K(k) = pi / (2 AGM(1, sqrt(1 - k^2)))."""
    bits = bits_of(prec)
    k = _check_k(k, allow_one=False)
    w = bits + GUARD
    if k == 0:
        return finish(pi_at(w) / 2, bits)
    g = _pair(k, w, with_e=False).agm
    return finish((pi_at(w) / (2 * g)).rounded(w), bits)


def elliptic_E(k, prec=128) -> Enclosure:
    """E(k) = K(k) (1 - sum_{n>=0} 2^(n-1) c_n^2)."""
    bits = bits_of(prec)
    k = _check_k(k, allow_one=True)
    w = bits + GUARD
    if k == 1:
        return Enclosure(Fraction(1))
    if k == 0:
        return finish(pi_at(w) / 2, bits)
    p = _pair(k, w)
    return finish((pi_at(w) * p.e_factor / (2 * p.agm)).rounded(w), bits)


def scaled_K(k: Fraction, w: int) -> Enclosure:
    """2 K(k) / pi = 1 / AGM(1, k')."""
    return (1 / _pair(k, w, with_e=False).agm).rounded(w)


def scaled_E(k: Fraction, w: int) -> Enclosure:
    """2 E(k) / pi = e_factor / AGM(1, k')."""
    p = _pair(k, w)
    return (p.e_factor / p.agm).rounded(w)


def modulus_ratio(k: Fraction, w: int) -> Enclosure:
    """K(k') / K(k) = AGM(1, k') / AGM(1, k) for exact 0 < k < 1."""
    one = Enclosure(Fraction(1))
    kp = complementary(k, w)
    return (agm(one, kp, w) / agm(one, Enclosure(k), w)).rounded(w)


def ratio_over(k: Enclosure, w: int) -> Enclosure:
    """Ratio over an interval of moduli (decreasing in k)."""
    return Enclosure.from_bounds(modulus_ratio(k.upper, w).lower, modulus_ratio(k.lower, w).upper)


def golden_ratio_constant(w: int) -> Enclosure:
    """c = -(2/pi) ln((sqrt 5 - 1)/2)."""
    g = (sqrt_enclosure(Enclosure(Fraction(5)), w + 8) - 1) / 2
    return (-2 * ln_enclosure(g.rounded(w + 8), w + 8) / pi_at(w + 8)).rounded(w)


def solve_modulus(prec=128, ceiling: int | None = None) -> Enclosure:
    """The k in (0, 1) with K(sqrt(1 - k^2)) / K(k) = -(2/pi) ln((sqrt 5 - 1)/2).

    Bisection on certified comparisons; the ratio is strictly decreasing in k.
    Working precision rises when a comparison cannot be decided.
    """
    bits = bits_of(prec)
    ceiling = ceiling or 4 * bits + 128
    w = bits + GUARD
    width = Fraction(1, 1 << (bits + 1))
    c = golden_ratio_constant(w)

    lo = Fraction(1, 2)
    if not modulus_ratio(lo, w).lower > c.upper:
        raise PrecisionError("failed to bracket the modulus from below")
    j = 4
    while True:
        hi = 1 - Fraction(1, 1 << j)
        if modulus_ratio(hi, w).upper < c.lower:
            break
        j *= 2
        if j > ceiling:
            raise PrecisionError("precision ceiling reached before bracketing the modulus")

    while hi - lo > width:
        mid = (lo + hi) / 2
        r = modulus_ratio(mid, w)
        if r.lower > c.upper:
            lo = mid
        elif r.upper < c.lower:
            hi = mid
        else:
            if w >= ceiling:
                raise PrecisionError(
                    f"modulus comparison undecided at {w} bits (bracket width {float(hi - lo):.3e})"
                )
            w = min(ceiling, w + max(16, w // 2))
            c = golden_ratio_constant(w)
    return Enclosure.from_bounds(lo, hi)


def modulus_parameters(prec=128) -> dict[str, Enclosure]:
    """k*, 2K(k*)/pi and 2E(k*)/pi, each to ``prec`` bits."""
    bits = bits_of(prec)
    w = bits + GUARD
    k = solve_modulus(bits + 16)
    # 2K/pi increases with k, 2E/pi decreases
    x1 = Enclosure.from_bounds(scaled_K(k.lower, w).lower, scaled_K(k.upper, w).upper)
    x2 = Enclosure.from_bounds(scaled_E(k.upper, w).lower, scaled_E(k.lower, w).upper)
    return {"k": finish(k, bits), "x1": finish(x1, bits), "x2": finish(x2, bits)}


def elliptic_K_enclosure(k: Enclosure, prec=128) -> Enclosure:
    """K over an interval of moduli (increasing in k)."""
    if k.lower < 0:
        raise ValidationError("modulus enclosure must be non-negative", "k")
    return Enclosure.from_bounds(elliptic_K(k.lower, prec).lower, elliptic_K(k.upper, prec).upper)


def elliptic_E_enclosure(k: Enclosure, prec=128) -> Enclosure:
    """E over an interval of moduli (decreasing in k)."""
    if k.lower < 0:
        raise ValidationError("modulus enclosure must be non-negative", "k")
    return Enclosure.from_bounds(elliptic_E(k.upper, prec).lower, elliptic_E(k.lower, prec).upper)
