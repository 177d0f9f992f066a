"""Fibonacci/Lucas numbers, Fibonacci zeta values and the congruence-filtered
and Fibonacci-weighted exponential series."""

from __future__ import annotations

import threading
from fractions import Fraction

from ..errors import ValidationError
from ..exact import Enclosure
from ._common import GUARD, FixedSum, as_rational, bits_of, finish, target


class FibCache:
    """Append-only memo of F_0..F_N and L_0..L_N."""

    def __init__(self):
        self._f = [0, 1]
        self._l = [2, 1]
        self._lock = threading.Lock()

    def ensure(self, n: int):
        if n < len(self._f):
            return
        with self._lock:
            f, l = self._f, self._l
            while len(f) <= n:
                f.append(f[-1] + f[-2])
                l.append(l[-1] + l[-2])

    def __call__(self, n: int) -> tuple[int, int]:
        self.ensure(n)
        return self._f[n], self._l[n]


FIB = FibCache()


def fib_lucas(n: int) -> tuple[int, int]:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValidationError("n must be a non-negative integer", "n")
    return FIB(n)


def zeta_fib_tail(two_s: int, n: int) -> Fraction:
    """Bound on sum_{k>n} F_k^(-two_s) from F_k >= (8/5)^(k-2)."""
    r = Fraction(5, 8) ** two_s
    return r ** (n - 1) / (1 - r)


def zeta_fib(two_s: int, prec=128) -> Enclosure:
    """sum_{n>=1} 1 / F_n^two_s with exact partial sums and a geometric tail."""
    bits = bits_of(prec)
    if isinstance(two_s, bool) or not isinstance(two_s, int) or two_s < 2 or two_s % 2:
        raise ValidationError("two_s must be a positive even integer", "two_s")
    eps = target(bits)
    total = Fraction(0)
    n = 0
    while True:
        n += 1
        total += Fraction(1, FIB(n)[0] ** two_s)
        tail = zeta_fib_tail(two_s, n)
        if tail <= eps:
            return finish(Enclosure.from_bounds(total, total + tail), bits)


def _factorial_tail(c: Fraction, w: Fraction, n: int, term_n1: Fraction) -> Fraction | None:
    """Bound on sum_{k>n} c w^k / k! given term_n1 = c w^(n+1)/(n+1)!."""
    if n + 2 <= w:
        return None
    return term_n1 / (1 - w / (n + 2))


def exp_residue(q_mod: int, r: int, z, prec=128) -> Enclosure:
    """sum over n = r (mod q_mod) of z^n / n!."""
    bits = bits_of(prec)
    if isinstance(q_mod, bool) or not isinstance(q_mod, int) or q_mod < 1:
        raise ValidationError("q_mod must be a positive integer", "q_mod")
    if isinstance(r, bool) or not isinstance(r, int) or not 0 <= r < q_mod:
        raise ValidationError(f"residue must satisfy 0 <= r < {q_mod}", "r")
    z = as_rational(z, "z")
    if z == 0:
        return Enclosure(Fraction(1 if r == 0 else 0))
    az = abs(z)
    acc = FixedSum(bits + GUARD + max(0, int(az).bit_length() * 2))
    eps = target(bits)
    term = Fraction(1)
    n = 0
    while True:
        if n % q_mod == r:
            acc.add(term)
        nxt = term * z / (n + 1)
        tail = _factorial_tail(Fraction(1), az, n, abs(nxt))
        if tail is not None and tail <= eps:
            return finish(acc.enclosure(tail), bits)
        term = nxt
        n += 1


def _coefficient(kind: str, params: tuple, n: int) -> int:
    if kind == "f_s":
        return FIB(n)[0] ** params[0]
    if kind == "g_s":
        return FIB(n)[1] ** params[0]
    a, b = params
    if kind == "f_ab":
        return FIB(a * n + b)[0]
    return FIB(a * n + b)[1]


def _growth(kind: str, params: tuple) -> tuple[int, int]:
    """(C, W) with |coefficient_n| <= C * W^n, from F_n <= 2^n and L_n <= 2^(n+1)."""
    if kind == "f_s":
        return 1, 2 ** params[0]
    if kind == "g_s":
        return 2 ** params[0], 2 ** params[0]
    a, b = params
    if kind == "f_ab":
        return 2**b, 2**a
    return 2 ** (b + 1), 2**a


def exp_fib_series(kind: str, params, z, prec=128) -> Enclosure:
    """f_s, g_s (params = (s,)) or f_ab, g_ab (params = (a, b)) at z."""
    bits = bits_of(prec)
    params = tuple(params) if isinstance(params, (tuple, list)) else (params,)
    if kind in ("f_s", "g_s"):
        if len(params) != 1 or not isinstance(params[0], int) or params[0] < 1:
            raise ValidationError(f"{kind} needs one parameter s >= 1", "params")
    elif kind in ("f_ab", "g_ab"):
        if len(params) != 2 or not all(isinstance(p, int) for p in params) or params[0] < 1 or params[1] < 0:
            raise ValidationError(f"{kind} needs parameters a >= 1, b >= 0", "params")
    else:
        raise ValidationError("kind must be one of f_s, g_s, f_ab, g_ab", "kind")
    z = as_rational(z, "z")
    if z == 0:
        return Enclosure(Fraction(_coefficient(kind, params, 0)))
    c, w = _growth(kind, params)
    wz = w * abs(z)
    acc = FixedSum(bits + GUARD + int(wz).bit_length() * 2 + c.bit_length())
    eps = target(bits)
    zpow = Fraction(1)
    fact = 1
    n = 0
    bound_term = Fraction(c)  # c * wz^n / n!
    while True:
        acc.add(_coefficient(kind, params, n) * zpow / fact)
        n += 1
        zpow *= z
        fact *= n
        bound_term = bound_term * wz / n
        tail = _factorial_tail(Fraction(c), wz, n - 1, bound_term)
        if tail is not None and tail <= eps:
            return finish(acc.enclosure(tail), bits)
