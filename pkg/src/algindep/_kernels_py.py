"""Pure-Python sparse integer polynomial kernels.

Polynomials are ``dict[tuple[int, ...], int]`` maps from exponent vectors to
nonzero integer coefficients. The compiled module ``_kernels`` exposes the
same functions with the same semantics.
"""

from __future__ import annotations


def add_terms(a: dict, sa: int, b: dict, sb: int) -> dict:
    """Return ``sa*a + sb*b`` with zero coefficients dropped."""
    out = {e: sa * c for e, c in a.items()} if sa != 1 else dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sb * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    if sa == 0:
        return {e: c for e, c in out.items() if c}
    return out


def mul_terms(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def scale_terms(a: dict, s: int) -> dict:
    if s == 0:
        return {}
    return {e: s * c for e, c in a.items()}


def diff_terms(a: dict, idx: int) -> dict:
    out = {}
    for e, c in a.items():
        k = e[idx]
        if k:
            ne = list(e)
            ne[idx] = k - 1
            out[tuple(ne)] = c * k
    return out


def eval_terms(a: dict, nums: list, dens: list) -> tuple[int, int]:
    """Evaluate at the rational point ``nums[i]/dens[i]`` exactly.

    Returns ``(N, D)`` with ``D = prod(dens[i] ** maxdeg_i)``; the pair is not
    reduced.
    """
    nvars = len(nums)
    if not a:
        return 0, 1
    maxdeg = [0] * nvars
    for e in a:
        for i in range(nvars):
            if e[i] > maxdeg[i]:
                maxdeg[i] = e[i]
    npow = []
    dpow = []
    for i in range(nvars):
        m = maxdeg[i]
        np_ = [1] * (m + 1)
        dp_ = [1] * (m + 1)
        for k in range(1, m + 1):
            np_[k] = np_[k - 1] * nums[i]
            dp_[k] = dp_[k - 1] * dens[i]
        npow.append(np_)
        dpow.append(dp_)
    total = 0
    for e, c in a.items():
        t = c
        for i in range(nvars):
            k = e[i]
            m = maxdeg[i]
            if m:
                t *= npow[i][k] * dpow[i][m - k]
        total += t
    den = 1
    for i in range(nvars):
        den *= dpow[i][maxdeg[i]]
    return total, den
