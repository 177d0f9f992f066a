# cython: language_level=3
"""Compiled sparse integer polynomial kernels (same API as _kernels_py)."""

from cpython.dict cimport PyDict_GetItem
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM, PyTuple_GET_SIZE, PyTuple_GET_ITEM
from cpython.ref cimport Py_INCREF


cdef inline tuple _add_exps(tuple ea, tuple eb, Py_ssize_t n):
    cdef tuple out = PyTuple_New(n)
    cdef Py_ssize_t i
    cdef object o
    for i in range(n):
        # o must be a Python object: SET_ITEM steals the reference taken here
        o = <long>(<object>PyTuple_GET_ITEM(ea, i)) + <long>(<object>PyTuple_GET_ITEM(eb, i))
        Py_INCREF(o)
        PyTuple_SET_ITEM(out, i, o)
    return out


def add_terms(dict a, sa, dict b, sb):
    cdef dict out
    if sa == 1:
        out = dict(a)
    else:
        out = {e: sa * c for e, c in a.items()}
    for e, c in b.items():
        v = out.get(e, 0) + sb * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    if sa == 0:
        return {e: c for e, c in out.items() if c}
    return out


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef Py_ssize_t n
    cdef tuple ea, eb, e
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return out
    n = PyTuple_GET_SIZE(next(iter(a)))
    bitems = list(b.items())
    for ea_, ca in a.items():
        ea = <tuple>ea_
        for eb_, cb in bitems:
            eb = <tuple>eb_
            e = _add_exps(ea, eb, n)
            prev = PyDict_GetItem(out, e)
            if prev is NULL:
                out[e] = ca * cb
            else:
                out[e] = (<object>prev) + ca * cb
    return {e: c for e, c in out.items() if c}


def scale_terms(dict a, s):
    if s == 0:
        return {}
    return {e: s * c for e, c in a.items()}


def diff_terms(dict a, Py_ssize_t idx):
    cdef dict out = {}
    cdef list ne
    for e, c in a.items():
        k = e[idx]
        if k:
            ne = list(e)
            ne[idx] = k - 1
            out[tuple(ne)] = c * k
    return out


def eval_terms(dict a, list nums, list dens):
    cdef Py_ssize_t nvars = len(nums)
    cdef Py_ssize_t i, k, m
    cdef list maxdeg, npow, dpow, np_, dp_
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
                t *= (<list>npow[i])[k] * (<list>dpow[i])[m - k]
        total += t
    den = 1
    for i in range(nvars):
        den *= (<list>dpow[i])[maxdeg[i]]
    return total, den
