# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: normal form reduction and sparse integer elimination.

Same algorithms and results as ``_nf_py`` and ``_elim_py``; only the inner
loops over exponent tuples are done in C.
"""
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM, PyTuple_GET_ITEM, PyTuple_GET_SIZE
from cpython.ref cimport Py_INCREF
from math import gcd
import heapq

cdef object _heappush = heapq.heappush
cdef object _heappop = heapq.heappop


cdef tuple _heap_key(tuple t):
    cdef tuple m = <tuple>PyTuple_GET_ITEM(t, 0)
    cdef tuple S = <tuple>PyTuple_GET_ITEM(t, 1)
    cdef Py_ssize_t n = PyTuple_GET_SIZE(m), q = PyTuple_GET_SIZE(S), i
    cdef long deg = 0, e
    cdef tuple key = PyTuple_New(1 + n + q)
    cdef object x
    for i in range(n):
        e = <long>(<object>PyTuple_GET_ITEM(m, i))
        deg += e
        x = e
        Py_INCREF(x)
        PyTuple_SET_ITEM(key, 1 + i, x)
    x = -deg
    Py_INCREF(x)
    PyTuple_SET_ITEM(key, 0, x)
    for i in range(q):
        x = -<long>(<object>PyTuple_GET_ITEM(S, q - 1 - i))
        Py_INCREF(x)
        PyTuple_SET_ITEM(key, 1 + n + i, x)
    return key


cdef inline bint _divides(tuple a, tuple b):
    cdef Py_ssize_t i, n = PyTuple_GET_SIZE(a)
    for i in range(n):
        if <long>(<object>PyTuple_GET_ITEM(a, i)) > <long>(<object>PyTuple_GET_ITEM(b, i)):
            return False
    return True


cdef inline tuple _combine(tuple a, tuple b, int sign):
    cdef Py_ssize_t i, n = PyTuple_GET_SIZE(a)
    cdef tuple out = PyTuple_New(n)
    cdef object x
    for i in range(n):
        x = <long>(<object>PyTuple_GET_ITEM(a, i)) + sign * <long>(<object>PyTuple_GET_ITEM(b, i))
        Py_INCREF(x)
        PyTuple_SET_ITEM(out, i, x)
    return out


def reduce_terms(f, dict index):
    cdef dict work = dict(f)
    cdef list heap = [(_heap_key(t), t) for t in work]
    cdef dict out = {}
    cdef tuple t, m, S, lm, shift, nt, gm
    cdef object c, v, tail, gc, g, entry
    heapq.heapify(heap)
    while heap:
        t = <tuple>(<tuple>_heappop(heap))[1]
        c = work.pop(t, None)
        if c is None:
            continue
        m = <tuple>t[0]
        S = <tuple>t[1]
        tail = None
        for entry in index.get(S, ()):
            lm = <tuple>entry[0]
            if _divides(lm, m):
                tail = entry[1]
                shift = _combine(m, lm, -1)
                break
        if tail is None:
            out[t] = c
            continue
        for g in tail:
            gm = <tuple>(<tuple>g[0])[0]
            gc = g[1]
            nt = (_combine(gm, shift, 1), (<tuple>g[0])[1])
            v = work.get(nt)
            if v is None:
                work[nt] = -c * gc
                _heappush(heap, (_heap_key(nt), nt))
            else:
                v = v - c * gc
                if v:
                    work[nt] = v
                else:
                    del work[nt]
    return out


def primitive(dict row):
    cdef object g = 0, x
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            break
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {c: x // g for c, x in row.items()}
    return row


def eliminate(dict row, dict piv, col):
    cdef object a = piv[col], b = row[col], g, x, y
    cdef dict out
    g = gcd(a, b)
    a = a // g
    b = b // g
    if a == 1:
        out = dict(row)
    else:
        out = {c: a * x for c, x in row.items()}
    for c, y in piv.items():
        x = out.get(c, 0) - b * y
        if x:
            out[c] = x
        else:
            out.pop(c, None)
    if not out:
        return out
    return primitive(out)


def reduce_against(dict row, dict pivots):
    cdef list hits = [c for c in row if c in pivots]
    for c in hits:
        if c in row:
            row = eliminate(row, pivots[c], c)
            if not row:
                break
    return row
