# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-map kernels.

Same contract as ``_kernels_py``. Exponents are handled as C ``long long``
with checked arithmetic; anything that does not fit raises ``OverflowError``
and the dispatcher in ``kernels`` retries on the pure-Python path.
"""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem, PyDict_DelItem
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM, PyTuple_GET_SIZE, PyTuple_GET_ITEM
from cpython.ref cimport Py_INCREF, PyObject
from cpython.long cimport PyLong_FromLongLong, PyLong_AsLongLong

DEF MAXD = 16

cdef extern from *:
    bint __builtin_saddll_overflow(long long a, long long b, long long *res) nogil
    bint __builtin_smulll_overflow(long long a, long long b, long long *res) nogil


cdef inline int _unpack(tuple e, long long *buf, Py_ssize_t n) except -1:
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = PyLong_AsLongLong(<object>PyTuple_GET_ITEM(e, i))
    return 0


cdef inline tuple _pack(long long *buf, Py_ssize_t n):
    cdef tuple out = PyTuple_New(n)
    cdef object item
    cdef Py_ssize_t i
    for i in range(n):
        item = PyLong_FromLongLong(buf[i])
        Py_INCREF(item)
        PyTuple_SET_ITEM(out, i, item)
    return out


cdef inline tuple _vadd(tuple e1, tuple e2, Py_ssize_t n):
    cdef long long a[MAXD]
    cdef long long b[MAXD]
    cdef long long r[MAXD]
    cdef Py_ssize_t i
    _unpack(e1, a, n)
    _unpack(e2, b, n)
    for i in range(n):
        if __builtin_saddll_overflow(a[i], b[i], &r[i]):
            raise OverflowError("exponent overflow")
    return _pack(r, n)


cdef inline Py_ssize_t _dim(dict a, dict b):
    cdef Py_ssize_t n = -1
    for e in a:
        n = PyTuple_GET_SIZE(e)
        break
    if n < 0:
        for e in b:
            n = PyTuple_GET_SIZE(e)
            break
    if n > MAXD:
        raise OverflowError("rank too large for compiled kernel")
    return n


def add_terms(dict a, dict b, long p):
    cdef long s
    cdef object cur
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = dict(a)
    for e, c in b.items():
        cur = out.get(e)
        s = ((0 if cur is None else <long>cur) + <long>c) % p
        if s:
            out[e] = s
        elif cur is not None:
            del out[e]
    return out


def sub_terms(dict a, dict b, long p):
    cdef long s
    cdef object cur
    cdef dict out = dict(a)
    for e, c in b.items():
        cur = out.get(e)
        s = ((0 if cur is None else <long>cur) - <long>c) % p
        if s < 0:
            s += p
        if s:
            out[e] = s
        elif cur is not None:
            del out[e]
    return out


def scale_terms(dict a, long c, long p):
    c %= p
    if c < 0:
        c += p
    if not c:
        return {}
    cdef dict out = {}
    for e, v in a.items():
        out[e] = (<long>v * c) % p
    return out


def mul_terms(dict a, dict b, long p):
    cdef Py_ssize_t n
    cdef long c1, c2, s
    cdef object cur
    cdef tuple e
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    n = _dim(a, b)
    cdef dict out = {}
    for e1, v1 in b.items():
        c1 = v1
        for e2, v2 in a.items():
            c2 = v2
            e = _vadd(<tuple>e1, <tuple>e2, n)
            cur = out.get(e)
            s = ((0 if cur is None else <long>cur) + c1 * c2) % p
            out[e] = s
    return {k: v for k, v in out.items() if v}


def shift_terms(dict a, tuple v):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(v)
    if n > MAXD:
        raise OverflowError("rank too large for compiled kernel")
    cdef dict out = {}
    for e, c in a.items():
        out[_vadd(<tuple>e, v, n)] = c
    return out


def subst_terms(dict a, matrix, long p):
    cdef Py_ssize_t n, m, k, l
    cdef long long buf[MAXD]
    cdef long long img[MAXD]
    cdef long long mat[MAXD][MAXD]
    cdef long long prod, acc
    cdef object cur
    cdef tuple key
    if not a:
        return {}
    n = len(matrix)
    m = len(matrix[0])
    if n > MAXD or m > MAXD:
        raise OverflowError("rank too large for compiled kernel")
    for k in range(n):
        for l in range(m):
            mat[k][l] = matrix[k][l]
    cdef dict out = {}
    for e, c in a.items():
        _unpack(<tuple>e, buf, n)
        for l in range(m):
            acc = 0
            for k in range(n):
                if __builtin_smulll_overflow(buf[k], mat[k][l], &prod):
                    raise OverflowError("exponent overflow")
                if __builtin_saddll_overflow(acc, prod, &acc):
                    raise OverflowError("exponent overflow")
            img[l] = acc
        key = _pack(img, m)
        cur = out.get(key)
        out[key] = ((0 if cur is None else <long>cur) + <long>c) % p
    return {k2: v for k2, v in out.items() if v}
