# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (same names and semantics as _pykernels).

int_rank works in 64-bit integers with a magnitude guard; if an entry would
leave the safe range it hands the matrix to the arbitrary-precision Python
routine, so the answer is always exact.
"""
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

from . import _pykernels

cdef int64_t SAFE = 1 << 30


cdef inline int64_t _gcd(int64_t a, int64_t b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _rank64(int64_t* M, int m, int n):
    """Fraction-free row echelon form in place. Returns the rank, or -1 on overflow risk."""
    cdef int r = 0, i, j, k, piv
    cdef int64_t p, a, g, fa, fc, best, v, tmp
    for j in range(n):
        if r == m:
            break
        piv = -1
        best = 0
        for i in range(r, m):
            v = M[i * n + j]
            if v < 0:
                v = -v
            if v and (piv < 0 or v < best):
                piv = i
                best = v
        if piv < 0:
            continue
        if piv != r:
            for k in range(n):
                tmp = M[r * n + k]
                M[r * n + k] = M[piv * n + k]
                M[piv * n + k] = tmp
        p = M[r * n + j]
        for i in range(r + 1, m):
            a = M[i * n + j]
            if not a:
                continue
            g = _gcd(p, a)
            fa = p // g
            fc = a // g
            g = 0
            for k in range(j, n):
                v = fa * M[i * n + k] - fc * M[r * n + k]
                M[i * n + k] = v
                g = _gcd(g, v)
            if g > 1:
                for k in range(j, n):
                    M[i * n + k] //= g
            for k in range(j, n):
                v = M[i * n + k]
                if v >= SAFE or v <= -SAFE:
                    return -1
        r += 1
    return r


def int_rank(rows, int ncols):
    """Exact rank over ℚ of an integer matrix given as a list of rows."""
    cdef int m = len(rows)
    cdef int n = ncols
    cdef int i, k, res
    cdef object x
    if m == 0 or n == 0:
        return 0
    cdef int64_t* M = <int64_t*> malloc(m * n * sizeof(int64_t))
    if not M:
        raise MemoryError()
    try:
        for i in range(m):
            row = rows[i]
            for k in range(n):
                x = row[k]
                if x >= SAFE or x <= -SAFE:
                    return _pykernels.int_rank(rows, ncols)
                M[i * n + k] = x
        res = _rank64(M, m, n)
    finally:
        free(M)
    if res < 0:
        return _pykernels.int_rank(rows, ncols)
    return res


def divides(tuple a, tuple b):
    """Componentwise ``a <= b`` for exponent tuples."""
    cdef Py_ssize_t k, n = len(a)
    for k in range(n):
        if <long> a[k] > <long> b[k]:
            return False
    return True


def find_divisor(leads, tuple m):
    """Index of the first exponent vector in ``leads`` dividing ``m``, or -1."""
    cdef Py_ssize_t idx = 0, k, n = len(m)
    cdef tuple lead
    cdef long buf[256]
    if n > 256:
        return _pykernels.find_divisor(leads, m)
    for k in range(n):
        buf[k] = m[k]
    for lead in leads:
        for k in range(n):
            if <long> lead[k] > buf[k]:
                break
        else:
            return idx
        idx += 1
    return -1
