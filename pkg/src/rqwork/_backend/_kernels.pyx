# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled inner loops for series and matrix arithmetic.

Object arithmetic stays in Python space (coefficients are exact
rationals or big ints); the win over ``pykernels`` is loop and
indexing overhead, which dominates for long convolutions.
"""

BACKEND = "cython"


def convolve(list a, list b, Py_ssize_t n):
    """First ``n`` coefficients of the product of coefficient lists a, b."""
    cdef Py_ssize_t i, j, m, la, lb
    if len(a) > len(b):
        a, b = b, a
    la = len(a)
    lb = len(b)
    cdef list out = [0] * n
    for i in range(la):
        if i >= n:
            break
        ai = a[i]
        if not ai:
            continue
        m = n - i
        if lb < m:
            m = lb
        for j in range(m):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def reciprocal(list b, Py_ssize_t n):
    """First ``n`` coefficients of 1/B for a list with invertible b[0]."""
    cdef Py_ssize_t k, i, m, lb
    lb = len(b)
    inv0 = 1 / b[0]
    cdef list out = [inv0]
    for k in range(1, n):
        s = 0
        m = k
        if lb - 1 < m:
            m = lb - 1
        for i in range(1, m + 1):
            bi = b[i]
            if bi:
                s = s + bi * out[k - i]
        out.append(-s * inv0)
    return out


def bareiss_rows(list rows, list pivot_row, Py_ssize_t col, piv, prev,
                 Py_ssize_t start):
    """One fraction-free elimination step applied to ``rows`` in place."""
    cdef Py_ssize_t j, ncols
    cdef list row
    ncols = len(pivot_row)
    for row in rows:
        f = row[col]
        if f:
            for j in range(start, ncols):
                row[j] = (piv * row[j] - f * pivot_row[j]) // prev
            row[col] = 0
        elif piv != prev:
            for j in range(start, ncols):
                if row[j]:
                    row[j] = (piv * row[j]) // prev
