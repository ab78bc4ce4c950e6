# cython: language_level=3
"""Compiled big-integer matrix kernels.

Arithmetic stays on Python ints (arbitrary precision is required); the
speedup comes from removing interpreter loop overhead around them.
"""

IMPLEMENTATION = "cython"


def mat_vec(rows, v):
    cdef Py_ssize_t i, j, n = len(rows), m = len(v)
    cdef list out = []
    for i in range(n):
        row = rows[i]
        acc = 0
        for j in range(m):
            x = v[j]
            if x:
                w = row[j]
                if w:
                    acc = acc + w * x
        out.append(acc)
    return out


def mat_mat(a, b):
    cdef Py_ssize_t i, j, k, p = len(a), q = len(b)
    cdef Py_ssize_t r = len(b[0]) if q > 0 else 0
    cdef list out = [], acc
    for i in range(p):
        arow = a[i]
        acc = [0] * r
        for j in range(q):
            w = arow[j]
            if not w:
                continue
            brow = b[j]
            for k in range(r):
                x = brow[k]
                if x:
                    acc[k] = acc[k] + w * x
        out.append(acc)
    return out


def column_sums(rows, Py_ssize_t cols):
    cdef Py_ssize_t i, k, n = len(rows)
    cdef list out = [0] * cols
    for i in range(n):
        row = rows[i]
        for k in range(cols):
            x = row[k]
            if x:
                out[k] = out[k] + x
    return out
