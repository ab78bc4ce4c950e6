"""Pure-Python big-integer matrix kernels (fallback for the C extension)."""
from __future__ import annotations

IMPLEMENTATION = "python"


def mat_vec(rows, v):
    """rows: sequence of row tuples, v: vector tuple. Returns list."""
    out = []
    for row in rows:
        acc = 0
        for x, w in zip(v, row):
            if x and w:
                acc += w * x
        out.append(acc)
    return out


def mat_mat(a, b):
    """a: p x q row tuples, b: q x r row tuples. Returns p x r list of lists."""
    r = len(b[0]) if b else 0
    out = []
    for arow in a:
        acc = [0] * r
        for j, w in enumerate(arow):
            if not w:
                continue
            brow = b[j]
            for k in range(r):
                x = brow[k]
                if x:
                    acc[k] += w * x
        out.append(acc)
    return out


def column_sums(rows, cols):
    """Per-column totals of a row-major matrix."""
    out = [0] * cols
    for row in rows:
        for k in range(cols):
            x = row[k]
            if x:
                out[k] += x
    return out
