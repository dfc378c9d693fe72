"""Pure-Python boundary-matrix reduction kernel.

Fallback used when the compiled extension is unavailable.  Columns arrive
flattened in CSC style; each column holds the ascending row indices of a
simplex boundary.  Returns the pivot row of each reduced column (-1 for
columns that reduce to zero).
"""

from __future__ import annotations

import numpy as np


def _symmetric_difference(a: list, b: list) -> list:
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            out.append(x)
            i += 1
        elif y < x:
            out.append(y)
            j += 1
        else:
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def reduce_low(indptr, indices) -> np.ndarray:
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int64)
    m = len(indptr) - 1
    low = np.full(m, -1, dtype=np.int64)
    pivot_owner = {}
    stored = {}
    for j in range(m):
        col = indices[indptr[j]:indptr[j + 1]].tolist()
        while col:
            owner = pivot_owner.get(col[-1])
            if owner is None:
                break
            col = _symmetric_difference(col, stored[owner])
        if col:
            piv = col[-1]
            low[j] = piv
            pivot_owner[piv] = j
            stored[j] = col
    return low
