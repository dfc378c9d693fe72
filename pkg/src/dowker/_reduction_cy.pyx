# distutils: language = c++
# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled boundary-matrix reduction kernel.

Same contract as the pure-Python fallback: columns arrive flattened in CSC
style as ascending row indices, the result is the pivot row per reduced
column (-1 when a column cancels to zero).
"""

from libcpp.vector cimport vector

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


cdef void _symmetric_difference(vector[i64]& a, vector[i64]& b,
                                vector[i64]& out) noexcept:
    cdef size_t i = 0, j = 0, na = a.size(), nb = b.size()
    out.clear()
    while i < na and j < nb:
        if a[i] < b[j]:
            out.push_back(a[i]); i += 1
        elif b[j] < a[i]:
            out.push_back(b[j]); j += 1
        else:
            i += 1; j += 1
    while i < na:
        out.push_back(a[i]); i += 1
    while j < nb:
        out.push_back(b[j]); j += 1


def reduce_low(indptr, indices):
    cdef cnp.int64_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef cnp.int64_t[::1] idx = np.ascontiguousarray(indices, dtype=np.int64)
    cdef Py_ssize_t m = ptr.shape[0] - 1
    cdef cnp.ndarray[i64, ndim=1] low = np.full(m, -1, dtype=np.int64)
    cdef vector[vector[i64]] stored = vector[vector[i64]](m)
    cdef vector[i64] pivot_owner = vector[i64](m, -1)
    cdef vector[i64] cur, merged
    cdef Py_ssize_t j
    cdef i64 a, piv, owner
    for j in range(m):
        cur.clear()
        for a in range(ptr[j], ptr[j + 1]):
            cur.push_back(idx[a])
        while cur.size() > 0:
            piv = cur.back()
            owner = pivot_owner[piv]
            if owner < 0:
                break
            _symmetric_difference(cur, stored[owner], merged)
            cur.swap(merged)
        if cur.size() > 0:
            piv = cur.back()
            low[j] = piv
            pivot_owner[piv] = j
            stored[j] = cur
    return low
