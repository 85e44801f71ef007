# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.  Must stay behaviorally identical to _pykernels."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def threshold_step(const unsigned char[:, ::1] a, int t):
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1], i, j
    cdef long long sum_all = 0, sum_above = 0, n_above = 0, n_rest, sum_rest
    cdef unsigned int v, above
    with nogil:
        for i in range(rows):
            for j in range(cols):
                v = a[i, j]
                above = v > <unsigned int>t
                sum_all += v
                sum_above += v * above
                n_above += above
    n_rest = rows * cols - n_above
    if n_above == 0 or n_rest == 0:
        return t, True
    sum_rest = sum_all - sum_above
    # operands are nonnegative, so C division is floor division
    return <int>((sum_above // n_above + sum_rest // n_rest) // 2), False


def match_counts(const unsigned char[:, ::1] bits):
    cdef Py_ssize_t rows = bits.shape[0], cols = bits.shape[1], y, x
    cdef unsigned char c, n
    out = np.zeros((rows - 2, cols - 2), dtype=np.uint8)
    cdef unsigned char[:, ::1] o = out
    with nogil:
        for y in range(1, rows - 1):
            for x in range(1, cols - 1):
                c = bits[y, x]
                n = 0
                n = ((bits[y - 1, x - 1] == c) + (bits[y - 1, x] == c) + (bits[y - 1, x + 1] == c)
                     + (bits[y, x - 1] == c) + 1 + (bits[y, x + 1] == c)
                     + (bits[y + 1, x - 1] == c) + (bits[y + 1, x] == c) + (bits[y + 1, x + 1] == c))
                o[y - 1, x - 1] = n
    return out
