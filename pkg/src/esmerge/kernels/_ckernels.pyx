# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled batch merge: column codes, pre-rank lookup and normalisation."""

import numpy as np

from libc.stdint cimport int64_t, INT64_MAX


def merge_many(const int64_t[:, :, ::1] stack,
               const int64_t[::1] lengths,
               const int64_t[::1] bounds,
               const int64_t[::1] table,
               const int64_t[:, ::1] offsets,
               bint normalize=True):
    cdef Py_ssize_t L = stack.shape[0]
    cdef Py_ssize_t N = stack.shape[2]
    out = np.empty((L, N), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    cdef Py_ssize_t l, u, i, k
    cdef int64_t base, code, off, pre, low
    with nogil:
        for l in range(L):
            k = lengths[l]
            base = bounds[l] + 1
            off = offsets[k, bounds[l]]
            low = INT64_MAX
            for u in range(N):
                code = 0
                for i in range(k):
                    code = code * base + stack[l, i, u]
                pre = table[off + code]
                o[l, u] = pre
                if pre < low:
                    low = pre
            if normalize:
                for u in range(N):
                    o[l, u] -= low
    return out
