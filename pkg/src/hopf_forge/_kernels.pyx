# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse-scatter kernel.

Prime fields with p < 2**31 reduce after every product.  With ``p`` None
the integers are accumulated unreduced; the caller guarantees they fit.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


def apply_sparse(state, Py_ssize_t a_out, indptr, rows, vals, p):
    if state.dtype != np.int64 or vals.dtype != np.int64:
        from ._fallback import apply_sparse as slow
        return slow(state, a_out, indptr, rows, vals, p)
    cdef const int64_t[:, :, ::1] s = np.ascontiguousarray(state, dtype=np.int64)
    cdef const int64_t[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int64_t[::1] rw = np.ascontiguousarray(rows, dtype=np.int64)
    cdef const int64_t[::1] vl = np.ascontiguousarray(vals, dtype=np.int64)
    cdef Py_ssize_t nb = s.shape[0], a = s.shape[1], R = s.shape[2]
    out = np.zeros((nb, a_out, R), dtype=np.int64)
    cdef int64_t[:, :, ::1] o = out
    cdef int64_t q = 0 if p is None else p
    cdef Py_ssize_t b, j, t, r, row
    cdef int64_t c, x
    with nogil:
        for b in range(nb):
            for j in range(a):
                for t in range(ip[j], ip[j + 1]):
                    row = rw[t]
                    c = vl[t]
                    if q == 0:
                        for r in range(R):
                            o[b, row, r] += c * s[b, j, r]
                    else:
                        for r in range(R):
                            x = s[b, j, r]
                            if x != 0:
                                o[b, row, r] = (o[b, row, r] + c * x) % q
    return out
