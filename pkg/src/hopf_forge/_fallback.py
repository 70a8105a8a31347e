"""Pure numpy versions of the hot evaluation kernels."""

import numpy as np

_INT64_MAX = 2**63 - 1


def apply_sparse(state, a_out, indptr, rows, vals, p):
    """Apply a sparse generator to the middle axis of ``state``.

    ``state`` has shape (batch, a, R); the generator is given in compressed
    column form (``indptr``, ``rows``, ``vals``) with ``a`` columns and
    ``a_out`` rows.  Returns the (batch, a_out, R) result, reduced mod ``p``
    (``p`` is None for rational object arrays).
    """
    nb, a, R = state.shape
    if state.dtype == object:
        out = np.empty((nb, a_out, R), dtype=object)
        out.fill(0)
    else:
        out = np.zeros((nb, a_out, R), dtype=np.int64)
    if p is not None and state.dtype != object and len(rows):
        counts = np.bincount(rows, minlength=a_out)
        deferred = int(counts.max()) * (p - 1) ** 2 + (p - 1) <= _INT64_MAX
    else:
        deferred = True
    for j in range(a):
        lo, hi = indptr[j], indptr[j + 1]
        if lo == hi:
            continue
        col = state[:, j, :]
        if not col.any():
            continue
        for t in range(lo, hi):
            r = rows[t]
            c = vals[t]
            if c == 1:
                out[:, r, :] += col
            else:
                out[:, r, :] += c * col
            if not deferred:
                np.mod(out[:, r, :], p, out=out[:, r, :])
    if p is not None:
        if out.dtype == object:
            out = np.mod(out, p)
        elif deferred:
            np.mod(out, p, out=out)
    return out
