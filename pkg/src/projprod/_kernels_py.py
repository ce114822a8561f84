"""Pure-numpy twin of the compiled power-norm kernel."""

import numpy as np


def power_norms(a, limit, tol_stop, max_iter):
    """Return ``||A^m - L||_2`` for m = 1.. until the value is <= tol_stop or m = max_iter."""
    a = np.ascontiguousarray(a, dtype=np.complex128)
    limit = np.ascontiguousarray(limit, dtype=np.complex128)
    if a.shape[0] == 0:
        return np.zeros(1)
    out = np.empty(max_iter)
    x = a.copy()
    m = 0
    while m < max_iter:
        r = np.linalg.svd(x - limit, compute_uv=False)[0]
        out[m] = r
        m += 1
        if r <= tol_stop:
            break
        x = x @ a
    return out[:m]
