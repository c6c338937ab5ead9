"""Pure-numpy gate kernels (fallback backend).

Same contracts as ``_numba``: in-place updates on a 1-D complex128
amplitude array, qubit 0 = least-significant index bit.
"""

import numpy as np


def apply_1q(state, u, q):
    low = 1 << q
    view = state.reshape(-1, 2, low)
    view[:] = np.einsum("ij,hjl->hil", u, view)


def apply_2q(state, u, q1, q2):
    # u rows/cols are indexed 2*b1 + b2 with q1 the first tensor factor
    qa, qb = (q1, q2) if q1 < q2 else (q2, q1)
    low = 1 << qa
    mid = 1 << (qb - qa - 1)
    view = state.reshape(-1, 2, mid, 2, low)
    u4 = u.reshape(2, 2, 2, 2)
    if q1 > q2:
        # axis 1 carries q1's bit, axis 3 carries q2's bit
        view[:] = np.einsum("abcd,hcmdl->hambl", u4, view)
    else:
        view[:] = np.einsum("abcd,hdmcl->hbmal", u4, view)
