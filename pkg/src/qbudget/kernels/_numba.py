"""Numba-jitted gate kernels over strided amplitude pairs/quadruples."""

from numba import njit


@njit(cache=True)
def apply_1q(state, u, q):
    t = 1 << q
    u00 = u[0, 0]
    u01 = u[0, 1]
    u10 = u[1, 0]
    u11 = u[1, 1]
    for g in range(state.shape[0] >> 1):
        i0 = ((g >> q) << (q + 1)) | (g & (t - 1))
        i1 = i0 | t
        a0 = state[i0]
        a1 = state[i1]
        state[i0] = u00 * a0 + u01 * a1
        state[i1] = u10 * a0 + u11 * a1


@njit(cache=True)
def apply_2q(state, u, q1, q2):
    # u rows/cols are indexed 2*b1 + b2 with q1 the first tensor factor
    t1 = 1 << q1
    t2 = 1 << q2
    if q1 < q2:
        qa, qb = q1, q2
    else:
        qa, qb = q2, q1
    ta = 1 << qa
    tb = 1 << qb
    for g in range(state.shape[0] >> 2):
        i = ((g >> qa) << (qa + 1)) | (g & (ta - 1))
        i = ((i >> qb) << (qb + 1)) | (i & (tb - 1))
        i01 = i | t2
        i10 = i | t1
        i11 = i | t1 | t2
        a00 = state[i]
        a01 = state[i01]
        a10 = state[i10]
        a11 = state[i11]
        state[i] = u[0, 0] * a00 + u[0, 1] * a01 + u[0, 2] * a10 + u[0, 3] * a11
        state[i01] = u[1, 0] * a00 + u[1, 1] * a01 + u[1, 2] * a10 + u[1, 3] * a11
        state[i10] = u[2, 0] * a00 + u[2, 1] * a01 + u[2, 2] * a10 + u[2, 3] * a11
        state[i11] = u[3, 0] * a00 + u[3, 1] * a01 + u[3, 2] * a10 + u[3, 3] * a11
