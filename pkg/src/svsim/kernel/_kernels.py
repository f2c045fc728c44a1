"""Tight loops for in-place amplitude updates, jitted with numba.

Every kernel works on a half-open range of group indices so callers can
split one logical operation into sub-operations for a worker pool. Group
index math inserts zero bits at the target qubit positions:

    1q, target t:  i0 = ((g >> t) << (t + 1)) | (g & (2^t - 1)),  i1 = i0 + 2^t
    2q, low/high:  two such insertions; the four amplitudes of a group are
                   i00, i00 + 2^q0, i00 + 2^q1, i00 + 2^q0 + 2^q1

Groups are disjoint, so any partition of the group range yields results
identical to a single sequential pass. Reduction kernels write one partial
per fixed-size chunk; partials are combined by the caller in ascending
chunk order, which keeps sums independent of the worker count.

No kernel allocates; updates land in the state array passed in.
"""
from numba import njit

_JIT = dict(nogil=True, cache=True)


@njit(**_JIT)
def apply1_dense(a, m00, m01, m10, m11, t, g0, g1):
    step = 1 << t
    low = step - 1
    for g in range(g0, g1):
        i0 = ((g >> t) << (t + 1)) | (g & low)
        i1 = i0 + step
        v0 = a[i0]
        v1 = a[i1]
        a[i0] = m00 * v0 + m01 * v1
        a[i1] = m10 * v0 + m11 * v1


@njit(**_JIT)
def apply1_diag(a, m00, m11, t, g0, g1):
    step = 1 << t
    low = step - 1
    for g in range(g0, g1):
        i0 = ((g >> t) << (t + 1)) | (g & low)
        i1 = i0 + step
        a[i0] = m00 * a[i0]
        a[i1] = m11 * a[i1]


@njit(**_JIT)
def apply1_anti(a, m01, m10, t, g0, g1):
    step = 1 << t
    low = step - 1
    for g in range(g0, g1):
        i0 = ((g >> t) << (t + 1)) | (g & low)
        i1 = i0 + step
        v0 = a[i0]
        a[i0] = m01 * a[i1]
        a[i1] = m10 * v0


@njit(**_JIT)
def apply2_dense(a, m, q0, q1, g0, g1):
    ql = q0 if q0 < q1 else q1
    qh = q1 if q0 < q1 else q0
    lm = (1 << ql) - 1
    hm = (1 << qh) - 1
    s0 = 1 << q0
    s1 = 1 << q1
    for g in range(g0, g1):
        x = ((g >> ql) << (ql + 1)) | (g & lm)
        x = ((x >> qh) << (qh + 1)) | (x & hm)
        i1 = x + s0
        i2 = x + s1
        i3 = i2 + s0
        v0 = a[x]
        v1 = a[i1]
        v2 = a[i2]
        v3 = a[i3]
        a[x] = m[0, 0] * v0 + m[0, 1] * v1 + m[0, 2] * v2 + m[0, 3] * v3
        a[i1] = m[1, 0] * v0 + m[1, 1] * v1 + m[1, 2] * v2 + m[1, 3] * v3
        a[i2] = m[2, 0] * v0 + m[2, 1] * v1 + m[2, 2] * v2 + m[2, 3] * v3
        a[i3] = m[3, 0] * v0 + m[3, 1] * v1 + m[3, 2] * v2 + m[3, 3] * v3


@njit(**_JIT)
def apply2_diag(a, d, q0, q1, g0, g1):
    ql = q0 if q0 < q1 else q1
    qh = q1 if q0 < q1 else q0
    lm = (1 << ql) - 1
    hm = (1 << qh) - 1
    s0 = 1 << q0
    s1 = 1 << q1
    for g in range(g0, g1):
        x = ((g >> ql) << (ql + 1)) | (g & lm)
        x = ((x >> qh) << (qh + 1)) | (x & hm)
        i1 = x + s0
        i2 = x + s1
        i3 = i2 + s0
        a[x] = d[0] * a[x]
        a[i1] = d[1] * a[i1]
        a[i2] = d[2] * a[i2]
        a[i3] = d[3] * a[i3]


@njit(**_JIT)
def apply2_cphase(a, f, q0, q1, g0, g1):
    ql = q0 if q0 < q1 else q1
    qh = q1 if q0 < q1 else q0
    lm = (1 << ql) - 1
    hm = (1 << qh) - 1
    both = (1 << q0) | (1 << q1)
    for g in range(g0, g1):
        x = ((g >> ql) << (ql + 1)) | (g & lm)
        x = ((x >> qh) << (qh + 1)) | (x & hm)
        i3 = x + both
        a[i3] = f * a[i3]


@njit(**_JIT)
def apply2_perm(a, src, fac, q0, q1, g0, g1):
    ql = q0 if q0 < q1 else q1
    qh = q1 if q0 < q1 else q0
    lm = (1 << ql) - 1
    hm = (1 << qh) - 1
    s0 = 1 << q0
    s1 = 1 << q1
    for g in range(g0, g1):
        x = ((g >> ql) << (ql + 1)) | (g & lm)
        x = ((x >> qh) << (qh + 1)) | (x & hm)
        i1 = x + s0
        i2 = x + s1
        i3 = i2 + s0
        v0 = a[x]
        v1 = a[i1]
        v2 = a[i2]
        v3 = a[i3]
        a[x] = fac[0] * _pick(v0, v1, v2, v3, src[0])
        a[i1] = fac[1] * _pick(v0, v1, v2, v3, src[1])
        a[i2] = fac[2] * _pick(v0, v1, v2, v3, src[2])
        a[i3] = fac[3] * _pick(v0, v1, v2, v3, src[3])


@njit(**_JIT)
def _pick(v0, v1, v2, v3, k):
    if k == 0:
        return v0
    if k == 1:
        return v1
    if k == 2:
        return v2
    return v3


@njit(**_JIT)
def prob0_chunks(a, t, gpc, total_groups, c0, c1, out):
    step = 1 << t
    low = step - 1
    for c in range(c0, c1):
        gs = c * gpc
        ge = gs + gpc
        if ge > total_groups:
            ge = total_groups
        acc = 0.0
        for g in range(gs, ge):
            i0 = ((g >> t) << (t + 1)) | (g & low)
            v = a[i0]
            acc += v.real * v.real + v.imag * v.imag
        out[c] = acc


@njit(**_JIT)
def normsq_chunks(a, ipc, total, c0, c1, out):
    for c in range(c0, c1):
        is_ = c * ipc
        ie = is_ + ipc
        if ie > total:
            ie = total
        acc = 0.0
        for i in range(is_, ie):
            v = a[i]
            acc += v.real * v.real + v.imag * v.imag
        out[c] = acc


@njit(**_JIT)
def collapse(a, q, keep, scale, i0, i1):
    for i in range(i0, i1):
        if ((i >> q) & 1) == keep:
            a[i] = a[i] * scale
        else:
            a[i] = 0
