# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels: int64 mirror of epcover._kernels.pure.

Inputs are buffers of int64 (the dispatch layer converts and falls back to
the pure implementation when values do not fit).  Semantics are identical
to the pure module, which is the reference.
"""


def lestar_scan(const long long[:] f, const long long[:] g):
    cdef Py_ssize_t i, n
    cdef Py_ssize_t first = -1, last = -1
    n = f.shape[0]
    if g.shape[0] < n:
        n = g.shape[0]
    for i in range(n):
        if f[i] > g[i]:
            if first < 0:
                first = i
            last = i
    return first, last, n


def through_scan(const long long[:] f, const long long[:] g):
    cdef Py_ssize_t lf = f.shape[0]
    cdef Py_ssize_t lg = g.shape[0]
    cdef Py_ssize_t first = -1, last = -1, considered = 0
    cdef Py_ssize_t j = 0, n
    cdef long long a, b, fmax
    if lf == 0 or lg < 2:
        return -1, -1, 0
    fmax = f[lf - 1]
    for n in range(lg - 1):
        b = g[n + 1]
        if b > fmax + 1:
            break
        a = g[n]
        while j < lf and f[j] < a:
            j += 1
        if j >= lf or f[j] >= b:
            if first < 0:
                first = n
            last = n
        considered = n + 1
    return first, last, considered


def block_cover_thresholds(const long long[:] masks, const long long[:] block_of,
                           Py_ssize_t n_blocks, Py_ssize_t n_points):
    cdef Py_ssize_t i, p, b, t
    cdef long long bit
    cdef long long[::1] covered
    import array
    arr = array.array('q', bytes(8 * n_blocks))
    covered = arr
    for i in range(masks.shape[0]):
        covered[block_of[i]] |= masks[i]
    out = []
    for p in range(n_points):
        bit = <long long>1 << p
        t = 0
        for b in range(n_blocks):
            if not (covered[b] & bit):
                t = b + 1
        out.append(t)
    return out


def multiplicities(const long long[:] masks, Py_ssize_t n_points):
    cdef Py_ssize_t i, p
    cdef long long m
    counts = [0] * n_points
    cdef list out = counts
    for i in range(masks.shape[0]):
        m = masks[i]
        p = 0
        while m:
            if m & 1:
                out[p] = out[p] + 1
            m >>= 1
            p += 1
    return out
