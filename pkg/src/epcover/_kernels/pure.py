"""Pure-Python scan kernels.

Reference implementations of the hot finite-window loops.  The compiled
module epcover._core mirrors these exactly for int64-sized inputs; this
module is the always-available fallback and the arbitrary-precision path.
"""

from __future__ import annotations


def lestar_scan(f, g):
    """Pointwise comparison of two equal-length windows.

    Returns (first_bad, last_bad, n) with bad = indices where f > g and
    -1 when there is none.
    """
    first = -1
    last = -1
    i = 0
    for a, b in zip(f, g):
        if a > b:
            if first < 0:
                first = i
            last = i
        i += 1
    return first, last, i


def through_scan(f, g):
    """Interval-hitting scan.

    f is a strictly increasing window, g a strictly increasing boundary
    window; interval n is [g[n], g[n+1]) and is considered while
    g[n+1] <= f[-1] + 1 (fully inside the observed range of f).  Returns
    (first_miss, last_miss, considered) with -1 for no miss.
    """
    if not f or len(g) < 2:
        return -1, -1, 0
    fmax = f[-1]
    lf = len(f)
    first = -1
    last = -1
    considered = 0
    j = 0
    for n in range(len(g) - 1):
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


def block_cover_thresholds(masks, block_of, n_blocks, n_points):
    """Per-point least block threshold over a materialized partition.

    masks[i] is the bitmask of points covered by cover member i and
    block_of[i] the block that index i belongs to.  Returns a list with,
    per point, 1 + the last block whose union misses the point (0 when
    every block covers it); a result of n_blocks means the final block
    still misses the point.
    """
    covered = [0] * n_blocks
    for i, m in enumerate(masks):
        covered[block_of[i]] |= m
    out = []
    for p in range(n_points):
        bit = 1 << p
        t = 0
        for b in range(n_blocks):
            if not covered[b] & bit:
                t = b + 1
        out.append(t)
    return out


def multiplicities(masks, n_points):
    """Per-point count of cover members containing the point."""
    out = [0] * n_points
    for m in masks:
        p = 0
        while m:
            if m & 1:
                out[p] += 1
            m >>= 1
            p += 1
    return out
