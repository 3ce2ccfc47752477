"""Kernel backend selection.

At import we pick the compiled extension (epcover._core) when it built,
otherwise the pure-Python fallback.  Per call, inputs that do not fit in
int64 are routed to the pure path, which works on arbitrary precision;
results are identical either way.
"""

from __future__ import annotations

from array import array

from . import pure

try:
    from epcover import _core
except ImportError:  # extension not built on this install
    _core = None

BACKEND = "compiled" if _core is not None else "pure"


def _as_i64(values):
    try:
        return array("q", values)
    except OverflowError:
        return None


def lestar_scan(f, g):
    if _core is not None:
        fa = _as_i64(f)
        if fa is not None:
            ga = _as_i64(g)
            if ga is not None:
                return _core.lestar_scan(fa, ga)
    return pure.lestar_scan(f, g)


def through_scan(f, g):
    if _core is not None:
        fa = _as_i64(f)
        if fa is not None:
            ga = _as_i64(g)
            if ga is not None:
                return _core.through_scan(fa, ga)
    return pure.through_scan(f, g)


def block_cover_thresholds(masks, block_of, n_blocks, n_points):
    if _core is not None and n_points <= 62:
        ma = _as_i64(masks)
        if ma is not None:
            ba = _as_i64(block_of)
            if ba is not None:
                return _core.block_cover_thresholds(ma, ba, n_blocks, n_points)
    return pure.block_cover_thresholds(masks, block_of, n_blocks, n_points)


def multiplicities(masks, n_points):
    if _core is not None and n_points <= 62:
        ma = _as_i64(masks)
        if ma is not None:
            return _core.multiplicities(ma, n_points)
    return pure.multiplicities(masks, n_points)
