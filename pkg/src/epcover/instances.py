"""Seeded random instance generation, shared by the CLI and the tests.

Sizes follow the randomized-check conventions used throughout: prefixes up
to 6 entries, cycles up to 4, values up to 50.  Everything is driven by an
explicit random.Random so a seed pins the whole instance.
"""

from __future__ import annotations

import random
from math import lcm
from typing import Callable

from .covers import EPCover, PointSpace
from .partitions import BlockPartition
from .rothberger import FunFamily
from .sequences import (
    INCREMENTS,
    VALUES,
    EPSeq,
    EPSet,
    le_star,
    normalize,
)
from .slalom import Slalom, goes_through

MAX_PREFIX = 6
MAX_CYCLE = 4
MAX_VALUE = 50


def rng_from_seed(seed: int) -> random.Random:
    return random.Random(seed)


def gen_epseq(r: random.Random, increasing: bool = False) -> EPSeq:
    if increasing:
        k = r.randint(1, MAX_PREFIX)
        prefix = [r.randint(0, MAX_VALUE)]
        for _ in range(k - 1):
            prefix.append(prefix[-1] + r.randint(1, MAX_VALUE))
        p = r.randint(1, MAX_CYCLE)
        cycle = tuple(r.randint(1, MAX_VALUE) for _ in range(p))
        return EPSeq(tuple(prefix), INCREMENTS, cycle)
    tail = r.choice((VALUES, INCREMENTS))
    k = r.randint(1, MAX_PREFIX)
    prefix = tuple(r.randint(0, MAX_VALUE) for _ in range(k))
    p = r.randint(1, MAX_CYCLE)
    cycle = tuple(r.randint(0, MAX_VALUE) for _ in range(p))
    return EPSeq(prefix, tail, cycle)


def gen_epset(r: random.Random, infinite: bool = True) -> EPSet:
    k = r.randint(0, MAX_PREFIX)
    prefix = tuple(r.randint(0, 1) for _ in range(k))
    p = r.randint(1, MAX_CYCLE)
    cycle = [r.randint(0, 1) for _ in range(p)]
    if infinite and 1 not in cycle:
        cycle[r.randrange(p)] = 1
    return EPSet(prefix, tuple(cycle))


def gen_cover(
    r: random.Random,
    max_points: int = 5,
    max_prefix: int = MAX_PREFIX,
    max_cycle: int = MAX_CYCLE,
    ensure_large: bool = True,
) -> EPCover:
    n = r.randint(1, max_points)
    points = tuple(f"x{i}" for i in range(n))

    def subset() -> frozenset[str]:
        return frozenset(p for p in points if r.random() < 0.45)

    prefix = [subset() for _ in range(r.randint(0, max_prefix))]
    cycle = [subset() for _ in range(r.randint(1, max_cycle))]
    if ensure_large:
        for p in points:
            if not any(p in t for t in cycle):
                i = r.randrange(len(cycle))
                cycle[i] = cycle[i] | {p}
    return EPCover(PointSpace(points), tuple(prefix), tuple(cycle))


def gen_family(r: random.Random, max_members: int = 10) -> FunFamily:
    n = r.randint(1, max_members)
    members = [gen_epset(r, infinite=True) for _ in range(n)]
    labels = tuple(f"a{i}" for i in range(n))
    return FunFamily(tuple(members), labels)


def gen_partition_widths(
    r: random.Random,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    pre = tuple(r.randint(1, 6) for _ in range(r.randint(0, 4)))
    cyc = tuple(r.randint(1, 6) for _ in range(r.randint(1, 3)))
    return pre, cyc


def gen_partition(r: random.Random, scattered: bool = True) -> BlockPartition:
    """A partition of the naturals into finite blocks: consecutive blocks
    with eventually periodic widths, optionally with the first few blocks'
    elements reshuffled so the head is not interval-shaped."""
    pre_widths, cyc_widths = gen_partition_widths(r)
    base = BlockPartition.from_widths(pre_widths, cyc_widths)
    if not scattered or r.random() < 0.5:
        return base
    h = r.randint(2, 4)
    head = [list(base.block(n)) for n in range(h)]
    pool = [e for blk in head for e in blk]
    r.shuffle(pool)
    sizes = [len(blk) for blk in head]
    mixed = []
    at = 0
    for s in sizes:
        mixed.append(tuple(sorted(pool[at : at + s])))
        at += s

    def block_fn(n: int, mixed=tuple(mixed), base=base):
        return mixed[n] if n < len(mixed) else base.block(n)

    return BlockPartition(base.domain, block_fn, None, None)


def gen_le_pair(r: random.Random) -> tuple[EPSeq, EPSeq]:
    """A strictly increasing pair (f, g) with f eventually dominated by g:
    random pairs filtered by the exact decision, with a constructed
    faster-growing g as fallback so generation always terminates."""
    for _ in range(32):
        f = gen_epseq(r, increasing=True)
        g = gen_epseq(r, increasing=True)
        if le_star(f, g).holds:
            return f, g
    f = gen_epseq(r, increasing=True)
    g = EPSeq(
        (r.randint(0, 3),),
        INCREMENTS,
        tuple(c + r.randint(1, 3) for c in f.cycle),
    )
    assert le_star(f, g).holds
    return f, g


def gen_through_pair(r: random.Random) -> tuple[EPSeq, Slalom]:
    """A strictly increasing f together with a slalom it goes through:
    random pairs filtered by the exact decision, with a constructed f that
    picks one value inside every interval as fallback."""
    for _ in range(32):
        f = gen_epseq(r, increasing=True)
        g = gen_epseq(r, increasing=True)
        s = Slalom(normalize(g))
        if goes_through(f, s).holds:
            return f, s
    g = normalize(gen_epseq(r, increasing=True))
    s = Slalom(g)
    L = r.randint(1, 3)
    offsets = [r.randint(0, MAX_VALUE) for _ in range(L)]
    K = len(g.prefix)
    Q = lcm(len(g.cycle), L)

    def val(n: int) -> int:
        width = g.eval(n + 1) - g.eval(n)
        return g.eval(n) + min(offsets[n % L], width - 1)

    prefix = tuple(val(n) for n in range(K))
    cycle = tuple(val(K + j) - val(K + j - 1) for j in range(Q))
    f = normalize(EPSeq(prefix, INCREMENTS, cycle))
    assert goes_through(f, s).holds
    return f, s


def gen_point_map(
    r: random.Random, sources: tuple[str, ...], targets: tuple[str, ...]
) -> dict[str, str]:
    """A random surjection from sources onto targets (needs enough sources)."""
    if len(sources) < len(targets):
        raise ValueError("need at least as many sources as targets")
    src = list(sources)
    r.shuffle(src)
    mapping = {}
    for x, y in zip(src, targets):
        mapping[x] = y
    for x in src[len(targets):]:
        mapping[x] = r.choice(targets)
    return dict(sorted(mapping.items()))


GENERATORS: dict[str, Callable[[random.Random], object]] = {
    "epseq": gen_epseq,
    "epseq-inc": lambda r: gen_epseq(r, increasing=True),
    "epset": gen_epset,
    "cover": gen_cover,
    "family": gen_family,
    "partition": gen_partition,
}
