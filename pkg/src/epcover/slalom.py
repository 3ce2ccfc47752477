"""Conversions between dominating bounds, slaloms, and block partitions.

A slalom is the interval system [b(n), b(n+1)) of a strictly increasing
boundary; a strictly increasing sequence goes through it when cofinitely
many intervals contain one of its values.  The four conversions:

* bound -> slalom      boundary recurrence h(n+1) = g(h(n)) + 1
* slalom -> bound      h(n) = g(2n), which dominates every shifted copy
* slalom -> partition  interval blocks, initial segment folded into F_0
* partition -> slalom  greedy boundary over untouched blocks

The recurrence and the greedy boundary compose an increasing sequence with
itself, which escapes the finitely described class, so those two return
on-demand boundaries; everything they feed accepts horizon
materializations.  goes_through is decided exactly for described
boundaries only (on-demand ones are checked by the oracle module).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import NotAPartitionError, NotIncreasingError
from .partitions import (
    DEFAULT_HORIZON,
    BlockPartition,
    IntervalCertificate,
    validate_partition,
)
from .sequences import (
    INCREMENTS,
    Boundary,
    EPSeq,
    EPSet,
    LazySeq,
    first_index_at_least,
    le_star,
    normalize,
    range_encode,
)


@dataclass(frozen=True)
class Slalom:
    """Interval system [boundary(n), boundary(n+1)) for n = 0, 1, ..."""

    boundary: Boundary

    def __post_init__(self) -> None:
        if isinstance(self.boundary, EPSeq):
            if not self.boundary.is_strictly_increasing():
                raise NotIncreasingError("slalom boundary must be strictly increasing")

    @property
    def is_exact(self) -> bool:
        return isinstance(self.boundary, EPSeq)

    def interval(self, n: int) -> tuple[int, int]:
        return self.boundary.eval(n), self.boundary.eval(n + 1)


@dataclass(frozen=True)
class ThroughVerdict:
    """Result of an interval-hitting decision.  `horizon` is None for an
    exact decision and the window length for a truncated one."""

    holds: bool
    threshold: int = 0
    miss_note: str = ""
    horizon: int | None = None

    def __str__(self) -> str:
        tag = "" if self.horizon is None else f" (at horizon {self.horizon})"
        if self.holds:
            return f"holds, threshold {self.threshold}{tag}"
        return f"fails: {self.miss_note}{tag}"


def interval_hit_stream(member_of: EPSet, boundary: EPSeq) -> EPSet:
    """Bit stream n -> [some element of member_of lies in [b(n), b(n+1))].

    Once b(n) has passed the set's explicit prefix, the answer depends only
    on b(n) modulo the set's cycle length and on the interval width, both
    of which recur with a computable period in n.
    """
    b = normalize(boundary)
    if not b.is_strictly_increasing():
        raise NotIncreasingError("interval boundary must be strictly increasing")
    S = len(member_of.cycle)
    n_align = first_index_at_least(b, len(member_of.prefix))
    n0 = max(n_align, len(b.prefix))
    period = len(b.cycle) * (S // gcd(b.cycle_total, S))

    def hit(n: int) -> int:
        lo = b.eval(n)
        nxt = member_of.next_element(lo)
        return int(nxt is not None and nxt < b.eval(n + 1))

    prefix = tuple(hit(n) for n in range(n0))
    cyc = tuple(hit(n) for n in range(n0, n0 + period))
    return EPSet(prefix, cyc)


def goes_through(f: EPSeq, s: Slalom) -> ThroughVerdict:
    """Exact decision whether strictly increasing f goes through s."""
    if not s.is_exact:
        raise NotIncreasingError(
            "exact goes_through needs a finitely described boundary; "
            "use the oracle module for on-demand boundaries"
        )
    f = normalize(f)
    if not f.is_strictly_increasing():
        raise NotIncreasingError("goes_through needs a strictly increasing sequence")
    hits = interval_hit_stream(range_encode(f), s.boundary)
    t = hits.all_ones_from()
    if t is None:
        period = len(hits.cycle)
        start = len(hits.prefix)
        misses = " ".join(
            str((start + i) % period) for i, bit in enumerate(hits.cycle) if not bit
        )
        note = f"intervals at n = {misses} (mod {period}) miss from n = {start}"
        return ThroughVerdict(False, 0, note)
    return ThroughVerdict(True, t, "")


def slalom_from_bound(g: EPSeq) -> Slalom:
    """Boundary recurrence h(0) = g(0), h(n+1) = g(h(n)) + 1 for a strictly
    increasing g.  Every f dominated by g goes through the result; see
    bound_slalom_threshold for the exact threshold."""
    g = normalize(g)
    if not g.is_strictly_increasing():
        raise NotIncreasingError("slalom_from_bound needs a strictly increasing bound")

    def boundary():
        h = g.eval(0)
        yield h
        while True:
            h = g.eval(h) + 1
            yield h

    return Slalom(LazySeq(boundary()))


def bound_slalom_threshold(f: EPSeq, g: EPSeq) -> int | None:
    """Exact interval threshold for f against slalom_from_bound(g).

    When f is dominated by g from index T, every interval [h(n), h(n+1))
    with h(n) >= T contains f(h(n)): h(n) <= f(h(n)) because a strictly
    increasing sequence of naturals satisfies f(m) >= m, and f(h(n)) <=
    g(h(n)) < h(n+1) by dominance.  Returns the least such n, or None when
    f is not dominated by g.
    """
    verdict = le_star(f, g)
    if not verdict.holds:
        return None
    h = slalom_from_bound(g).boundary
    n = 0
    while h.eval(n) < verdict.threshold:
        n += 1
    return n


def bound_from_slalom(s: Slalom) -> Boundary:
    """The dominating bound h(n) = g(2n) extracted from a slalom g.

    For strictly increasing g, g(n0 + 1 + n) <= g(2n) once n > n0, so h
    eventually dominates every shifted copy of the boundary; any sequence
    through the slalom is therefore eventually dominated by h.
    """
    g = s.boundary
    if isinstance(g, LazySeq):
        return LazySeq(g.eval(2 * n) for n in _count())
    g = normalize(g)
    p = len(g.cycle)
    k = len(g.prefix)
    ph = p if p % 2 else p // 2
    n0 = max(1, (k - 1 + 1) // 2 + 1)  # both sampled increments inside the tail
    prefix = tuple(g.eval(2 * n) for n in range(n0))
    cyc = tuple(
        g.eval(2 * n + 2) - g.eval(2 * n) for n in range(n0 - 1, n0 - 1 + ph)
    )
    return normalize(EPSeq(prefix, INCREMENTS, cyc))


def _count():
    n = 0
    while True:
        yield n
        n += 1


def partition_from_slalom(s: Slalom) -> BlockPartition:
    """Interval blocks: F_0 = [0, b(1)) and F_n = [b(n), b(n+1)) for
    n >= 1, partitioning all indices."""
    return BlockPartition.from_interval_boundary(s.boundary)


def slalom_from_partition(
    p: BlockPartition, horizon: int = DEFAULT_HORIZON
) -> Slalom:
    """Greedy boundary: b(0) = 0; from b(n-1), take the first block that is
    disjoint from [0, b(n-1)) and set b(n) past its maximum.  Each interval
    [b(n), b(n+1)) then contains a whole block, so any sequence meeting
    cofinitely many blocks goes through the result.

    The partition is validated up to `horizon` first.  The boundary is
    on-demand: the greedy step composes block positions with the running
    boundary value, which has no finite description in general.
    """
    validate_partition(p, horizon)

    def boundary():
        yield 0
        current = 0
        m = 0
        while True:
            while True:
                if p.num_blocks is not None and m >= p.num_blocks:
                    return
                if m > 4 * (current + horizon) + 64:
                    raise NotAPartitionError(
                        "no block clear of the current boundary; "
                        "blocks do not partition the indices"
                    )
                blk = p.block(m)
                if blk and min(blk) >= current:
                    break
                m += 1
            current = max(blk) + 1
            m += 1
            yield current

    return Slalom(LazySeq(boundary()))


def contained_block_search(blocks, lo: int, hi: int) -> int | None:
    """Exhaustive search over materialized blocks for one inside [lo, hi).
    Used to test the greedy construction's key property independently of
    the order in which the greedy consumed blocks."""
    for m, blk in enumerate(blocks):
        if blk and lo <= min(blk) and max(blk) < hi:
            return m
    return None
