"""Horizon-truncated brute-force checks.

Every exact decision in this package has a dumb finite counterpart here:
materialize, scan, report.  Verdicts carry the window they were computed
on and are never extrapolated; the test suite cross-validates the exact
decisions against these on randomized instances.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from . import _kernels
from .covers import EPCover
from .errors import (
    EmptyFamily,
    HorizonMismatch,
    NotIncreasingError,
    SearchBudgetExceeded,
    UnsatAtHorizon,
)

HOLDS = "holds-at-horizon"
FAILS = "fails-at-horizon"


@dataclass(frozen=True)
class FinSeq:
    """A materialized finite window of a sequence."""

    values: tuple[int, ...]
    increasing: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if self.increasing:
            for a, b in zip(self.values, self.values[1:]):
                if a >= b:
                    raise NotIncreasingError("window is not strictly increasing")

    @property
    def horizon(self) -> int:
        return len(self.values)

    @classmethod
    def materialize(cls, seq, count: int, increasing: bool = False) -> FinSeq:
        return cls(tuple(seq.values(count)), increasing)


@dataclass(frozen=True)
class HorizonVerdict:
    status: str
    threshold: int | None
    counterexample: int | None
    horizon: int

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    def __str__(self) -> str:
        if self.holds:
            return f"{self.status}, threshold {self.threshold} (window {self.horizon})"
        return (
            f"{self.status}, counterexample {self.counterexample} "
            f"(window {self.horizon})"
        )


def check_le_star_h(f: FinSeq, g: FinSeq) -> HorizonVerdict:
    """Least t with f(n) <= g(n) for all t <= n < horizon; fails when the
    final index still violates."""
    if f.horizon != g.horizon:
        raise HorizonMismatch(f"{f.horizon} != {g.horizon}")
    first, last, n = _kernels.lestar_scan(f.values, g.values)
    t = last + 1
    if n > 0 and t == n:
        return HorizonVerdict(FAILS, None, first, n)
    return HorizonVerdict(HOLDS, t, None, n)


def check_through_h(f: FinSeq, g: FinSeq) -> HorizonVerdict:
    """Least t such that every interval [g(n), g(n+1)) with n >= t that
    lies inside f's observed range contains a value of f.  A miss anywhere
    in the later half of the considered window fails the check: recurring
    miss patterns always reach the later half once the window outgrows
    their period, while a genuinely cofinite hit pattern leaves it clean.
    The horizon reported is the number of intervals considered."""
    if not f.increasing:
        raise NotIncreasingError("through check needs an increasing window")
    first, last, considered = _kernels.through_scan(f.values, g.values)
    t = last + 1
    if considered > 0 and last >= considered // 2:
        return HorizonVerdict(FAILS, None, first, considered)
    return HorizonVerdict(HOLDS, t, None, considered)


def check_large_h(c: EPCover, horizon: int) -> dict[str, int]:
    """Multiplicity count per point over the first `horizon` members."""
    counts = _kernels.multiplicities(c.masks(horizon), len(c.space.points))
    return dict(zip(c.space.points, counts))


def check_witness_h(
    c: EPCover, blocks: Sequence[Sequence[int]], horizon: int
) -> dict[str, int]:
    """Per-point least valid threshold over the materialized blocks.

    A result equal to len(blocks) means even the final block misses the
    point.  Cover traces are materialized far enough to score every listed
    block exactly."""
    blocks = [tuple(b) for b in blocks]
    top = max((max(b) for b in blocks if b), default=0) + 1
    masks = c.masks(max(horizon, top))
    block_of = [0] * len(masks)
    known = [False] * len(masks)
    for bno, blk in enumerate(blocks):
        for e in blk:
            if e < len(masks):
                block_of[e] = bno
                known[e] = True
    masks = [m if known[i] else 0 for i, m in enumerate(masks)]
    mins = _kernels.block_cover_thresholds(
        masks, block_of, len(blocks), len(c.space.points)
    )
    return dict(zip(c.space.points, mins))


def greedy_slalom_h(
    ys: Sequence[FinSeq], start: int = 0, max_boundaries: int | None = None
) -> FinSeq:
    """Greedy boundary construction over materialized members: from a,
    the next boundary is one past the largest of the members' first
    elements at or beyond a.  Earliest-possible boundaries, ties forced.
    Stops when some member's window is exhausted; at least one interval
    must fit."""
    if not ys:
        raise EmptyFamily("need at least one member")
    vals = [y.values for y in ys]
    boundaries = [start]
    a = start
    while max_boundaries is None or len(boundaries) < max_boundaries:
        nxt = []
        for v in vals:
            i = bisect_left(v, a)
            if i >= len(v):
                nxt = None
                break
            nxt.append(v[i])
        if nxt is None:
            break
        b = max(nxt) + 1
        boundaries.append(b)
        a = b
    if len(boundaries) < 2:
        raise UnsatAtHorizon("no interval fits inside the materialized members")
    return FinSeq(tuple(boundaries), increasing=True)


@dataclass(frozen=True, eq=False)
class ExhaustiveWitness:
    blocks: tuple[tuple[int, ...], ...]
    thresholds: Mapping[str, int]
    mode: str


def _finite_thresholds(masks, blocks, n_points) -> list[int] | None:
    """Thresholds for a candidate block sequence, or None when invalid.

    A finite witness is accepted when every point hits every block of the
    tail half: threshold at most len(blocks) // 2.  This keeps one-block
    partitions honest (the single block must cover everything) and rejects
    points that are never, or only early, covered."""
    m = len(blocks)
    covered = [0] * m
    for bno, blk in enumerate(blocks):
        acc = 0
        for e in blk:
            acc |= masks[e]
        covered[bno] = acc
    out = []
    for p in range(n_points):
        bit = 1 << p
        t = 0
        for bno in range(m):
            if not covered[bno] & bit:
                t = bno + 1
        if t > m // 2:
            return None
        out.append(t)
    return out


def exhaustive_groupability(
    c: EPCover,
    n_indices: int,
    max_blocks: int | None = None,
    budget: int = 200_000,
) -> ExhaustiveWitness | None:
    """Search all small block sequences over the first n_indices members
    for a finite groupability witness (see _finite_thresholds for the
    acceptance rule).  Consecutive partitions are tried first, from the
    finest down; then arbitrary partitions ordered by least element.
    Returns None when the full search space is exhausted."""
    if n_indices > 16:
        raise ValueError("exhaustive search is exponential; use n_indices <= 16")
    masks = c.masks(n_indices)
    points = c.space.points
    cap = min(max_blocks or n_indices, n_indices)
    tried = 0

    for m in range(cap, 0, -1):
        for cuts in combinations(range(1, n_indices), m - 1):
            tried += 1
            if tried > budget:
                raise SearchBudgetExceeded(f"{tried} candidates")
            bounds = (0,) + cuts + (n_indices,)
            blocks = [
                tuple(range(bounds[i], bounds[i + 1])) for i in range(m)
            ]
            th = _finite_thresholds(masks, blocks, len(points))
            if th is not None:
                return ExhaustiveWitness(
                    tuple(blocks), dict(zip(points, th)), "consecutive"
                )

    # arbitrary partitions, blocks ordered by least element
    found: list[ExhaustiveWitness] = []

    def rec(i: int, blocks: list[list[int]]) -> bool:
        nonlocal tried
        if i == n_indices:
            tried += 1
            if tried > budget:
                raise SearchBudgetExceeded(f"{tried} candidates")
            th = _finite_thresholds(
                masks, [tuple(b) for b in blocks], len(points)
            )
            if th is not None:
                found.append(
                    ExhaustiveWitness(
                        tuple(tuple(b) for b in blocks),
                        dict(zip(points, th)),
                        "arbitrary",
                    )
                )
                return True
            return False
        for b in blocks:
            b.append(i)
            if rec(i + 1, blocks):
                return True
            b.pop()
        if len(blocks) < cap:
            blocks.append([i])
            if rec(i + 1, blocks):
                return True
            blocks.pop()
        return False

    if rec(0, []):
        return found[0]
    return None
