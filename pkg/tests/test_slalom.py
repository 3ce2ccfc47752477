from __future__ import annotations

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from epcover.errors import NotAPartitionError, NotIncreasingError
from epcover.oracle import FinSeq, check_through_h
from epcover.partitions import BlockPartition
from epcover.sequences import INCREMENTS, EPSeq, le_star, normalize
from epcover.slalom import (
    Slalom,
    bound_from_slalom,
    bound_slalom_threshold,
    contained_block_search,
    goes_through,
    partition_from_slalom,
    slalom_from_bound,
    slalom_from_partition,
)

from helpers import brute_interval_misses, increasing_seqs

TWO_N = EPSeq((0,), INCREMENTS, (2,))
THREE_N = EPSeq((0,), INCREMENTS, (3,))
FOUR_N = EPSeq((0,), INCREMENTS, (4,))
N_SEQ = EPSeq((0,), INCREMENTS, (1,))


# -- goes_through ---------------------------------------------------------------


def test_goes_through_examples():
    v = goes_through(TWO_N, Slalom(TWO_N))
    assert v.holds and v.threshold == 0
    # every length-3 interval contains an even number
    v = goes_through(TWO_N, Slalom(THREE_N))
    assert v.holds and v.threshold == 0
    # intervals [2n, 2n+2) with 2n = 2 (mod 4) contain no multiple of 4
    v = goes_through(FOUR_N, Slalom(TWO_N))
    assert not v.holds and v.miss_note


def test_goes_through_rejects_bad_inputs():
    with pytest.raises(NotIncreasingError):
        goes_through(EPSeq((0,), INCREMENTS, (0, 1)), Slalom(TWO_N))
    with pytest.raises(NotIncreasingError):
        Slalom(EPSeq((5, 3), INCREMENTS, (1,)))
    with pytest.raises(NotIncreasingError):
        goes_through(TWO_N, slalom_from_bound(TWO_N))


@given(increasing_seqs(), increasing_seqs())
@settings(max_examples=250)
def test_goes_through_agrees_with_brute_force(f, g):
    s = Slalom(normalize(g))
    verdict = goes_through(f, s)
    fv = f.values(600)
    bv = [s.boundary.eval(n) for n in range(600)]
    misses = brute_interval_misses(fv, bv)
    considered = sum(1 for n in range(len(bv) - 1) if bv[n + 1] <= fv[-1] + 1)
    if verdict.holds:
        assert [m for m in misses if m >= verdict.threshold] == []
        if verdict.threshold > 0 and verdict.threshold - 1 < considered:
            assert (verdict.threshold - 1) in misses
    else:
        period = len(normalize(g).cycle) * sum(normalize(f).cycle)
        assert misses and misses[-1] >= considered - period - 1


# -- bound -> slalom --------------------------------------------------------------


def test_slalom_from_bound_recurrence_examples():
    assert slalom_from_bound(N_SEQ).boundary.values(5) == [0, 1, 2, 3, 4]
    assert slalom_from_bound(TWO_N).boundary.values(6) == [0, 1, 3, 7, 15, 31]
    n_plus_1 = EPSeq((1,), INCREMENTS, (1,))
    assert slalom_from_bound(n_plus_1).boundary.values(4) == [1, 3, 5, 7]


@given(increasing_seqs(max_step=8), increasing_seqs(max_step=8))
@settings(max_examples=150)
def test_dominated_sequences_go_through_bound_slalom(f, g):
    verdict = le_star(f, g)
    if not verdict.holds:
        assert bound_slalom_threshold(f, g) is None
        return
    n0 = bound_slalom_threshold(f, g)
    s = slalom_from_bound(g)
    fv = f.values(2000)
    bv = s.boundary.values_until(fv[-1], 2000)
    misses = brute_interval_misses(fv, bv)
    assert all(m < n0 for m in misses)


# -- slalom -> bound --------------------------------------------------------------


def test_bound_from_slalom_examples():
    assert bound_from_slalom(Slalom(TWO_N)) == EPSeq((0,), INCREMENTS, (4,))
    assert bound_from_slalom(Slalom(N_SEQ)) == TWO_N
    # 2n+1 goes through the slalom of 2n; the doubled boundary dominates it
    f = EPSeq((1,), INCREMENTS, (2,))
    assert goes_through(f, Slalom(TWO_N)).holds
    v = le_star(f, bound_from_slalom(Slalom(TWO_N)))
    assert v.holds and v.threshold == 1


@given(increasing_seqs())
def test_bound_from_slalom_is_even_subsequence(g):
    g = normalize(g)
    h = bound_from_slalom(Slalom(g))
    assert isinstance(h, EPSeq)
    assert [h.eval(n) for n in range(30)] == [g.eval(2 * n) for n in range(30)]


@given(increasing_seqs(), increasing_seqs())
@settings(max_examples=250)
def test_through_implies_dominated_by_extracted_bound(f, g):
    s = Slalom(normalize(g))
    if goes_through(f, s).holds:
        assert le_star(f, bound_from_slalom(s)).holds


def test_bound_from_lazy_slalom():
    s = slalom_from_bound(TWO_N)  # boundary 0 1 3 7 15 ...
    h = bound_from_slalom(s)
    assert h.values(4) == [0, 3, 15, 63]


# -- slalom -> partition -----------------------------------------------------------


def test_partition_from_slalom_examples():
    p = partition_from_slalom(Slalom(TWO_N))
    assert [p.block(n) for n in range(3)] == [(0, 1), (2, 3), (4, 5)]
    g = EPSeq((3, 5), INCREMENTS, (2,))
    p2 = partition_from_slalom(Slalom(g))
    assert p2.block(0) == (0, 1, 2, 3, 4)
    p3 = partition_from_slalom(Slalom(N_SEQ))
    assert [p3.block(n) for n in range(3)] == [(0,), (1,), (2,)]


@given(increasing_seqs(), increasing_seqs())
@settings(max_examples=150)
def test_through_slalom_meets_cofinitely_many_interval_blocks(f, g):
    s = Slalom(normalize(g))
    verdict = goes_through(f, s)
    if not verdict.holds:
        return
    p = partition_from_slalom(s)
    fv = set(f.values(400))
    top = max(fv)
    n = verdict.threshold + 1
    while True:
        blk = p.block(n)
        if max(blk) > top:
            break
        assert fv & set(blk), f"block {n} missed"
        n += 1


# -- partition -> slalom -----------------------------------------------------------


def test_slalom_from_partition_greedy_traces():
    pairs = BlockPartition.from_widths((), (2,))
    assert slalom_from_partition(pairs).boundary.values(4) == [0, 2, 4, 6]
    singles = BlockPartition.from_widths((), (1,))
    assert slalom_from_partition(singles).boundary.values(4) == [0, 1, 2, 3]
    scattered = BlockPartition.from_explicit_blocks(
        [(0, 5), (1, 2), (3, 4), (6, 7)]
    )
    assert slalom_from_partition(scattered).boundary.values(3) == [0, 6, 8]


def test_slalom_from_partition_rejects_defects():
    class Broken:
        pass

    overlapping = BlockPartition(
        domain=BlockPartition.from_widths((), (2,)).domain,
        block_fn=lambda n: (n, n + 1),
        num_blocks=None,
        certificate=None,
    )
    with pytest.raises(NotAPartitionError):
        slalom_from_partition(overlapping, horizon=64)

    gappy = BlockPartition(
        domain=BlockPartition.from_widths((), (1,)).domain,
        block_fn=lambda n: (2 * n,),
        num_blocks=None,
        certificate=None,
    )
    with pytest.raises(NotAPartitionError):
        slalom_from_partition(gappy, horizon=64)


def test_greedy_key_property_on_scattered_partition():
    p = BlockPartition.from_explicit_blocks(
        [(0, 5), (1, 2), (3, 4), (6, 7), (8, 9), (10, 11), (12,)]
    )
    s = slalom_from_partition(p, horizon=16)
    b = s.boundary.values(4)
    blocks = [p.block(m) for m in range(p.num_blocks)]
    for n in range(len(b) - 1):
        assert contained_block_search(blocks, b[n], b[n + 1]) is not None


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_greedy_slalom_contains_block_per_interval(seed):
    from epcover.instances import gen_partition, rng_from_seed

    p = gen_partition(rng_from_seed(seed))
    s = slalom_from_partition(p, horizon=600)
    bv = s.boundary.values(40)
    blocks = []
    m = 0
    while True:
        blk = p.block(m)
        blocks.append(blk)
        if min(blk) > bv[-1]:
            break
        m += 1
    for n in range(len(bv) - 1):
        assert contained_block_search(blocks, bv[n], bv[n + 1]) is not None


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_sequences_meeting_blocks_go_through_greedy_slalom(seed):
    # any sequence that meets cofinitely many blocks goes through the
    # greedy boundary: here, one that picks an element of every block
    from epcover.instances import gen_partition, rng_from_seed

    r = rng_from_seed(seed)
    p = gen_partition(r)
    picks = []
    m = 0
    while len(picks) < 300:
        blk = p.block(m)
        picks.append(r.choice(blk))
        m += 1
    # blocks are disjoint, so the picks are distinct and sort increasing
    picks.sort()
    s = slalom_from_partition(p, horizon=600)
    bv = s.boundary.values_until(picks[-1], 200)
    verdict = check_through_h(FinSeq(tuple(picks), increasing=True), FinSeq(tuple(bv)))
    assert verdict.holds
