from __future__ import annotations

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from epcover.covers import GroupabilityWitness, group_cover, is_large, verify_witness
from epcover.errors import InvalidWitnessError
from epcover.instances import gen_family, rng_from_seed
from epcover.oracle import FinSeq, greedy_slalom_h, check_through_h
from epcover.rothberger import (
    FunFamily,
    b_pipeline,
    build_rothberger_cover,
    partition_to_slalom_check,
    witness_to_partition,
)
from epcover.sequences import EPSet, increasing_enum

EVENS = EPSet((), (1, 0))
ODDS = EPSet((), (0, 1))
NATS = EPSet((), (1,))


def test_build_cover_examples():
    c = build_rothberger_cover(FunFamily.from_sets([EVENS, ODDS], ["e", "o"]))
    assert [sorted(c.trace(n)) for n in range(4)] == [["e"], ["o"], ["e"], ["o"]]
    c2 = build_rothberger_cover(FunFamily.from_sets([NATS], ["n"]))
    assert c2.cycle == (frozenset({"n"}),)
    c3 = build_rothberger_cover(FunFamily.from_sets([EVENS], ["e"]))
    assert [sorted(c3.trace(n)) for n in range(2)] == [["e"], []]


def test_build_cover_is_always_large():
    for seed in range(30):
        fam = gen_family(rng_from_seed(seed))
        assert is_large(build_rothberger_cover(fam)).all_large


def test_family_validation():
    with pytest.raises(ValueError):
        FunFamily((EPSet((1,), (0,)),), ("fin",))
    with pytest.raises(ValueError):
        FunFamily((EVENS, ODDS), ("a", "a"))


def test_witness_to_partition_example():
    fam = FunFamily.from_sets([EVENS, ODDS], ["e", "o"])
    cover = build_rothberger_cover(fam)
    w = group_cover(cover).witness
    part = witness_to_partition(fam, w)
    blocks = [part.partition.block(n) for n in range(3)]
    assert blocks == [(0,), (1, 2), (3, 4)]
    # every block past the threshold meets both members
    for n in range(1, 10):
        blk = set(part.partition.block(n))
        assert blk & set(EVENS.elements_below(50))
        assert blk & set(ODDS.elements_below(50))
    assert part.thresholds == {"e": 0, "o": 1}


def test_witness_to_partition_rejects_corruption():
    fam = FunFamily.from_sets([EVENS, ODDS], ["e", "o"])
    cover = build_rothberger_cover(fam)
    w = group_cover(cover).witness
    bad = GroupabilityWitness(w.partition, {"e": 0, "o": 0})
    with pytest.raises(InvalidWitnessError):
        witness_to_partition(fam, bad)


def test_partition_to_slalom_check_examples():
    fam = FunFamily.from_sets([EVENS, ODDS], ["e", "o"])
    cover = build_rothberger_cover(fam)
    part = witness_to_partition(fam, group_cover(cover).witness)
    s, verdicts = partition_to_slalom_check(fam, part.partition, horizon=500)
    assert all(v.holds for v in verdicts.values())
    assert s.boundary.values(4) == [0, 1, 3, 5]

    from epcover.partitions import BlockPartition

    singles = BlockPartition.from_widths((), (1,))
    fam_n = FunFamily.from_sets([NATS], ["n"])
    s2, verdicts2 = partition_to_slalom_check(fam_n, singles, horizon=200)
    assert verdicts2["n"].holds and verdicts2["n"].threshold == 0

    pairs = BlockPartition.from_widths((), (2,))
    fam_e = FunFamily.from_sets([EVENS], ["e"])
    s3, verdicts3 = partition_to_slalom_check(fam_e, pairs, horizon=200)
    assert verdicts3["e"].holds and verdicts3["e"].threshold == 0


def test_pipeline_evens_odds():
    report = b_pipeline(FunFamily.from_sets([EVENS, ODDS], ["e", "o"]), horizon=800)
    assert report.ok
    assert report.through["e"].holds and report.through["o"].holds
    assert report.dominated["e"].holds and report.dominated["o"].holds


def test_pipeline_naturals():
    report = b_pipeline(FunFamily.from_sets([NATS], ["n"]), horizon=400)
    assert report.ok
    assert report.slalom.boundary.values(4) == [0, 1, 2, 3]
    assert report.bound.values(4) == [0, 2, 4, 6]


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_pipeline_succeeds_on_random_families(seed):
    fam = gen_family(rng_from_seed(seed), max_members=6)
    report = b_pipeline(fam, horizon=1500)
    assert report.ok


def test_pipeline_coherent_with_greedy_oracle():
    fam = gen_family(rng_from_seed(7), max_members=5)
    report = b_pipeline(fam, horizon=1500)
    assert report.ok
    horizon = 1500
    ys = [
        FinSeq(tuple(m.elements_below(horizon)), increasing=True)
        for m in fam.members
    ]
    greedy = greedy_slalom_h(ys, 0)
    # both routes produce a valid slalom for the same family
    for m in fam.members:
        f = FinSeq(tuple(increasing_enum(m).values(400)), increasing=True)
        assert check_through_h(f, greedy).holds
