from __future__ import annotations

import pytest

from epcover.covers import EPCover, PointSpace
from epcover.errors import (
    EmptyFamily,
    HorizonMismatch,
    NotIncreasingError,
    SearchBudgetExceeded,
    UnsatAtHorizon,
)
from epcover.oracle import (
    FinSeq,
    check_large_h,
    check_le_star_h,
    check_through_h,
    check_witness_h,
    exhaustive_groupability,
    greedy_slalom_h,
)

X = frozenset("x")
Y = frozenset("y")
XY = frozenset({"x", "y"})


def fin(fn, count, increasing=True):
    return FinSeq(tuple(fn(n) for n in range(count)), increasing)


def test_finseq_validates_increase():
    with pytest.raises(NotIncreasingError):
        FinSeq((3, 3), increasing=True)


def test_check_le_star_examples():
    v = check_le_star_h(fin(lambda n: n + 5, 20), fin(lambda n: 2 * n, 20))
    assert v.holds and v.threshold == 5
    v2 = check_le_star_h(fin(lambda n: 2 * n, 20), fin(lambda n: n, 20))
    assert not v2.holds and v2.counterexample == 1
    with pytest.raises(HorizonMismatch):
        check_le_star_h(fin(lambda n: n, 5), fin(lambda n: n, 6))


def test_check_through_examples():
    v = check_through_h(fin(lambda n: 2 * n, 30), fin(lambda n: 3 * n, 30))
    assert v.holds and v.threshold == 0
    v2 = check_through_h(fin(lambda n: 4 * n, 30), fin(lambda n: 2 * n, 30))
    assert not v2.holds and v2.counterexample == 1
    same = fin(lambda n: 5 * n + 2, 30)
    v3 = check_through_h(same, same)
    assert v3.holds and v3.threshold == 0


def test_greedy_slalom_examples():
    v = greedy_slalom_h([fin(lambda n: 3 * n, 20)], 0)
    assert v.values[:5] == (0, 1, 4, 7, 10)
    v2 = greedy_slalom_h([fin(lambda n: n, 20)], 0)
    assert v2.values[:5] == (0, 1, 2, 3, 4)
    evens = fin(lambda n: 2 * n, 20)
    odds = fin(lambda n: 2 * n + 1, 20)
    v3 = greedy_slalom_h([evens, odds], 0)
    assert v3.values[:5] == (0, 2, 4, 6, 8)


def test_greedy_slalom_errors():
    with pytest.raises(EmptyFamily):
        greedy_slalom_h([], 0)
    with pytest.raises(UnsatAtHorizon):
        greedy_slalom_h([FinSeq((1, 2, 3), increasing=True)], 10)


def test_greedy_slalom_output_is_valid_for_every_member():
    members = [
        fin(lambda n: 3 * n + 1, 60),
        fin(lambda n: 5 * n, 60),
        fin(lambda n: 2 * n + 4, 60),
    ]
    b = greedy_slalom_h(members, 0)
    for m in members:
        assert check_through_h(m, b).holds


def test_check_large_example():
    c = EPCover(PointSpace(("x", "y")), (), (X, Y))
    assert check_large_h(c, 10) == {"x": 5, "y": 5}


def test_check_witness_on_materialized_blocks():
    c = EPCover(PointSpace(("x", "y")), (), (X, XY))
    blocks = [(0,), (1, 2), (3, 4), (5, 6), (7, 8)]
    mins = check_witness_h(c, blocks, 9)
    assert mins == {"x": 0, "y": 1}
    broken = [(0,), (2,), (3, 4), (5, 6), (7, 8)]  # block 1 lost index 1
    mins2 = check_witness_h(c, broken, 9)
    assert mins2["y"] == 2


def test_exhaustive_groupability_examples():
    c = EPCover(PointSpace(("x", "y")), (), (X, XY))
    w = exhaustive_groupability(c, 8)
    assert w is not None and max(w.thresholds.values()) <= len(w.blocks) // 2

    missing_y = EPCover(PointSpace(("x", "y")), (), (X,))
    assert exhaustive_groupability(missing_y, 8) is None

    single = EPCover(PointSpace(("x",)), (), (X,))
    w2 = exhaustive_groupability(single, 4)
    assert w2 is not None and w2.blocks == ((0,), (1,), (2,), (3,))


def test_exhaustive_arbitrary_mode_can_beat_consecutive():
    # x on indices 0 and 5 only within the window; consecutive splits of 6
    # with >= 2 blocks always leave a late block without x, so only the
    # scattered partition {0,3},{1,4},{2,5} style works with 3 blocks
    c = EPCover(
        PointSpace(("x",)),
        (X, frozenset(), frozenset(), frozenset(), frozenset()),
        (X, frozenset(), frozenset(), frozenset(), frozenset()),
    )
    w = exhaustive_groupability(c, 6)
    assert w is not None


def test_exhaustive_budget():
    c = EPCover(PointSpace(("x", "y")), (), (X,))
    with pytest.raises(SearchBudgetExceeded):
        exhaustive_groupability(c, 12, budget=50)


def test_exhaustive_rejects_large_windows():
    c = EPCover(PointSpace(("x",)), (), (X,))
    with pytest.raises(ValueError):
        exhaustive_groupability(c, 17)
