from __future__ import annotations

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from epcover.errors import FiniteSetError, NotIncreasingError
from epcover.sequences import (
    INCREMENTS,
    VALUES,
    EPSeq,
    EPSet,
    diag_to_increasing,
    first_index_at_least,
    increasing_enum,
    le_star,
    membership_stream,
    normalize,
    range_encode,
    stream_equal,
    undiag,
)

from helpers import (
    brute_last_violation,
    ep_seqs,
    ep_sets,
    increasing_seqs,
    slow_values,
    value_tailed_seqs,
)


# -- eval ----------------------------------------------------------------------


def test_eval_examples():
    assert EPSeq((0,), INCREMENTS, (2,)).eval(5) == 10
    assert EPSeq((7,), VALUES, (1, 2)).eval(4) == 2
    # direct accumulation: 3, 4, 8, 9
    assert EPSeq((3,), INCREMENTS, (1, 4)).eval(3) == 9


@given(ep_seqs(), st.integers(0, 200))
def test_eval_matches_slow_reference(s, n):
    expected = slow_values(s.prefix, s.tail, s.cycle, n + 1)[n]
    assert s.eval(n) == expected


@given(ep_seqs(), st.integers(0, 60))
def test_values_matches_eval(s, count):
    assert s.values(count) == [s.eval(n) for n in range(count)]


def test_eval_rejects_negative_index():
    with pytest.raises(ValueError):
        EPSeq((0,), VALUES, (1,)).eval(-1)


# -- normalize -----------------------------------------------------------------


def test_normalize_examples():
    assert normalize(EPSeq((5,), VALUES, (2, 2))) == EPSeq((5,), VALUES, (2,))
    # constant stream: the anchor stays, everything else collapses
    assert normalize(EPSeq((5, 5, 5), VALUES, (5, 5))) == EPSeq((5,), VALUES, (5,))
    # rotated cycle with a compensating prefix lands on the same form
    a = EPSeq((7, 1), VALUES, (2, 1))
    b = EPSeq((7, 1, 2), VALUES, (1, 2))
    assert normalize(a) == normalize(b)


@given(ep_seqs())
def test_normalize_preserves_stream(s):
    n = normalize(s)
    horizon = len(s.prefix) + len(n.prefix) + 2 * len(s.cycle) * len(n.cycle) + 4
    assert s.values(horizon) == n.values(horizon)


@given(ep_seqs(), st.integers(0, 3), st.integers(1, 3))
def test_normalize_canonical_under_padding(s, extend, repeat):
    # pushing prefix entries in from the tail and repeating the cycle are
    # both invisible after normalization
    padded = EPSeq(
        tuple(s.values(len(s.prefix) + extend)),
        s.tail,
        tuple(_rotate(s.cycle, extend) * repeat) if s.tail is VALUES
        else tuple(_rotate(s.cycle, extend) * repeat),
    )
    assert normalize(padded) == normalize(s)


def _rotate(cycle, k):
    k %= len(cycle)
    return cycle[k:] + cycle[:k]


def test_stream_equal():
    assert stream_equal(EPSeq((0,), VALUES, (1, 1)), EPSeq((0, 1), VALUES, (1,)))
    assert not stream_equal(EPSeq((0,), VALUES, (1,)), EPSeq((1,), VALUES, (1,)))


def test_eventually_constant_increment_tail_becomes_values():
    s = EPSeq((4, 9), INCREMENTS, (0, 0))
    n = normalize(s)
    assert n.tail is VALUES and n.values(5) == [4, 9, 9, 9, 9]


# -- le_star -------------------------------------------------------------------


def test_le_star_examples():
    two_n = EPSeq((0,), INCREMENTS, (2,))
    v = le_star(EPSeq((5,), VALUES, (5,)), two_n)
    assert v.holds and v.threshold == 3
    assert not le_star(two_n, EPSeq((0,), INCREMENTS, (1,))).holds
    assert not le_star(EPSeq((1,), INCREMENTS, (2,)), two_n).holds


@given(ep_seqs(), ep_seqs())
@settings(max_examples=300)
def test_le_star_agrees_with_brute_force(f, g):
    verdict = le_star(f, g)
    K = max(len(f.prefix), len(g.prefix))
    P = len(f.cycle) * len(g.cycle)
    horizon = K + 4 * P + 64
    if verdict.holds:
        horizon = max(horizon, verdict.threshold + P + 64)
    fv, gv = f.values(horizon), g.values(horizon)
    last = brute_last_violation(fv, gv)
    if verdict.holds:
        assert last + 1 == verdict.threshold
    else:
        # violations recur: one lives in every trailing window of length P
        assert last >= horizon - P - K


@given(ep_seqs(), ep_seqs())
def test_le_star_threshold_is_sharp(f, g):
    verdict = le_star(f, g)
    if verdict.holds and verdict.threshold > 0:
        n = verdict.threshold - 1
        assert f.eval(n) > g.eval(n)


# -- diagonal embedding ----------------------------------------------------------


def test_diag_examples():
    n_seq = EPSeq((0,), INCREMENTS, (1,))
    assert diag_to_increasing(EPSeq((0,), VALUES, (0,))) == n_seq
    assert diag_to_increasing(EPSeq((1,), VALUES, (1,))) == EPSeq(
        (1,), INCREMENTS, (2,)
    )
    assert diag_to_increasing(EPSeq((2,), VALUES, (0,))) == EPSeq(
        (2,), INCREMENTS, (1,)
    )


def test_undiag_examples():
    assert undiag(EPSeq((0,), INCREMENTS, (1,))) == EPSeq((0,), VALUES, (0,))
    assert undiag(EPSeq((1,), INCREMENTS, (2,))) == EPSeq((1,), VALUES, (1,))
    assert undiag(EPSeq((0,), INCREMENTS, (2,))) == EPSeq((0,), VALUES, (1,))


@given(value_tailed_seqs())
def test_diag_pointwise_definition(f):
    g = diag_to_increasing(f)
    total = 0
    for n in range(40):
        total += f.eval(n)
        assert g.eval(n) == total + n


@given(value_tailed_seqs())
def test_diag_then_undiag_is_identity(f):
    assert undiag(diag_to_increasing(f)) == normalize(f)


@given(increasing_seqs())
def test_undiag_then_diag_is_identity(g):
    assert diag_to_increasing(undiag(g)) == normalize(g)


def test_undiag_rejects_non_increasing():
    with pytest.raises(NotIncreasingError):
        undiag(EPSeq((3, 1), INCREMENTS, (1,)))
    with pytest.raises(NotIncreasingError):
        undiag(EPSeq((0,), VALUES, (1, 2)))


def test_diag_rejects_unbounded_increment_tails():
    with pytest.raises(NotIncreasingError):
        diag_to_increasing(EPSeq((0,), INCREMENTS, (1,)))


@given(value_tailed_seqs(), value_tailed_seqs())
@settings(max_examples=200)
def test_diag_preserves_dominance_up_to_identity_shift(f1, f2):
    # When f1(n) <= f2(n) everywhere the embedded images compare pointwise;
    # when f1 <=* f2 only eventually, the image of f2 shifted by the
    # identity still eventually dominates (the finite excess is constant,
    # the shift grows).
    if all(f1.eval(n) <= f2.eval(n) for n in range(len(f1.prefix) + len(f2.prefix) + len(f1.cycle) * len(f2.cycle))):
        g1, g2 = diag_to_increasing(f1), diag_to_increasing(f2)
        v = le_star(g1, g2)
        assert v.holds and v.threshold == 0
    if le_star(f1, f2).holds:
        g1, g2 = diag_to_increasing(f1), diag_to_increasing(f2)
        shifted = EPSeq(
            tuple(g2.eval(n) + n for n in range(len(g2.prefix))),
            INCREMENTS,
            tuple(c + 1 for c in g2.cycle),
        )
        assert le_star(g1, shifted).holds


# -- EPSet ----------------------------------------------------------------------


def test_epset_basics():
    evens = EPSet((), (1, 0))
    assert 0 in evens and 1 not in evens and 100 in evens
    assert evens.is_infinite
    finite = EPSet((1, 1, 0, 1), (0,))
    assert not finite.is_infinite
    assert finite.finite_elements() == (0, 1, 3)
    with pytest.raises(ValueError):
        EPSet((2,), (1,))


@given(ep_sets(), ep_sets(), st.integers(0, 80))
def test_epset_algebra_pointwise(a, b, n):
    assert ((n in a) or (n in b)) == (n in a.union(b))
    assert ((n in a) and (n in b)) == (n in a.intersection(b))
    assert ((n in a) and not (n in b)) == (n in a.difference(b))
    assert (n not in a) == (n in a.complement())


@given(ep_sets(), st.integers(0, 60))
def test_epset_next_element(a, x):
    nxt = a.next_element(x)
    probe = [n for n in range(x, x + len(a.prefix) + 2 * len(a.cycle) + 2) if n in a]
    if probe:
        assert nxt == probe[0]
    elif nxt is not None:
        assert nxt >= x and nxt in a


@given(ep_sets(infinite=True), st.integers(0, 40))
def test_epset_nth_element(a, i):
    elems = a.elements_below(len(a.prefix) + (i + 2) * len(a.cycle) + 1)
    assert a.nth_element(i) == elems[i]


@given(ep_sets(), st.integers(0, 20), st.integers(0, 20))
def test_epset_drop_and_shift(a, d, s):
    dropped = a.drop(d)
    for n in range(40):
        assert (n in dropped) == ((n + d) in a)
    shifted = a.shift_right(s)
    for n in range(40):
        assert (n in shifted) == (n >= s and (n - s) in a)


@given(ep_sets())
def test_all_ones_from(a):
    t = a.all_ones_from()
    if t is None:
        zeros = [n for n in range(len(a.prefix) + 3 * len(a.cycle) + 50) if n not in a]
        assert zeros and max(zeros) > len(a.prefix)
    else:
        assert all(n in a for n in range(t, t + 50))
        if t > 0:
            assert (t - 1) not in a


# -- range / enumeration ---------------------------------------------------------


def test_range_encode_examples():
    assert range_encode(EPSeq((0,), INCREMENTS, (2,))) == EPSet((), (1, 0))
    assert range_encode(EPSeq((0,), INCREMENTS, (1,))) == EPSet((), (1,))
    assert range_encode(EPSeq((1,), INCREMENTS, (2,))) == EPSet((), (0, 1))


def test_increasing_enum_examples():
    assert increasing_enum(EPSet((), (1, 0))) == EPSeq((0,), INCREMENTS, (2,))
    assert increasing_enum(EPSet((), (0, 1))) == EPSeq((1,), INCREMENTS, (2,))
    assert increasing_enum(EPSet((0, 0, 1), (1,))) == EPSeq((2,), INCREMENTS, (1,))


def test_increasing_enum_rejects_finite():
    with pytest.raises(FiniteSetError):
        increasing_enum(EPSet((1, 1), (0,)))


def test_range_encode_rejects_non_increasing():
    with pytest.raises(NotIncreasingError):
        range_encode(EPSeq((0,), VALUES, (1,)))


@given(ep_sets(infinite=True))
def test_enum_then_range_is_identity(a):
    assert range_encode(increasing_enum(a)) == a


@given(increasing_seqs())
def test_range_then_enum_is_identity(g):
    assert increasing_enum(range_encode(g)) == normalize(g)


@given(increasing_seqs(), st.integers(0, 30))
def test_range_encode_membership(g, i):
    assert g.eval(i) in range_encode(g)


# -- support helpers --------------------------------------------------------------


@given(increasing_seqs(), st.integers(0, 400))
def test_first_index_at_least(g, x):
    n = first_index_at_least(g, x)
    assert g.eval(n) >= x
    if n > 0:
        assert g.eval(n - 1) < x


@given(ep_sets(), increasing_seqs(), st.integers(0, 60))
def test_membership_stream(member_of, v, j):
    stream = membership_stream(member_of, v)
    assert (j in stream) == (v.eval(j) in member_of)
