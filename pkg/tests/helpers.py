"""Shared test helpers: dumb reference evaluators and hypothesis strategies.

The reference evaluators iterate step by step and never use closed forms,
so they are independent of the library's arithmetic.
"""

from __future__ import annotations

import hypothesis.strategies as st

from epcover.sequences import INCREMENTS, VALUES, EPSeq, EPSet


def slow_values(prefix, tail, cycle, count):
    """Step-by-step materialization of an (prefix, tail, cycle) stream."""
    vals = list(prefix)[:count]
    i = 0
    while len(vals) < count:
        c = cycle[i % len(cycle)]
        if tail is VALUES:
            vals.append(c)
        else:
            vals.append(vals[-1] + c)
        i += 1
    return vals


def slow_set_bits(prefix, cycle, count):
    bits = list(prefix)[:count]
    i = 0
    while len(bits) < count:
        bits.append(cycle[i % len(cycle)])
        i += 1
    return bits


def brute_last_violation(fv, gv):
    """Largest n with fv[n] > gv[n], or -1."""
    last = -1
    for n, (a, b) in enumerate(zip(fv, gv)):
        if a > b:
            last = n
    return last


def brute_interval_misses(fv, gv):
    """Indices n of intervals [gv[n], gv[n+1]) inside fv's range that
    contain no value of fv."""
    fset = set(fv)
    misses = []
    for n in range(len(gv) - 1):
        if gv[n + 1] > fv[-1] + 1:
            break
        if not any(x in fset for x in range(gv[n], gv[n + 1])):
            misses.append(n)
    return misses


nat50 = st.integers(min_value=0, max_value=50)


@st.composite
def ep_seqs(draw):
    tail = draw(st.sampled_from((VALUES, INCREMENTS)))
    prefix = draw(st.lists(nat50, min_size=1, max_size=5))
    cycle = draw(st.lists(nat50, min_size=1, max_size=4))
    return EPSeq(tuple(prefix), tail, tuple(cycle))


@st.composite
def value_tailed_seqs(draw):
    prefix = draw(st.lists(nat50, min_size=1, max_size=5))
    cycle = draw(st.lists(nat50, min_size=1, max_size=4))
    return EPSeq(tuple(prefix), VALUES, tuple(cycle))


@st.composite
def increasing_seqs(draw, max_step: int = 20):
    k = draw(st.integers(1, 5))
    start = draw(nat50)
    steps = draw(
        st.lists(st.integers(1, max_step), min_size=k - 1, max_size=k - 1)
    )
    prefix = [start]
    for s in steps:
        prefix.append(prefix[-1] + s)
    cycle = draw(st.lists(st.integers(1, max_step), min_size=1, max_size=4))
    return EPSeq(tuple(prefix), INCREMENTS, tuple(cycle))


@st.composite
def ep_sets(draw, infinite: bool = False):
    bit = st.integers(0, 1)
    prefix = draw(st.lists(bit, min_size=0, max_size=6))
    cycle = draw(st.lists(bit, min_size=1, max_size=4))
    if infinite and 1 not in cycle:
        cycle[draw(st.integers(0, len(cycle) - 1))] = 1
    return EPSet(tuple(prefix), tuple(cycle))
