"""Exact arithmetic on finitely described infinite integer sequences and sets.

Every object here is a finite prefix plus a repeating cycle.  A sequence
tail either repeats literal values (bounded, eventually periodic streams)
or repeats increments added to the previous value (unbounded streams whose
growth pattern repeats).  The increment flavour is exactly what the
diagonal embedding produces from value-periodic streams, so the embedding,
its inverse, and the range/enumeration encodings never leave the
representable class and all decisions are made exactly, with no horizon.

All values are plain Python integers; nothing overflows.  Compiled scan
kernels only ever see materialized finite windows.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import accumulate, chain, cycle as cycled, islice
from math import gcd, lcm
from typing import Callable, Iterable, Iterator

from .errors import FiniteSetError, NotIncreasingError


class TailKind(Enum):
    VALUES = "values"
    INCREMENTS = "increments"


VALUES = TailKind.VALUES
INCREMENTS = TailKind.INCREMENTS


def _check_naturals(items: tuple[int, ...], what: str) -> None:
    for v in items:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ValueError(f"{what} must be naturals, got {v!r}")


def _minimal_period(cycle: tuple[int, ...]) -> int:
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and all(cycle[i] == cycle[i % d] for i in range(n)):
            return d
    return n


@dataclass(frozen=True)
class EPSeq:
    """An infinite sequence of naturals: explicit prefix, then a repeating
    tail of either literal values or increments added to the last value.

    The prefix is never empty; it anchors the increment tail.  Tail value
    at index n >= len(prefix):

    * VALUES:      cycle[(n - k) % p]
    * INCREMENTS:  prefix[-1] plus the first (n - k + 1) cycled increments
    """

    prefix: tuple[int, ...]
    tail: TailKind
    cycle: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.prefix:
            raise ValueError("EPSeq prefix must be nonempty")
        if not self.cycle:
            raise ValueError("EPSeq cycle must be nonempty")
        if not isinstance(self.tail, TailKind):
            raise ValueError(f"tail must be a TailKind, got {self.tail!r}")
        _check_naturals(self.prefix, "prefix entries")
        _check_naturals(self.cycle, "cycle entries")

    @cached_property
    def cycle_total(self) -> int:
        """Growth per full cycle (0 for a VALUES tail)."""
        return sum(self.cycle) if self.tail is INCREMENTS else 0

    @cached_property
    def _partials(self) -> tuple[int, ...]:
        # partial sums of the increment cycle, _partials[r] = sum(cycle[:r])
        return tuple(accumulate(self.cycle, initial=0))

    def eval(self, n: int) -> int:
        """Value at index n, in closed form (no iteration over n)."""
        if n < 0:
            raise ValueError("index must be a natural")
        k = len(self.prefix)
        if n < k:
            return self.prefix[n]
        p = len(self.cycle)
        if self.tail is VALUES:
            return self.cycle[(n - k) % p]
        q, r = divmod(n - k + 1, p)
        return self.prefix[-1] + q * self.cycle_total + self._partials[r]

    def values(self, count: int) -> list[int]:
        """Materialize the first `count` values."""
        if count <= 0:
            return []
        k = len(self.prefix)
        if self.tail is VALUES:
            return list(islice(chain(self.prefix, cycled(self.cycle)), count))
        if count <= k:
            return list(self.prefix[:count])
        tail = accumulate(
            islice(cycled(self.cycle), count - k), initial=self.prefix[-1]
        )
        next(tail)  # the initial anchor is already in the prefix
        return list(self.prefix) + list(tail)

    def is_strictly_increasing(self) -> bool:
        if self.tail is not INCREMENTS or min(self.cycle) < 1:
            return False
        return all(a < b for a, b in zip(self.prefix, self.prefix[1:]))

    def growth_per(self, span: int) -> int:
        """Total growth over `span` indices, once inside the tail."""
        if self.tail is VALUES:
            return 0
        if span % len(self.cycle):
            raise ValueError("span must be a multiple of the cycle length")
        return self.cycle_total * (span // len(self.cycle))

    def __str__(self) -> str:
        kind = "inc" if self.tail is INCREMENTS else "val"
        pre = " ".join(map(str, self.prefix))
        cyc = " ".join(map(str, self.cycle))
        return f"prefix {pre} ; {kind}-cycle {cyc}"


def normalize(s: EPSeq) -> EPSeq:
    """Canonical form: minimal cycle, minimal (nonempty) prefix, and an
    eventually constant increment tail demoted to a value tail.  Two EPSeqs
    describe the same stream iff their normal forms are equal."""
    prefix = list(s.prefix)
    cycle = list(s.cycle)
    tail = s.tail
    if tail is INCREMENTS and not any(cycle):
        tail = VALUES
        cycle = [prefix[-1]]
    d = _minimal_period(tuple(cycle))
    cycle = cycle[:d]
    if tail is VALUES:
        while len(prefix) > 1 and prefix[-1] == cycle[-1]:
            prefix.pop()
            cycle = [cycle[-1]] + cycle[:-1]
    else:
        while len(prefix) > 1 and prefix[-1] - prefix[-2] == cycle[-1]:
            prefix.pop()
            cycle = [cycle[-1]] + cycle[:-1]
    return EPSeq(tuple(prefix), tail, tuple(cycle))


def stream_equal(a: EPSeq, b: EPSeq) -> bool:
    """Do two descriptions denote the same value stream?"""
    return normalize(a) == normalize(b)


@dataclass(frozen=True)
class DominanceVerdict:
    """Outcome of an eventual-dominance comparison.  When it holds,
    `threshold` is the least t with f(n) <= g(n) for every n >= t."""

    holds: bool
    threshold: int = 0
    witness_note: str = ""

    def __str__(self) -> str:
        if self.holds:
            return f"holds, threshold {self.threshold}"
        return f"fails: {self.witness_note}"


def le_star(f: EPSeq, g: EPSeq) -> DominanceVerdict:
    """Exact decision of "f(n) <= g(n) for all but finitely many n".

    Beyond the common prefix K the difference g - f shifts by a constant
    `delta` every lcm-period P, so the sign pattern is decided by one full
    period plus closed-form extrapolation; the minimal threshold comes from
    the last violating index.
    """
    f = normalize(f)
    g = normalize(g)
    K = max(len(f.prefix), len(g.prefix))
    P = lcm(len(f.cycle), len(g.cycle))
    delta = g.growth_per(P) - f.growth_per(P)
    base = [g.eval(K + r) - f.eval(K + r) for r in range(P)]

    if delta < 0:
        note = f"g falls behind by {-delta} every {P} indices"
        return DominanceVerdict(False, 0, note)
    if delta == 0:
        bad = [r for r, d in enumerate(base) if d < 0]
        if bad:
            residues = " ".join(str((K + r) % P) for r in bad)
            note = f"violations recur at n = {residues} (mod {P}) from n = {K}"
            return DominanceVerdict(False, 0, note)

    last = -1
    if delta > 0:
        for r, d0 in enumerate(base):
            if d0 < 0:
                j = (-d0 - 1) // delta  # last j with d0 + j*delta < 0
                last = max(last, K + r + j * P)
    for n in range(K - 1, -1, -1):
        if f.eval(n) > g.eval(n):
            last = max(last, n)
            break
    return DominanceVerdict(True, last + 1, "")


def diag_to_increasing(f: EPSeq) -> EPSeq:
    """Embed a value-periodic stream into the strictly increasing ones via
    g(n) = f(0) + ... + f(n) + n.  The image has increment cycle
    [c + 1 for c in f.cycle], so it stays finitely described."""
    f = normalize(f)
    if f.tail is INCREMENTS:
        raise NotIncreasingError(
            "diagonal embedding needs an eventually periodic value stream"
        )
    prefix = [f.prefix[0]]
    for i in range(1, len(f.prefix)):
        prefix.append(prefix[-1] + f.prefix[i] + 1)
    cycle = tuple(c + 1 for c in f.cycle)
    return normalize(EPSeq(tuple(prefix), INCREMENTS, cycle))


def undiag(g: EPSeq) -> EPSeq:
    """Inverse of diag_to_increasing: f(0) = g(0), f(n) = g(n) - g(n-1) - 1."""
    g = normalize(g)
    if not g.is_strictly_increasing():
        raise NotIncreasingError("undiag needs a strictly increasing sequence")
    prefix = [g.prefix[0]]
    for i in range(1, len(g.prefix)):
        prefix.append(g.prefix[i] - g.prefix[i - 1] - 1)
    cycle = tuple(c - 1 for c in g.cycle)
    return normalize(EPSeq(tuple(prefix), VALUES, cycle))


@dataclass(frozen=True)
class EPSet:
    """A subset of the naturals with eventually periodic characteristic
    bits.  Canonicalized on construction, so equality is exact set
    equality.  Infinite iff the cycle carries a 1."""

    prefix: tuple[int, ...] = ()
    cycle: tuple[int, ...] = (0,)

    def __post_init__(self) -> None:
        prefix = tuple(self.prefix)
        cycle = tuple(self.cycle)
        if not cycle:
            raise ValueError("EPSet cycle must be nonempty")
        for b in chain(prefix, cycle):
            if b not in (0, 1):
                raise ValueError(f"EPSet entries must be bits, got {b!r}")
        d = _minimal_period(cycle)
        cycle = cycle[:d]
        prefix = list(prefix)
        while prefix and prefix[-1] == cycle[-1]:
            prefix.pop()
            cycle = (cycle[-1],) + cycle[:-1]
        object.__setattr__(self, "prefix", tuple(prefix))
        object.__setattr__(self, "cycle", cycle)

    # -- basic queries ----------------------------------------------------

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        k = len(self.prefix)
        if n < k:
            return bool(self.prefix[n])
        return bool(self.cycle[(n - k) % len(self.cycle)])

    __contains__ = contains

    @property
    def is_infinite(self) -> bool:
        return 1 in self.cycle

    @property
    def is_empty(self) -> bool:
        return 1 not in self.cycle and 1 not in self.prefix

    @cached_property
    def _cycle_ones(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.cycle) if b)

    @cached_property
    def _prefix_ones(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.prefix) if b)

    def finite_elements(self) -> tuple[int, ...] | None:
        """All elements when the set is finite, else None."""
        if self.is_infinite:
            return None
        return self._prefix_ones

    def bits(self, count: int) -> list[int]:
        return list(islice(chain(self.prefix, cycled(self.cycle)), count))

    def elements_below(self, bound: int) -> list[int]:
        return [n for n, b in enumerate(self.bits(bound)) if b]

    def next_element(self, x: int) -> int | None:
        """Smallest element >= x, or None when the set ends before x."""
        x = max(x, 0)
        k = len(self.prefix)
        for n in range(x, k):
            if self.prefix[n]:
                return n
        if not self._cycle_ones:
            return None
        d = len(self.cycle)
        start = max(x, k)
        off = (start - k) % d
        best = min((o - off) % d for o in self._cycle_ones)
        return start + best

    def nth_element(self, i: int) -> int:
        """The i-th element (0-based) of the increasing enumeration."""
        if i < 0:
            raise IndexError(i)
        pre = self._prefix_ones
        if i < len(pre):
            return pre[i]
        ones = self._cycle_ones
        if not ones:
            raise IndexError(f"set has only {len(pre)} elements")
        q, r = divmod(i - len(pre), len(ones))
        return len(self.prefix) + q * len(self.cycle) + ones[r]

    # -- pointwise algebra -------------------------------------------------

    def _pointwise(self, other: EPSet, op: Callable[[int, int], int]) -> EPSet:
        K = max(len(self.prefix), len(other.prefix))
        L = lcm(len(self.cycle), len(other.cycle))
        prefix = tuple(
            op(int(n in self), int(n in other)) for n in range(K)
        )
        cyc = tuple(
            op(int((K + i) in self), int((K + i) in other)) for i in range(L)
        )
        return EPSet(prefix, cyc)

    def union(self, other: EPSet) -> EPSet:
        return self._pointwise(other, lambda a, b: a | b)

    def intersection(self, other: EPSet) -> EPSet:
        return self._pointwise(other, lambda a, b: a & b)

    def difference(self, other: EPSet) -> EPSet:
        return self._pointwise(other, lambda a, b: a & (1 - b))

    def complement(self) -> EPSet:
        return EPSet(
            tuple(1 - b for b in self.prefix), tuple(1 - b for b in self.cycle)
        )

    # -- stream surgery (used by witness verification) ----------------------

    def drop(self, n: int) -> EPSet:
        """The bit stream with the first n bits removed."""
        if n <= 0:
            return self
        k = len(self.prefix)
        if n <= k:
            return EPSet(self.prefix[n:], self.cycle)
        r = (n - k) % len(self.cycle)
        return EPSet((), self.cycle[r:] + self.cycle[:r])

    def shift_right(self, n: int, fill: int = 0) -> EPSet:
        """Prepend n fill bits."""
        if n <= 0:
            return self
        return EPSet((fill,) * n + self.prefix, self.cycle)

    def with_prefix_override(self, bits: Iterable[int]) -> EPSet:
        """Replace the first len(bits) entries of the stream."""
        bits = tuple(bits)
        rest = self.drop(len(bits))
        return EPSet(bits + rest.prefix, rest.cycle)

    def restrict_ge(self, x: int) -> EPSet:
        """Zero out all bits below x."""
        if x <= 0:
            return self
        head = (0,) * min(x, len(self.prefix))
        if x <= len(self.prefix):
            return EPSet(head + self.prefix[x:], self.cycle)
        k = len(self.prefix)
        pad = tuple(0 for _ in range(x - k))
        tail = self.drop(x)
        return EPSet(head + pad + tail.prefix, tail.cycle)

    def all_ones_from(self) -> int | None:
        """Least t with every bit at index >= t equal to 1, or None when
        zeros recur forever."""
        if 0 in self.cycle:
            return None
        last_zero = -1
        for n, b in enumerate(self.prefix):
            if not b:
                last_zero = n
        return last_zero + 1

    def first_zero_at_or_after(self, t: int) -> int | None:
        t = max(t, 0)
        k = len(self.prefix)
        for n in range(t, k):
            if not self.prefix[n]:
                return n
        if 0 not in self.cycle:
            return None
        d = len(self.cycle)
        start = max(t, k)
        off = (start - k) % d
        best = min((i - off) % d for i, b in enumerate(self.cycle) if not b)
        return start + best

    # -- constructors -------------------------------------------------------

    @classmethod
    def naturals(cls) -> EPSet:
        return cls((), (1,))

    @classmethod
    def empty(cls) -> EPSet:
        return cls((), (0,))

    @classmethod
    def from_elements(cls, elements: Iterable[int]) -> EPSet:
        elements = sorted(set(elements))
        if not elements:
            return cls.empty()
        bits = [0] * (elements[-1] + 1)
        for e in elements:
            if e < 0:
                raise ValueError("elements must be naturals")
            bits[e] = 1
        return cls(tuple(bits), (0,))

    def __str__(self) -> str:
        pre = " ".join(map(str, self.prefix))
        cyc = " ".join(map(str, self.cycle))
        return f"prefix {pre} ; cycle {cyc}"


def range_encode(g: EPSeq) -> EPSet:
    """Characteristic set of {g(n) : n}, for strictly increasing g.  The
    output cycle length equals the sum of g's increment cycle."""
    g = normalize(g)
    if not g.is_strictly_increasing():
        raise NotIncreasingError("range_encode needs a strictly increasing sequence")
    anchor = g.prefix[-1]
    prefix = [0] * anchor
    for v in g.prefix[:-1]:
        prefix[v] = 1
    total = g.cycle_total
    cyc = [0] * total
    for partial in g._partials[:-1]:
        cyc[partial] = 1
    return EPSet(tuple(prefix), tuple(cyc))


def increasing_enum(a: EPSet) -> EPSeq:
    """Strictly increasing enumeration of an infinite set; exact inverse of
    range_encode on normal forms."""
    if not a.is_infinite:
        raise FiniteSetError("cannot enumerate a finite set as an infinite sequence")
    k = len(a.prefix)
    head = list(a._prefix_ones)
    ones = a._cycle_ones
    q = len(a.cycle)
    first_cyclic = k + ones[0]
    prefix = head + [first_cyclic]
    gaps = [ones[i + 1] - ones[i] for i in range(len(ones) - 1)]
    gaps.append(q - ones[-1] + ones[0])
    return normalize(EPSeq(tuple(prefix), INCREMENTS, tuple(gaps)))


def first_index_at_least(g: EPSeq, x: int) -> int:
    """Least n with g(n) >= x, for strictly increasing g."""
    g_n = normalize(g)
    if not g_n.is_strictly_increasing():
        raise NotIncreasingError("first_index_at_least needs strict increase")
    if x <= g_n.prefix[0]:
        return 0
    pre = g_n.prefix
    if x <= pre[-1]:
        return bisect_left(pre, x)
    k = len(pre)
    p = len(g_n.cycle)
    total = g_n.cycle_total
    q = max(0, (x - pre[-1]) // total - 1)
    j = q * p
    v = pre[-1] + q * total
    while v < x:
        v += g_n.cycle[j % p]
        j += 1
    return k - 1 + j


def membership_stream(member_of: EPSet, v: EPSeq) -> EPSet:
    """The bit stream j -> [v(j) in member_of], for strictly increasing v.

    Beyond the alignment point the value v(j) advances by a fixed amount
    per cycle of v, so its residue against the set's cycle orbits with a
    computable period; one materialized window pins the stream exactly.
    """
    v = normalize(v)
    if not v.is_strictly_increasing():
        raise NotIncreasingError("membership_stream needs strict increase")
    q = len(member_of.cycle)
    j0 = max(len(v.prefix) - 1, first_index_at_least(v, len(member_of.prefix)))
    period = len(v.cycle) * (q // gcd(v.cycle_total, q))
    prefix = tuple(int(v.eval(j) in member_of) for j in range(j0))
    cyc = tuple(int(v.eval(j) in member_of) for j in range(j0, j0 + period))
    return EPSet(prefix, cyc)


class LazySeq:
    """A memoizing on-demand sequence of naturals.

    Used for constructions that escape the finitely-described class (for
    example boundary recurrences).  Values are produced by an iterator and
    cached; reads are meant for a single consumer at a time.
    """

    def __init__(self, source: Iterator[int] | Iterable[int]):
        self._it = iter(source)
        self._memo: list[int] = []

    def _extend_to(self, n: int) -> None:
        while len(self._memo) <= n:
            self._memo.append(next(self._it))

    def eval(self, n: int) -> int:
        if n < 0:
            raise ValueError("index must be a natural")
        self._extend_to(n)
        return self._memo[n]

    def values(self, count: int) -> list[int]:
        if count > 0:
            self._extend_to(count - 1)
        return self._memo[:count]

    def values_until(self, value_cap: int, max_count: int) -> list[int]:
        """Materialize values while they stay <= value_cap, up to max_count
        entries, always including the first value beyond the cap when it
        exists within the count budget."""
        while len(self._memo) < max_count:
            if self._memo and self._memo[-1] > value_cap:
                break
            self._memo.append(next(self._it))
        return self._memo[: max_count]


Boundary = EPSeq | LazySeq
