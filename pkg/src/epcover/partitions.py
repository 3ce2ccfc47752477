"""Partitions of an index set into finite blocks.

A BlockPartition is an on-demand block generator over an explicit domain.
Two certificate shapes describe the blocks finitely and unlock exact
(rather than horizon-bounded) reasoning:

* EnumCertificate: block n is fed by a fixed list of strictly increasing
  enumerations, generator i contributing its (first_index + n -
  first_block)-th element once n >= first_block, with finitely many
  explicit head blocks in front.  This is the shape the diagonal grouping
  construction produces, and it is closed under the max-merge rule and
  under absorbing leftover indices.

* IntervalCertificate: block n is [b(n), b(n+1)) for a strictly
  increasing boundary, with the initial segment [0, b(1)) folded into
  block 0.  Boundaries may be finitely described or on-demand; only the
  former supports exact verification.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import DomainOverlapError, NotAPartitionError
from .sequences import (
    INCREMENTS,
    Boundary,
    EPSeq,
    EPSet,
    increasing_enum,
    range_encode,
)

DEFAULT_HORIZON = 10_000


@dataclass(frozen=True)
class GenEntry:
    enum: EPSeq  # strictly increasing enumeration of the indices it feeds
    first_block: int
    first_index: int

    def element(self, n: int) -> int | None:
        if n < self.first_block:
            return None
        return self.enum.eval(self.first_index + n - self.first_block)

    def fed_indices(self) -> EPSet:
        """The set of indices this entry distributes over the blocks."""
        full = range_encode(self.enum)
        if self.first_index == 0:
            return full
        return full.restrict_ge(self.enum.eval(self.first_index))


@dataclass(frozen=True)
class EnumCertificate:
    gens: tuple[GenEntry, ...]
    head: tuple[tuple[int, ...], ...] = ()

    def block(self, n: int) -> tuple[int, ...]:
        if n < len(self.head):
            return self.head[n]
        out = []
        for gen in self.gens:
            e = gen.element(n)
            if e is not None:
                out.append(e)
        return tuple(sorted(out))


@dataclass(frozen=True)
class IntervalCertificate:
    boundary: Boundary  # strictly increasing; b(0) may exceed 0

    @property
    def is_exact(self) -> bool:
        return isinstance(self.boundary, EPSeq)

    def block(self, n: int) -> tuple[int, ...]:
        lo = 0 if n == 0 else self.boundary.eval(n)
        hi = self.boundary.eval(n + 1)
        return tuple(range(lo, hi))


Certificate = EnumCertificate | IntervalCertificate


class BlockPartition:
    """A partition of `domain` into finite blocks, block n on demand."""

    def __init__(
        self,
        domain: EPSet,
        block_fn: Callable[[int], tuple[int, ...]],
        num_blocks: int | None = None,
        certificate: Certificate | None = None,
    ):
        self.domain = domain
        self._block_fn = block_fn
        self.num_blocks = num_blocks
        self.certificate = certificate

    def block(self, n: int) -> tuple[int, ...]:
        if n < 0:
            raise IndexError(n)
        if self.num_blocks is not None and n >= self.num_blocks:
            return ()
        return tuple(self._block_fn(n))

    def blocks(self, count: int) -> Iterator[tuple[int, ...]]:
        for n in range(count):
            yield self.block(n)

    def blocks_covering(self, horizon: int, slack: int = 64):
        """Materialize blocks until [0, horizon) cap domain is covered.

        Returns (blocks, covered_all) where covered_all reports whether the
        window really was exhausted before the block scan budget ran out.
        """
        want = set(self.domain.elements_below(horizon))
        out = []
        n = 0
        limit = self.num_blocks
        while want and (limit is None or n < limit):
            if limit is None and n > 4 * horizon + slack:
                return out, False
            blk = self.block(n)
            out.append(blk)
            want.difference_update(blk)
            n += 1
        return out, not want

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_explicit_blocks(cls, blocks: Sequence[Sequence[int]]) -> BlockPartition:
        blocks = [tuple(sorted(b)) for b in blocks]
        seen: set[int] = set()
        for b in blocks:
            for e in b:
                if e in seen:
                    raise NotAPartitionError(f"index {e} appears in two blocks")
                seen.add(e)
        domain = EPSet.from_elements(seen)
        return cls(domain, lambda n: blocks[n] if n < len(blocks) else (),
                   num_blocks=len(blocks))

    @classmethod
    def from_interval_boundary(cls, boundary: Boundary) -> BlockPartition:
        cert = IntervalCertificate(boundary)
        return cls(EPSet.naturals(), cert.block, None, cert)

    @classmethod
    def from_enum_certificate(
        cls, cert: EnumCertificate, domain: EPSet | None = None
    ) -> BlockPartition:
        if domain is None:
            domain = EPSet.empty()
            for gen in cert.gens:
                domain = domain.union(gen.fed_indices())
            head_extra = _head_extras(cert)
            if head_extra:
                domain = domain.union(EPSet.from_elements(head_extra))
        return cls(domain, cert.block, None, cert)

    @classmethod
    def from_widths(
        cls, prefix_widths: Sequence[int], cycle_widths: Sequence[int]
    ) -> BlockPartition:
        """Consecutive blocks with eventually periodic widths."""
        widths = list(prefix_widths) + list(cycle_widths)
        if any(w < 1 for w in widths) or not cycle_widths:
            raise ValueError("widths must be positive and the cycle nonempty")
        bounds = [0]
        for w in prefix_widths:
            bounds.append(bounds[-1] + w)
        boundary = EPSeq(tuple(bounds), INCREMENTS, tuple(cycle_widths))
        return cls.from_interval_boundary(boundary)


def _head_extras(cert: EnumCertificate) -> list[int]:
    """Head-block elements that no generator accounts for."""
    extras = []
    for n, blk in enumerate(cert.head):
        gen_elems = set()
        for gen in cert.gens:
            e = gen.element(n)
            if e is not None:
                gen_elems.add(e)
        extras.extend(e for e in blk if e not in gen_elems)
    return extras


def validate_partition(p: BlockPartition, horizon: int = DEFAULT_HORIZON) -> None:
    """Raise NotAPartitionError when blocks overlap or miss a domain index.

    Exact for enum certificates and finitely described interval boundaries;
    otherwise checks the window [0, horizon).
    """
    cert = p.certificate
    if isinstance(cert, EnumCertificate):
        _validate_enum_certificate(p, cert)
        return
    if isinstance(cert, IntervalCertificate) and cert.is_exact:
        b = cert.boundary
        if not b.is_strictly_increasing():
            raise NotAPartitionError("interval boundary is not strictly increasing")
        if p.domain != EPSet.naturals():
            raise NotAPartitionError("interval partition must cover all indices")
        return
    _validate_by_scan(p, horizon)


def _validate_enum_certificate(p: BlockPartition, cert: EnumCertificate) -> None:
    fed = []
    for gen in cert.gens:
        if not gen.enum.is_strictly_increasing():
            raise NotAPartitionError("generator enumeration is not increasing")
        fed.append(gen.fed_indices())
    union = EPSet.empty()
    for i, s in enumerate(fed):
        if not union.intersection(s).is_empty:
            raise NotAPartitionError("generator index ranges overlap")
        union = union.union(s)
    # head blocks must extend the generated elements consistently
    extras: set[int] = set()
    for n, blk in enumerate(cert.head):
        gen_elems = {gen.element(n) for gen in cert.gens}
        gen_elems.discard(None)
        if not gen_elems <= set(blk):
            raise NotAPartitionError(f"head block {n} drops generated elements")
        for e in blk:
            if e in gen_elems:
                continue
            if e in extras or e in union:
                raise NotAPartitionError(f"index {e} appears in two blocks")
            extras.add(e)
    if extras:
        union = union.union(EPSet.from_elements(extras))
    if union != p.domain:
        raise NotAPartitionError("blocks do not cover the declared domain")


def _validate_by_scan(p: BlockPartition, horizon: int) -> None:
    seen: set[int] = set()
    want = set(p.domain.elements_below(horizon))
    n = 0
    while want:
        if p.num_blocks is not None and n >= p.num_blocks:
            raise NotAPartitionError(f"index {min(want)} missing from all blocks")
        if p.num_blocks is None and n > 4 * horizon + 64:
            raise NotAPartitionError(
                f"index {min(want)} not found in blocks 0..{n - 1}"
            )
        for e in p.block(n):
            if e in seen:
                raise NotAPartitionError(f"index {e} appears in two blocks")
            if e not in p.domain:
                raise NotAPartitionError(f"index {e} is outside the domain")
            seen.add(e)
        want -= seen
        n += 1
    if p.num_blocks is not None:
        for m in range(n, p.num_blocks):
            for e in p.block(m):
                if e in seen:
                    raise NotAPartitionError(f"index {e} appears in two blocks")
                if e not in p.domain:
                    raise NotAPartitionError(f"index {e} is outside the domain")
                seen.add(e)


def merge_partitions(parts: Sequence[BlockPartition]) -> BlockPartition:
    """Merge partitions over pairwise disjoint domains into one partition
    of the union domain: merged block n is the union of constituent blocks
    G^i_j over all pairs with max(i, j) = n."""
    parts = list(parts)
    m = len(parts)
    domain = EPSet.empty()
    for i, p in enumerate(parts):
        if not domain.intersection(p.domain).is_empty:
            raise DomainOverlapError("partition domains overlap")
        domain = domain.union(p.domain)
    if not parts:
        return BlockPartition.from_explicit_blocks([])

    def merged_block(n: int) -> tuple[int, ...]:
        out: list[int] = []
        for i in range(min(n, m)):
            out.extend(parts[i].block(n))
        if n < m:
            for j in range(n + 1):
                out.extend(parts[n].block(j))
        return tuple(sorted(out))

    num_blocks = None
    if all(p.num_blocks is not None for p in parts):
        num_blocks = max(
            [m] + [p.num_blocks for p in parts]  # type: ignore[list-item]
        )

    cert = _merge_certificates(parts, merged_block)
    return BlockPartition(domain, merged_block, num_blocks, cert)


def _merge_certificates(
    parts: Sequence[BlockPartition], merged_block
) -> EnumCertificate | None:
    certs = []
    for p in parts:
        if not isinstance(p.certificate, EnumCertificate):
            return None
        certs.append(p.certificate)
    m = len(parts)
    gens: list[GenEntry] = []
    start = m
    for i, cert in enumerate(certs):
        start = max(start, len(cert.head) + i)
        for gen in cert.gens:
            fb = max(gen.first_block, i)
            gens.append(
                GenEntry(gen.enum, fb, gen.first_index + fb - gen.first_block)
            )
            start = max(start, fb)
    head = tuple(merged_block(n) for n in range(start))
    return EnumCertificate(tuple(gens), head)


def absorb_into_partition(p: BlockPartition, leftover: EPSet) -> BlockPartition:
    """Extend a partition so block n additionally holds the n-th element of
    `leftover` (increasing order).  Blocks stay finite; when a finite
    partition runs out of blocks, fresh singleton blocks are appended."""
    if not p.domain.intersection(leftover).is_empty:
        raise DomainOverlapError("leftover indices overlap the partition domain")
    if leftover.is_empty:
        return p
    domain = p.domain.union(leftover)

    if leftover.is_infinite:
        if p.num_blocks is not None:
            raise DomainOverlapError(
                "cannot absorb an infinite set into finitely many blocks"
            )
        enum = increasing_enum(leftover)

        def block_fn(n: int) -> tuple[int, ...]:
            return tuple(sorted(p.block(n) + (enum.eval(n),)))

        cert = None
        if isinstance(p.certificate, EnumCertificate):
            old = p.certificate
            head = tuple(
                tuple(sorted(blk + (enum.eval(n),)))
                for n, blk in enumerate(old.head)
            )
            cert = EnumCertificate(old.gens + (GenEntry(enum, 0, 0),), head)
        return BlockPartition(domain, block_fn, None, cert)

    elems = leftover.finite_elements() or ()

    def block_fn_fin(n: int) -> tuple[int, ...]:
        blk = p.block(n)
        if n < len(elems):
            blk = tuple(sorted(blk + (elems[n],)))
        return blk

    num_blocks = p.num_blocks
    if num_blocks is not None:
        num_blocks = max(num_blocks, len(elems))
    cert = None
    if isinstance(p.certificate, EnumCertificate):
        old = p.certificate
        n_head = max(len(old.head), len(elems))
        head = tuple(block_fn_fin(n) for n in range(n_head))
        cert = EnumCertificate(old.gens, head)
    return BlockPartition(domain, block_fn_fin, num_blocks, cert)
