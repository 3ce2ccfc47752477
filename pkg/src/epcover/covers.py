"""Finite point spaces, eventually periodic covers, and groupability.

A cover is known only through its traces: for each index n the subset of
points that member n contains.  Traces repeat eventually, so everything
about the cover is decidable exactly:

* largeness (every point in infinitely many members),
* trace-equality classes over any index set,
* the one-step extraction of infinite classes with its diagonal grouping,
* the refinement loop that iterates the one-step until no infinite class
  remains, merging the per-step groupings and absorbing the finite residue
  so the final witness partitions every index,
* witness verification (exact against certificates, else on a window),
* transport of covers and witnesses along superspace extension and
  point-map pullback.

Over a finite point space the refinement provably stops within
len(points) + 2 steps: finitely many trace values force an infinite class
whenever infinitely many indices cover a nonempty point set, so each
effective step strips at least one point, and the step after the space
empties sweeps whatever infinite index set is left into one class.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Mapping

from . import _kernels
from .errors import (
    DomainOverlapError,
    InternalTerminationError,
    NotAPartitionError,
    NotLargeError,
    NotSurjectiveError,
)
from .partitions import (
    DEFAULT_HORIZON,
    BlockPartition,
    EnumCertificate,
    GenEntry,
    IntervalCertificate,
    absorb_into_partition,
    merge_partitions,
    validate_partition,
)
from .sequences import EPSet, increasing_enum, membership_stream
from .slalom import interval_hit_stream


@dataclass(frozen=True)
class PointSpace:
    points: tuple[str, ...]
    realization: Mapping[str, EPSet] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise ValueError("point space must be nonempty")
        if len(set(self.points)) != len(self.points):
            raise ValueError("point ids must be unique")
        if self.realization is not None:
            for p, s in self.realization.items():
                if p not in self.points:
                    raise ValueError(f"realization for unknown point {p!r}")
                if not s.is_infinite:
                    raise ValueError(f"realization of {p!r} must be infinite")


@dataclass(frozen=True)
class EPCover:
    """A countable cover given by its eventually periodic trace sequence."""

    space: PointSpace
    prefix: tuple[frozenset[str], ...]
    cycle: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "prefix", tuple(frozenset(t) for t in self.prefix)
        )
        object.__setattr__(self, "cycle", tuple(frozenset(t) for t in self.cycle))
        if not self.cycle:
            raise ValueError("cover cycle must be nonempty")
        pts = set(self.space.points)
        for t in self.prefix + self.cycle:
            if not t <= pts:
                raise ValueError(f"trace {sorted(t)} mentions unknown points")

    def trace(self, n: int) -> frozenset[str]:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def membership_set(self, point: str) -> EPSet:
        """Indices of the members containing the point."""
        return EPSet(
            tuple(int(point in t) for t in self.prefix),
            tuple(int(point in t) for t in self.cycle),
        )

    def masks(self, horizon: int) -> list[int]:
        """Traces for n < horizon as bitmasks in point order."""
        order = {p: i for i, p in enumerate(self.space.points)}
        pre = [sum(1 << order[x] for x in t) for t in self.prefix]
        cyc = [sum(1 << order[x] for x in t) for t in self.cycle]
        if horizon <= len(pre):
            return pre[:horizon]
        reps = (horizon - len(pre)) // len(cyc) + 1
        return (pre + cyc * reps)[:horizon]


@dataclass(frozen=True)
class LargenessReport:
    large: Mapping[str, bool]
    finite_multiplicity_points: tuple[tuple[str, int], ...]

    @property
    def all_large(self) -> bool:
        return all(self.large.values())


def is_large(c: EPCover) -> LargenessReport:
    """A point lies in infinitely many members iff it appears in some
    cycle trace; otherwise its multiplicity is its prefix count."""
    large = {}
    finite = []
    for p in c.space.points:
        in_cycle = any(p in t for t in c.cycle)
        large[p] = in_cycle
        if not in_cycle:
            finite.append((p, sum(1 for t in c.prefix if p in t)))
    return LargenessReport(large, tuple(finite))


@dataclass(frozen=True)
class TraceClass:
    trace: frozenset[str]
    indices: EPSet
    infinite: bool
    min_index: int


def equiv_classes(
    c: EPCover, sub: Iterable[str], idx: EPSet
) -> list[TraceClass]:
    """Classes of `idx` under equal trace restricted to `sub`, each with an
    exactly described index set, ordered by least index."""
    sub = frozenset(sub)
    K = max(len(c.prefix), len(idx.prefix))
    P = lcm(len(c.cycle), len(idx.cycle))
    residues: dict[frozenset[str], list[int]] = {}
    heads: dict[frozenset[str], list[int]] = {}
    for r in range(P):
        n = K + r
        if n in idx:
            key = c.trace(n) & sub
            residues.setdefault(key, []).append(r)
    for n in range(K):
        if n in idx:
            key = c.trace(n) & sub
            heads.setdefault(key, []).append(n)
    classes = []
    for key in set(residues) | set(heads):
        rs = residues.get(key, [])
        hs = heads.get(key, [])
        prefix_bits = [0] * K
        for n in hs:
            prefix_bits[n] = 1
        cycle_bits = [0] * P
        for r in rs:
            cycle_bits[r] = 1
        if not rs:
            cycle_bits = [0]
        indices = EPSet(tuple(prefix_bits), tuple(cycle_bits))
        min_index = min(hs) if hs else K + rs[0]
        classes.append(TraceClass(key, indices, bool(rs), min_index))
    classes.sort(key=lambda cl: cl.min_index)
    return classes


@dataclass(frozen=True)
class OneStepResult:
    A: EPSet
    V: frozenset[str]
    grouping: BlockPartition
    residual_idx: EPSet
    classes: tuple[TraceClass, ...]


def onestep(c: EPCover, sub: Iterable[str], idx: EPSet) -> OneStepResult:
    """Extract the union A of infinite trace classes of `idx` over `sub`,
    the points V they reach, and the diagonal grouping of A: with the
    infinite classes ordered by least index and each enumerated
    increasingly, block k takes one element from each of the first k + 1
    classes, stepping every class one element further per block.

    Requires the restriction of the cover to (sub, idx) to be a large
    cover of sub; the points reached by no infinite class are exactly the
    violations."""
    sub = frozenset(sub)
    classes = equiv_classes(c, sub, idx)
    infinite = [cl for cl in classes if cl.infinite]
    covered = frozenset().union(*(cl.trace for cl in infinite)) if infinite else frozenset()
    missing = sorted(sub - covered)
    if missing:
        raise NotLargeError(missing)
    A = EPSet.empty()
    for cl in infinite:
        A = A.union(cl.indices)
    gens = tuple(
        GenEntry(increasing_enum(cl.indices), first_block=i, first_index=0)
        for i, cl in enumerate(infinite)
    )
    if gens:
        cert = EnumCertificate(gens)
        grouping = BlockPartition.from_enum_certificate(cert, A)
    else:
        grouping = BlockPartition.from_explicit_blocks([])
    return OneStepResult(
        A=A,
        V=covered,
        grouping=grouping,
        residual_idx=idx.difference(A),
        classes=tuple(classes),
    )


@dataclass(frozen=True, eq=False)
class GroupabilityWitness:
    """A block partition of cover indices plus, per point, the least block
    from which every later block's members reach the point."""

    partition: BlockPartition
    thresholds: Mapping[str, int]


@dataclass(frozen=True)
class RefinementStep:
    index: int
    sub: frozenset[str]
    B: EPSet
    A: EPSet
    V: frozenset[str]
    grouping: BlockPartition | None


@dataclass(frozen=True)
class RefinementTrace:
    steps: tuple[RefinementStep, ...]

    @property
    def step_count(self) -> int:
        return len(self.steps)


@dataclass(frozen=True, eq=False)
class GroupCoverResult:
    witness: GroupabilityWitness
    trace: RefinementTrace


def group_cover(c: EPCover) -> GroupCoverResult:
    """Run the refinement loop: strip the points reached by infinite trace
    classes, restrict to the leftover indices, and repeat until no
    infinite class remains; merge the per-step groupings with the max-rule
    and absorb the finite index residue so the witness partitions every
    index.  Thresholds are the exact minima for the final partition."""
    report = is_large(c)
    if not report.all_large:
        raise NotLargeError(p for p, ok in report.large.items() if not ok)
    X = frozenset(c.space.points)
    B = EPSet.naturals()
    V: frozenset[str] = frozenset()
    steps: list[RefinementStep] = []
    groupings: list[BlockPartition] = []
    leftover: EPSet | None = None
    for stepno in range(1, len(c.space.points) + 3):
        X = X - V
        res = onestep(c, X, B)
        if res.A.is_empty:
            steps.append(
                RefinementStep(stepno, X, B, res.A, res.V, None)
            )
            leftover = B
            break
        steps.append(RefinementStep(stepno, X, B, res.A, res.V, res.grouping))
        groupings.append(res.grouping)
        B = res.residual_idx
        V = res.V
    if leftover is None:
        raise InternalTerminationError(
            f"refinement still active after {len(c.space.points) + 2} steps"
        )
    merged = merge_partitions(groupings)
    partition = absorb_into_partition(merged, leftover)
    thresholds = {}
    for p in c.space.points:
        t = _exact_point_threshold(c.membership_set(p), partition)
        if t is None:
            raise InternalTerminationError(
                f"constructed witness leaves {p!r} uncovered infinitely often"
            )
        thresholds[p] = t
    witness = GroupabilityWitness(partition, thresholds)
    return GroupCoverResult(witness, RefinementTrace(tuple(steps)))


# -- witness verification ----------------------------------------------------


def _hit_stream(member_of: EPSet, partition: BlockPartition) -> EPSet | None:
    """Bit stream n -> [some index in block n belongs to member_of], exact
    when the partition carries a usable certificate, else None."""
    cert = partition.certificate
    if isinstance(cert, EnumCertificate):
        hits = EPSet.empty()
        for gen in cert.gens:
            stream = membership_stream(member_of, gen.enum)
            hits = hits.union(
                stream.drop(gen.first_index).shift_right(gen.first_block)
            )
        if cert.head:
            head_bits = [
                int(any(k in member_of for k in blk)) for blk in cert.head
            ]
            hits = hits.with_prefix_override(head_bits)
        return hits
    if isinstance(cert, IntervalCertificate) and cert.is_exact:
        hits = interval_hit_stream(member_of, cert.boundary)
        nxt = member_of.next_element(0)
        first = int(nxt is not None and nxt < cert.boundary.eval(1))
        return hits.with_prefix_override([first])
    return None


def _exact_point_threshold(
    member_of: EPSet, partition: BlockPartition
) -> int | None:
    hits = _hit_stream(member_of, partition)
    if hits is None:
        raise NotAPartitionError("partition carries no exact certificate")
    return hits.all_ones_from()


@dataclass(frozen=True)
class PointVerdict:
    claimed: int
    minimal_threshold: int | None
    failure_index: int | None

    @property
    def ok(self) -> bool:
        return self.failure_index is None


@dataclass(frozen=True)
class WitnessReport:
    per_point: Mapping[str, PointVerdict]
    exact: bool
    horizon: int | None

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.per_point.values())


def verify_witness(
    c: EPCover, w: GroupabilityWitness, horizon: int | None = None
) -> WitnessReport:
    """Check partition well-formedness and every claimed threshold.

    Exact when the partition carries a certificate and no horizon is
    forced; otherwise blocks are materialized to cover [0, horizon) and
    the verdict is relative to that window.  Reports, per point, the least
    valid threshold and the first violating block index at or after the
    claimed threshold, if any."""
    for p in c.space.points:
        if p not in w.thresholds:
            raise NotAPartitionError(f"witness lacks a threshold for {p!r}")
    if horizon is None and _has_exact_certificate(w.partition):
        validate_partition(w.partition)
        per_point = {}
        for p in c.space.points:
            hits = _hit_stream(c.membership_set(p), w.partition)
            assert hits is not None
            claimed = w.thresholds[p]
            minimal = hits.all_ones_from()
            if minimal is None or claimed < minimal:
                fail = hits.first_zero_at_or_after(claimed)
            else:
                fail = None
            per_point[p] = PointVerdict(claimed, minimal, fail)
        return WitnessReport(per_point, exact=True, horizon=None)
    h = horizon or DEFAULT_HORIZON
    validate_partition(w.partition, h)
    blocks, covered = w.partition.blocks_covering(h)
    if not covered:
        raise NotAPartitionError(f"blocks do not reach all indices below {h}")
    top = max((max(b) for b in blocks if b), default=0) + 1
    masks = c.masks(max(h, top))
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
    per_point = {}
    for i, p in enumerate(c.space.points):
        claimed = w.thresholds[p]
        minimal = mins[i]
        if claimed < minimal:
            member = c.membership_set(p)
            fail = next(
                (
                    n
                    for n in range(claimed, len(blocks))
                    if not any(k in member for k in blocks[n])
                ),
                None,
            )
        else:
            fail = None
        per_point[p] = PointVerdict(claimed, minimal, fail)
    return WitnessReport(per_point, exact=False, horizon=h)


def _has_exact_certificate(partition: BlockPartition) -> bool:
    cert = partition.certificate
    if isinstance(cert, EnumCertificate):
        return True
    return isinstance(cert, IntervalCertificate) and cert.is_exact


def absorb_leftovers(w: GroupabilityWitness, leftover: EPSet) -> GroupabilityWitness:
    """Fold leftover indices into the witness: block n additionally
    receives the n-th leftover element.  Coverage only improves, so the
    thresholds carry over unchanged."""
    return GroupabilityWitness(
        absorb_into_partition(w.partition, leftover), dict(w.thresholds)
    )


# -- transport ----------------------------------------------------------------


def extend_to_superspace(c: EPCover, extra: Iterable[str]) -> EPCover:
    """Extend every member by a disjoint point set: each trace gains all of
    the new points.  Witnesses for the result restrict to witnesses for the
    original cover with unchanged thresholds."""
    extra = tuple(extra)
    overlap = set(extra) & set(c.space.points)
    if overlap:
        raise DomainOverlapError(f"points already present: {sorted(overlap)}")
    if not extra:
        return c
    space = PointSpace(c.space.points + extra)
    add = frozenset(extra)
    return EPCover(
        space,
        tuple(t | add for t in c.prefix),
        tuple(t | add for t in c.cycle),
    )


def restrict_witness(
    w: GroupabilityWitness, points: Iterable[str]
) -> GroupabilityWitness:
    pts = set(points)
    return GroupabilityWitness(
        w.partition, {p: t for p, t in w.thresholds.items() if p in pts}
    )


def pullback_cover(
    point_map: Mapping[str, str],
    c: EPCover,
    domain_space: PointSpace | None = None,
) -> EPCover:
    """Preimage cover along a point map onto the cover's space: the trace
    of index n is the preimage of the original trace."""
    if domain_space is None:
        domain_space = PointSpace(tuple(sorted(point_map)))
    for x in domain_space.points:
        if x not in point_map:
            raise ValueError(f"map undefined on {x!r}")
        if point_map[x] not in c.space.points:
            raise ValueError(f"map sends {x!r} outside the target space")
    hit = set(point_map[x] for x in domain_space.points)
    missing = [y for y in c.space.points if y not in hit]
    if missing:
        raise NotSurjectiveError(missing)

    def pre(t: frozenset[str]) -> frozenset[str]:
        return frozenset(x for x in domain_space.points if point_map[x] in t)

    return EPCover(
        domain_space, tuple(pre(t) for t in c.prefix), tuple(pre(t) for t in c.cycle)
    )


def pushforward_witness(
    point_map: Mapping[str, str], w: GroupabilityWitness, target: PointSpace
) -> GroupabilityWitness:
    """Transport a witness for a pullback cover to the original cover: the
    index partition is unchanged and the threshold of a target point is the
    maximum over its preimages (a preimage threshold alone is not valid for
    the image point in general)."""
    thresholds = {}
    for x, t in w.thresholds.items():
        y = point_map[x]
        thresholds[y] = max(thresholds.get(y, 0), t)
    missing = [y for y in target.points if y not in thresholds]
    if missing:
        raise NotSurjectiveError(missing)
    return GroupabilityWitness(w.partition, thresholds)
