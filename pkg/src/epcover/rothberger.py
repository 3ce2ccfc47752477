"""The membership cover over families of infinite sets, and the pipeline
from groupability witnesses to slaloms and dominating bounds.

For a finite family of infinite subsets of the naturals, the cover indexed
by n consists of the members containing n.  The trace sequence of that
cover is eventually periodic, so the grouping engine decides everything
exactly; a groupability witness turns directly into a partition of the
naturals whose blocks meet every member cofinitely, and the greedy
boundary over that partition is a slalom every member's increasing
enumeration goes through, with the doubled boundary as a dominating bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Mapping, Sequence

from .covers import (
    EPCover,
    GroupabilityWitness,
    PointSpace,
    RefinementTrace,
    group_cover,
    verify_witness,
)
from .errors import InvalidWitnessError
from .oracle import FinSeq, check_le_star_h, check_through_h
from .partitions import DEFAULT_HORIZON, BlockPartition
from .sequences import Boundary, EPSeq, EPSet, increasing_enum, le_star
from .slalom import (
    Slalom,
    ThroughVerdict,
    bound_from_slalom,
    goes_through,
    partition_from_slalom,
    slalom_from_partition,
)


@dataclass(frozen=True)
class FunFamily:
    """Finitely many infinite subsets of the naturals, with labels."""

    members: tuple[EPSet, ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(self.members))
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.members:
            raise ValueError("family must be nonempty")
        if len(self.members) != len(self.labels):
            raise ValueError("labels and members must match")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")
        for lbl, m in zip(self.labels, self.members):
            if not m.is_infinite:
                raise ValueError(f"member {lbl!r} is finite")

    @classmethod
    def from_sets(
        cls, sets: Sequence[EPSet], labels: Sequence[str] | None = None
    ) -> FunFamily:
        if labels is None:
            labels = tuple(f"a{i}" for i in range(len(sets)))
        return cls(tuple(sets), tuple(labels))

    def member(self, label: str) -> EPSet:
        return self.members[self.labels.index(label)]


def build_rothberger_cover(y: FunFamily) -> EPCover:
    """Cover whose n-th trace is the set of members containing n.  Always
    large: every member is infinite."""
    space = PointSpace(y.labels, dict(zip(y.labels, y.members)))
    pre_len = max(len(m.prefix) for m in y.members)
    period = lcm(*(len(m.cycle) for m in y.members))

    def trace(n: int) -> frozenset[str]:
        return frozenset(l for l, m in zip(y.labels, y.members) if n in m)

    prefix = tuple(trace(n) for n in range(pre_len))
    cycle = tuple(trace(pre_len + i) for i in range(period))
    return EPCover(space, prefix, cycle)


@dataclass(frozen=True, eq=False)
class MemberPartition:
    """A partition of the naturals with, per member, the least n from which
    every later block meets the member."""

    partition: BlockPartition
    thresholds: Mapping[str, int]


def witness_to_partition(y: FunFamily, w: GroupabilityWitness) -> MemberPartition:
    """Read a groupability witness for the membership cover as a numeric
    partition: cover indices are the naturals themselves, and a block
    reaches a member exactly when it meets it."""
    cover = build_rothberger_cover(y)
    report = verify_witness(cover, w)
    if not report.ok:
        bad = sorted(p for p, v in report.per_point.items() if not v.ok)
        raise InvalidWitnessError(f"witness fails for: {', '.join(bad)}")
    return MemberPartition(w.partition, dict(w.thresholds))


def partition_to_slalom_check(
    y: FunFamily, p: BlockPartition, horizon: int = DEFAULT_HORIZON
) -> tuple[Slalom, dict[str, ThroughVerdict]]:
    """Greedy slalom over the partition, plus one interval-hitting verdict
    per member's increasing enumeration (exact when the boundary is
    finitely described, else checked on the horizon window)."""
    s = slalom_from_partition(p, horizon)
    verdicts = {}
    for lbl, m in zip(y.labels, y.members):
        verdicts[lbl] = _through_verdict(increasing_enum(m), s, horizon)
    return s, verdicts


def _dominance_at_horizon(f: EPSeq, bound, horizon: int) -> ThroughVerdict:
    """Window check of eventual dominance against an on-demand bound.

    The bound is increasing, so it only needs materializing until it
    passes f's largest window value: every later comparison holds."""
    fv = f.values(horizon)
    bv = bound.values_until(fv[-1], horizon)
    m = min(len(bv), horizon)
    hv = check_le_star_h(
        FinSeq(tuple(fv[:m]), increasing=True), FinSeq(tuple(bv[:m]))
    )
    if hv.status == "holds-at-horizon":
        return ThroughVerdict(True, hv.threshold or 0, "", horizon=horizon)
    return ThroughVerdict(
        False, 0, f"violation at {hv.counterexample}", horizon=horizon
    )


def _through_verdict(f: EPSeq, s: Slalom, horizon: int) -> ThroughVerdict:
    if s.is_exact:
        return goes_through(f, s)
    fv = f.values(horizon)
    bv = s.boundary.values_until(fv[-1] + 1, horizon + 1)
    verdict = check_through_h(FinSeq(tuple(fv), increasing=True), FinSeq(tuple(bv)))
    if verdict.status == "holds-at-horizon":
        return ThroughVerdict(True, verdict.threshold, "", horizon=verdict.horizon)
    return ThroughVerdict(
        False,
        0,
        f"interval {verdict.counterexample} missed",
        horizon=verdict.horizon,
    )


@dataclass(frozen=True, eq=False)
class PipelineReport:
    family: FunFamily
    cover: EPCover
    witness: GroupabilityWitness
    refinement: RefinementTrace
    partition: MemberPartition
    slalom: Slalom
    bound: Boundary
    through: Mapping[str, ThroughVerdict]
    dominated: Mapping[str, ThroughVerdict]

    @property
    def ok(self) -> bool:
        return all(v.holds for v in self.through.values()) and all(
            v.holds for v in self.dominated.values()
        )


def b_pipeline(y: FunFamily, horizon: int = DEFAULT_HORIZON) -> PipelineReport:
    """Full chain: membership cover, grouping witness, numeric partition,
    greedy slalom, doubled bound; asserts every member's enumeration goes
    through the slalom and is eventually dominated by the bound."""
    cover = build_rothberger_cover(y)
    grouped = group_cover(cover)
    part = witness_to_partition(y, grouped.witness)
    s, through = partition_to_slalom_check(y, part.partition, horizon)
    bound = bound_from_slalom(s)
    dominated = {}
    for lbl, m in zip(y.labels, y.members):
        f = increasing_enum(m)
        if isinstance(bound, EPSeq):
            v = le_star(f, bound)
            dominated[lbl] = ThroughVerdict(v.holds, v.threshold, v.witness_note)
        else:
            dominated[lbl] = _dominance_at_horizon(f, bound, horizon)
    return PipelineReport(
        family=y,
        cover=cover,
        witness=grouped.witness,
        refinement=grouped.trace,
        partition=part,
        slalom=s,
        bound=bound,
        through=through,
        dominated=dominated,
    )
