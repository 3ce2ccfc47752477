"""Exact toolkit for eventually periodic covers.

Finitely described infinite sequences and sets, eventual-dominance
decisions, slalom and block-partition conversions, a groupability engine
for countable covers over finite point spaces, and horizon-truncated
brute-force oracles cross-validating every exact decision.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .covers import (
    EPCover,
    GroupabilityWitness,
    PointSpace,
    absorb_leftovers,
    equiv_classes,
    extend_to_superspace,
    group_cover,
    is_large,
    onestep,
    pullback_cover,
    verify_witness,
)
from .partitions import BlockPartition, merge_partitions
from .rothberger import FunFamily, b_pipeline, build_rothberger_cover
from .sequences import (
    INCREMENTS,
    VALUES,
    DominanceVerdict,
    EPSeq,
    EPSet,
    LazySeq,
    diag_to_increasing,
    increasing_enum,
    le_star,
    normalize,
    range_encode,
    undiag,
)
from .slalom import (
    Slalom,
    ThroughVerdict,
    bound_from_slalom,
    goes_through,
    partition_from_slalom,
    slalom_from_bound,
    slalom_from_partition,
)

__version__ = "0.1.0"

__all__ = [
    "BlockPartition",
    "DominanceVerdict",
    "EPCover",
    "EPSeq",
    "EPSet",
    "FunFamily",
    "GroupabilityWitness",
    "INCREMENTS",
    "KERNEL_BACKEND",
    "LazySeq",
    "PointSpace",
    "Slalom",
    "ThroughVerdict",
    "VALUES",
    "absorb_leftovers",
    "b_pipeline",
    "bound_from_slalom",
    "build_rothberger_cover",
    "diag_to_increasing",
    "equiv_classes",
    "extend_to_superspace",
    "goes_through",
    "group_cover",
    "increasing_enum",
    "is_large",
    "le_star",
    "merge_partitions",
    "normalize",
    "onestep",
    "partition_from_slalom",
    "pullback_cover",
    "range_encode",
    "slalom_from_bound",
    "slalom_from_partition",
    "undiag",
    "verify_witness",
]
