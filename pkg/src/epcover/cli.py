"""Batch command-line interface.

Subcommands: convert, check, group, verify, pipeline, oracle, gen.
Instance files hold named definitions (see textio) and may carry one
directive line; when a subcommand is invoked without operation arguments,
the file's directive supplies them.

Exit codes: 0 success, 1 a mathematical check came out negative, 2 input
or usage error.  Reports are plain text with stable ordering, so identical
invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import instances, textio
from .covers import group_cover, is_large, verify_witness
from .errors import EpcoverError, ParseError, UnknownNameError
from .oracle import (
    FinSeq,
    check_large_h,
    check_le_star_h,
    check_through_h,
    check_witness_h,
    exhaustive_groupability,
    greedy_slalom_h,
)
from .partitions import DEFAULT_HORIZON
from .rothberger import b_pipeline
from .sequences import EPSeq, increasing_enum, le_star
from .slalom import (
    Slalom,
    bound_from_slalom,
    goes_through,
    partition_from_slalom,
    slalom_from_bound,
    slalom_from_partition,
)

MAX_SHOWN = 64  # boundary entries printed per report line


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="epcover",
        description="exact conversions and groupability checks for "
        "eventually periodic covers",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name: str, handler, with_file: bool = True, ops: bool = True):
        p = sub.add_parser(name)
        if with_file:
            p.add_argument("file", type=Path)
        if ops:
            p.add_argument("args", nargs="*")
        p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--emit", default="all")
        p.set_defaults(func=handler)
        return p

    add("check", _cmd_check)
    add("convert", _cmd_convert)
    add("group", _cmd_group)
    p = add("verify", _cmd_verify)
    p.add_argument("--witness", type=Path, required=True)
    p = add("pipeline", _cmd_pipeline, ops=False)
    p.add_argument("--family", default=None)
    p = add("oracle", _cmd_oracle)
    p.add_argument("--witness", type=Path)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--indices", type=int, default=8)
    p.add_argument("--max-blocks", type=int, default=None)
    p = add("gen", _cmd_gen, with_file=False, ops=False)
    p.add_argument("--kind", required=True)
    p.add_argument("--count", type=int, default=1)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownNameError, ValueError, OSError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except EpcoverError as e:
        print(f"check failed: {type(e).__name__}: {e}")
        return 1


def _load(args) -> textio.InstanceFile:
    return textio.parse(args.file.read_text())


def _op_args(args, inst: textio.InstanceFile) -> list[str]:
    if args.args:
        return list(args.args)
    if inst.directive and inst.directive[0] == args.command:
        return list(inst.directive[1:])
    raise ValueError(
        f"no operation arguments and no '{args.command}' directive in the file"
    )


# -- check --------------------------------------------------------------------


def _cmd_check(args) -> int:
    inst = _load(args)
    op, *names = _op_args(args, inst)
    if op == "le-star":
        f = inst.resolve(names[0], "epseq")
        g = inst.resolve(names[1], "epseq")
        verdict = le_star(f, g)
        print(f"le-star {names[0]} {names[1]}: {verdict}")
        return 0 if verdict.holds else 1
    if op == "through":
        f = inst.resolve(names[0], "epseq")
        g = inst.resolve(names[1], "epseq")
        verdict = goes_through(f, Slalom(g))
        print(f"through {names[0]} {names[1]}: {verdict}")
        return 0 if verdict.holds else 1
    if op == "large":
        c = inst.resolve(names[0], "cover")
        report = is_large(c)
        for p in c.space.points:
            if report.large[p]:
                print(f"{p} : large")
        for p, count in report.finite_multiplicity_points:
            print(f"{p} : finite multiplicity {count}")
        return 0 if report.all_large else 1
    raise ValueError(f"unknown check {op!r} (le-star, through, large)")


# -- convert ------------------------------------------------------------------


def _boundary_line(boundary, horizon: int) -> str:
    if isinstance(boundary, EPSeq):
        vals = []
        n = 0
        while len(vals) < MAX_SHOWN:
            v = boundary.eval(n)
            if v > horizon:
                break
            vals.append(v)
            n += 1
    else:
        vals = boundary.values_until(horizon, MAX_SHOWN)
        if vals and vals[-1] > horizon:
            vals = vals[:-1]
    return " ".join(map(str, vals))


def _cmd_convert(args) -> int:
    inst = _load(args)
    op, *names = _op_args(args, inst)
    if op == "bound-to-slalom":
        g = inst.resolve(names[0], "epseq")
        s = slalom_from_bound(g)
        print(f"boundary {_boundary_line(s.boundary, args.horizon)}")
        return 0
    if op == "slalom-to-bound":
        g = inst.resolve(names[0], "epseq")
        h = bound_from_slalom(Slalom(g))
        print(f"epseq bound = {h}")
        return 0
    if op == "slalom-to-partition":
        g = inst.resolve(names[0], "epseq")
        p = partition_from_slalom(Slalom(g))
        n = 0
        while n < MAX_SHOWN:
            blk = p.block(n)
            if blk and min(blk) > args.horizon:
                break
            print(f"block {n} : {' '.join(map(str, blk))}".rstrip())
            n += 1
        return 0
    if op == "partition-to-slalom":
        p = inst.resolve(names[0], "partition")
        s = slalom_from_partition(p, args.horizon)
        print(f"boundary {_boundary_line(s.boundary, args.horizon)}")
        return 0
    raise ValueError(
        f"unknown conversion {op!r} (bound-to-slalom, slalom-to-bound, "
        "slalom-to-partition, partition-to-slalom)"
    )


# -- group / verify -----------------------------------------------------------


def _cmd_group(args) -> int:
    inst = _load(args)
    (name,) = _op_args(args, inst)
    c = inst.resolve(name, "cover")
    result = group_cover(c)
    blocks, _ = result.witness.partition.blocks_covering(args.horizon)
    print(f"# witness for {name} ({result.trace.step_count} refinement steps)")
    sys.stdout.write(textio.render_witness(result.witness, len(blocks)))
    return 0


def _cmd_verify(args) -> int:
    inst = _load(args)
    (name,) = _op_args(args, inst)
    c = inst.resolve(name, "cover")
    w = textio.parse_witness(args.witness.read_text())
    elements = w.partition.domain.finite_elements() or (0,)
    h = min(args.horizon, max(elements) + 1)
    report = verify_witness(c, w, horizon=h)
    for p in c.space.points:
        v = report.per_point[p]
        if v.ok:
            print(f"{p} : ok, minimal threshold {v.minimal_threshold}")
        else:
            print(f"{p} : FAIL at block {v.failure_index}")
    print(f"window {report.horizon}")
    return 0 if report.ok else 1


# -- pipeline -----------------------------------------------------------------


def _cmd_pipeline(args) -> int:
    inst = _load(args)
    fam = None
    if args.family is not None:
        fam = inst.resolve(args.family, "family")
    else:
        fams = [d.value for d in inst.definitions.values() if d.kind == "family"]
        if len(fams) != 1:
            raise ValueError("file must define exactly one family (or use --family)")
        fam = fams[0]
    report = b_pipeline(fam, horizon=args.horizon)
    emit = args.emit
    if emit in ("witness", "all"):
        blocks, _ = report.witness.partition.blocks_covering(
            min(args.horizon, 4 * MAX_SHOWN)
        )
        print("witness:")
        sys.stdout.write(
            textio.render_witness(report.witness, min(len(blocks), MAX_SHOWN))
        )
    if emit in ("partition", "all"):
        print("partition thresholds:")
        for lbl in sorted(report.partition.thresholds):
            print(f"{lbl} : {report.partition.thresholds[lbl]}")
    if emit in ("slalom", "all"):
        print(f"slalom boundary {_boundary_line(report.slalom.boundary, args.horizon)}")
        for lbl in report.family.labels:
            print(f"through {lbl} : {report.through[lbl]}")
    if emit in ("bound", "all"):
        if isinstance(report.bound, EPSeq):
            print(f"bound = {report.bound}")
        else:
            print(f"bound {_boundary_line(report.bound, args.horizon)}")
        for lbl in report.family.labels:
            print(f"dominates {lbl} : {report.dominated[lbl]}")
    print(f"pipeline {'ok' if report.ok else 'FAILED'}")
    return 0 if report.ok else 1


# -- oracle -------------------------------------------------------------------


def _cmd_oracle(args) -> int:
    inst = _load(args)
    op, *names = _op_args(args, inst)
    h = args.horizon
    if op == "le-star":
        f = inst.resolve(names[0], "epseq")
        g = inst.resolve(names[1], "epseq")
        v = check_le_star_h(FinSeq.materialize(f, h), FinSeq.materialize(g, h))
        print(f"oracle le-star {names[0]} {names[1]}: {v}")
        return 0 if v.holds else 1
    if op == "through":
        f = inst.resolve(names[0], "epseq")
        g = inst.resolve(names[1], "epseq")
        fv = f.values(h)
        gv = []
        n = 0
        while len(gv) < h:
            gv.append(g.eval(n))
            if gv[-1] > fv[-1]:
                break
            n += 1
        v = check_through_h(FinSeq(tuple(fv), increasing=True), FinSeq(tuple(gv)))
        print(f"oracle through {names[0]} {names[1]}: {v}")
        return 0 if v.holds else 1
    if op == "large":
        c = inst.resolve(names[0], "cover")
        counts = check_large_h(c, h)
        for p in c.space.points:
            print(f"{p} : multiplicity {counts[p]} below {h}")
        return 0
    if op == "witness":
        c = inst.resolve(names[0], "cover")
        if args.witness is None:
            raise ValueError("oracle witness needs --witness FILE")
        w = textio.parse_witness(args.witness.read_text())
        elements = w.partition.domain.finite_elements() or (0,)
        blocks = [
            w.partition.block(n) for n in range(w.partition.num_blocks or 0)
        ]
        mins = check_witness_h(c, blocks, min(h, max(elements) + 1))
        for p in c.space.points:
            print(f"{p} : minimal threshold {mins[p]} over {len(blocks)} blocks")
        return 0
    if op == "greedy-slalom":
        fam = inst.resolve(names[0], "family")
        ys = [
            FinSeq(tuple(m.elements_below(h)), increasing=True)
            for m in fam.members
        ]
        b = greedy_slalom_h(ys, args.start)
        shown = " ".join(map(str, b.values[:MAX_SHOWN]))
        print(f"greedy boundary {shown}")
        return 0
    if op == "exhaustive":
        c = inst.resolve(names[0], "cover")
        w = exhaustive_groupability(c, args.indices, args.max_blocks)
        if w is None:
            print(f"UNSAT at {args.indices} indices")
            return 1
        for n, blk in enumerate(w.blocks):
            print(f"block {n} : {' '.join(map(str, blk))}")
        print("thresholds:")
        for p in sorted(w.thresholds):
            print(f"{p} : {w.thresholds[p]}")
        print(f"mode {w.mode}")
        return 0
    raise ValueError(f"unknown oracle check {op!r}")


# -- gen ----------------------------------------------------------------------


def _cmd_gen(args) -> int:
    r = instances.rng_from_seed(args.seed)
    kind = args.kind
    print(f"# gen kind={kind} seed={args.seed} count={args.count}")
    defs: dict[str, textio.Def] = {}
    for i in range(args.count):
        if kind == "epseq":
            defs[f"g{i}"] = textio.def_for(instances.gen_epseq(r))
        elif kind == "epseq-inc":
            defs[f"g{i}"] = textio.def_for(instances.gen_epseq(r, increasing=True))
        elif kind == "epset":
            defs[f"e{i}"] = textio.def_for(instances.gen_epset(r))
        elif kind == "cover":
            defs[f"U{i}"] = textio.def_for(instances.gen_cover(r))
        elif kind == "family":
            fam = instances.gen_family(r)
            for lbl, m in zip(fam.labels, fam.members):
                defs[f"{lbl}_{i}"] = textio.def_for(m)
            defs[f"F{i}"] = textio.Def(
                "family", tuple(f"{lbl}_{i}" for lbl in fam.labels), fam
            )
        elif kind == "partition":
            pre, cyc = instances.gen_partition_widths(r)
            from .partitions import BlockPartition

            defs[f"P{i}"] = textio.Def(
                "partition", (pre, cyc), BlockPartition.from_widths(pre, cyc)
            )
        elif kind == "le-pair":
            f, g = instances.gen_le_pair(r)
            defs[f"f{i}"] = textio.def_for(f)
            defs[f"g{i}"] = textio.def_for(g)
        elif kind == "through-pair":
            f, s = instances.gen_through_pair(r)
            defs[f"f{i}"] = textio.def_for(f)
            defs[f"g{i}"] = textio.def_for(s.boundary)
        else:
            raise ValueError(f"unknown kind {kind!r}")
    sys.stdout.write(textio.render(textio.InstanceFile(defs, None)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
