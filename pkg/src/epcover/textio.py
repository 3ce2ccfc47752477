"""The line-oriented textual object language and report serialization.

One definition per line; comments start with '#'.  At most one directive
line (a subcommand with arguments) may follow the definitions:

    epseq g = prefix 0 ; inc-cycle 2
    epseq v = prefix 7 ; val-cycle 1 2
    epset e = prefix ; cycle 1 0
    cover U over {x y} = prefix {x} ; cycle {x y} {}
    family F = e e2
    partition P = widths 1 2 ; cycle 2
    check le-star g v

Rendering produces exactly this shape back, so parse(render(file)) is the
identity on definitions and directive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from .covers import EPCover, GroupabilityWitness, PointSpace
from .errors import ParseError, UnknownNameError
from .partitions import BlockPartition
from .rothberger import FunFamily
from .sequences import INCREMENTS, VALUES, EPSeq, EPSet

DIRECTIVES = ("convert", "check", "group", "verify", "pipeline", "oracle", "gen")
_TOKEN = re.compile(r"\{|\}|[^\s{}]+")


@dataclass(frozen=True)
class Def:
    kind: str
    spec: tuple
    value: object = field(compare=False)


@dataclass(frozen=True)
class InstanceFile:
    definitions: Mapping[str, Def]
    directive: tuple[str, ...] | None = None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, InstanceFile)
            and dict(self.definitions) == dict(other.definitions)
            and self.directive == other.directive
        )

    def resolve(self, name: str, kind: str | None = None):
        if name not in self.definitions:
            raise UnknownNameError(name)
        d = self.definitions[name]
        if kind is not None and d.kind != kind:
            raise UnknownNameError(f"{name} (defined as {d.kind}, need {kind})")
        return d.value


class _Line:
    def __init__(self, lineno: int, text: str):
        self.lineno = lineno
        self.tokens = [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(text)]
        self.at = 0

    def peek(self) -> str | None:
        if self.at < len(self.tokens):
            return self.tokens[self.at][0]
        return None

    def col(self) -> int:
        if self.at < len(self.tokens):
            return self.tokens[self.at][1]
        return self.tokens[-1][1] + len(self.tokens[-1][0]) if self.tokens else 1

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.lineno, self.col(), expected or "more input")
        if expected is not None and tok != expected:
            raise ParseError(self.lineno, self.col(), repr(expected), tok)
        self.at += 1
        return tok

    def take_nat(self) -> int:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.lineno, self.col(), "a natural number")
        if not tok.isdigit():
            raise ParseError(self.lineno, self.col(), "a natural number", tok)
        self.at += 1
        return int(tok)

    def nats_until(self, stops: tuple[str, ...]) -> list[int]:
        out = []
        while self.peek() is not None and self.peek() not in stops:
            out.append(self.take_nat())
        return out

    def name(self) -> str:
        tok = self.peek()
        if tok is None or tok in ("{", "}", ";", "="):
            raise ParseError(self.lineno, self.col(), "a name", tok or "")
        self.at += 1
        return tok

    def idset(self) -> tuple[str, ...]:
        self.take("{")
        ids = []
        while self.peek() != "}":
            ids.append(self.name())
        self.take("}")
        return tuple(ids)

    def end(self) -> None:
        if self.peek() is not None:
            raise ParseError(self.lineno, self.col(), "end of line", self.peek())


def parse(text: str) -> InstanceFile:
    definitions: dict[str, Def] = {}
    directive: tuple[str, ...] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].rstrip()
        if not stripped.strip():
            continue
        line = _Line(lineno, stripped)
        head = line.peek()
        if head in DIRECTIVES:
            if directive is not None:
                raise ParseError(lineno, line.col(), "at most one directive line")
            directive = tuple(tok for tok, _ in line.tokens)
            continue
        kind = line.take()
        if kind not in ("epseq", "epset", "cover", "family", "partition"):
            raise ParseError(lineno, line.col() - len(kind), "a definition keyword", kind)
        name = line.name()
        if name in definitions:
            raise ParseError(lineno, line.col(), f"a fresh name ({name} is taken)")
        if kind == "cover":
            d = _parse_cover(line)
        else:
            line.take("=")
            if kind == "epseq":
                d = _parse_epseq(line)
            elif kind == "epset":
                d = _parse_epset(line)
            elif kind == "family":
                d = _parse_family(line, definitions)
            else:
                d = _parse_partition(line)
        line.end()
        definitions[name] = d
    return InstanceFile(definitions, directive)


def _parse_epseq(line: _Line) -> Def:
    line.take("prefix")
    prefix = line.nats_until((";",))
    if not prefix:
        raise ParseError(line.lineno, line.col(), "a nonempty prefix")
    line.take(";")
    kind_tok = line.take()
    if kind_tok == "inc-cycle":
        tail = INCREMENTS
    elif kind_tok == "val-cycle":
        tail = VALUES
    else:
        raise ParseError(line.lineno, line.col(), "'inc-cycle' or 'val-cycle'", kind_tok)
    cycle = line.nats_until(())
    if not cycle:
        raise ParseError(line.lineno, line.col(), "a nonempty cycle")
    value = EPSeq(tuple(prefix), tail, tuple(cycle))
    return Def("epseq", (tuple(prefix), tail.value, tuple(cycle)), value)


def _parse_epset(line: _Line) -> Def:
    line.take("prefix")
    prefix = line.nats_until((";",))
    line.take(";")
    line.take("cycle")
    cycle = line.nats_until(())
    if not cycle:
        raise ParseError(line.lineno, line.col(), "a nonempty cycle")
    for b in prefix + cycle:
        if b not in (0, 1):
            raise ParseError(line.lineno, line.col(), "bits (0 or 1)", str(b))
    value = EPSet(tuple(prefix), tuple(cycle))
    return Def("epset", (tuple(prefix), tuple(cycle)), value)


def _parse_cover(line: _Line) -> Def:
    line.take("over")
    points = line.idset()
    line.take("=")
    line.take("prefix")
    prefix = []
    while line.peek() == "{":
        prefix.append(line.idset())
    line.take(";")
    line.take("cycle")
    cycle = []
    while line.peek() == "{":
        cycle.append(line.idset())
    if not cycle:
        raise ParseError(line.lineno, line.col(), "a nonempty trace cycle")
    value = EPCover(
        PointSpace(points),
        tuple(frozenset(t) for t in prefix),
        tuple(frozenset(t) for t in cycle),
    )
    spec = (
        points,
        tuple(tuple(sorted(t)) for t in prefix),
        tuple(tuple(sorted(t)) for t in cycle),
    )
    return Def("cover", spec, value)


def _parse_family(line: _Line, definitions: dict[str, Def]) -> Def:
    names = []
    while line.peek() is not None:
        names.append(line.name())
    if not names:
        raise ParseError(line.lineno, line.col(), "at least one member name")
    members = []
    for n in names:
        if n not in definitions or definitions[n].kind != "epset":
            raise UnknownNameError(n, line.lineno)
        members.append(definitions[n].value)
    value = FunFamily(tuple(members), tuple(names))
    return Def("family", tuple(names), value)


def _parse_partition(line: _Line) -> Def:
    line.take("widths")
    pre = line.nats_until((";",))
    line.take(";")
    line.take("cycle")
    cyc = line.nats_until(())
    if not cyc:
        raise ParseError(line.lineno, line.col(), "a nonempty width cycle")
    if any(w < 1 for w in pre + cyc):
        raise ParseError(line.lineno, line.col(), "positive widths")
    value = BlockPartition.from_widths(pre, cyc)
    return Def("partition", (tuple(pre), tuple(cyc)), value)


# -- rendering ---------------------------------------------------------------


def render(f: InstanceFile) -> str:
    lines = []
    for name, d in f.definitions.items():
        lines.append(render_def(name, d))
    if f.directive is not None:
        lines.append(" ".join(f.directive))
    return "\n".join(lines) + "\n"


def render_def(name: str, d: Def) -> str:
    if d.kind == "epseq":
        prefix, tail, cycle = d.spec
        kind = "inc-cycle" if tail == INCREMENTS.value else "val-cycle"
        return (
            f"epseq {name} = prefix {_nums(prefix)} ; {kind} {_nums(cycle)}"
        )
    if d.kind == "epset":
        prefix, cycle = d.spec
        pre = f"prefix {_nums(prefix)}" if prefix else "prefix"
        return f"epset {name} = {pre} ; cycle {_nums(cycle)}"
    if d.kind == "cover":
        points, prefix, cycle = d.spec
        pre = " ".join(_idset(t) for t in prefix)
        cyc = " ".join(_idset(t) for t in cycle)
        prefix_part = f"prefix {pre}" if prefix else "prefix"
        return f"cover {name} over {_idset(points)} = {prefix_part} ; cycle {cyc}"
    if d.kind == "family":
        return f"family {name} = {' '.join(d.spec)}"
    if d.kind == "partition":
        pre, cyc = d.spec
        pre_part = f"widths {_nums(pre)}" if pre else "widths"
        return f"partition {name} = {pre_part} ; cycle {_nums(cyc)}"
    raise ValueError(f"unknown definition kind {d.kind!r}")


def _nums(xs) -> str:
    return " ".join(str(x) for x in xs)


def _idset(ids) -> str:
    return "{" + " ".join(ids) + "}"


def def_for(obj) -> Def:
    """Wrap a value in the Def record its literal would parse to."""
    if isinstance(obj, EPSeq):
        return Def("epseq", (obj.prefix, obj.tail.value, obj.cycle), obj)
    if isinstance(obj, EPSet):
        return Def("epset", (obj.prefix, obj.cycle), obj)
    if isinstance(obj, EPCover):
        spec = (
            obj.space.points,
            tuple(tuple(sorted(t)) for t in obj.prefix),
            tuple(tuple(sorted(t)) for t in obj.cycle),
        )
        return Def("cover", spec, obj)
    if isinstance(obj, FunFamily):
        return Def("family", obj.labels, obj)
    raise ValueError(f"no literal form for {type(obj).__name__}")


# -- witness text ------------------------------------------------------------


def render_witness(w: GroupabilityWitness, block_count: int) -> str:
    lines = []
    for n in range(block_count):
        blk = w.partition.block(n)
        lines.append(f"block {n} : {_nums(blk)}".rstrip())
    lines.append("thresholds:")
    for p in sorted(w.thresholds):
        lines.append(f"{p} : {w.thresholds[p]}")
    return "\n".join(lines) + "\n"


def parse_witness(text: str) -> GroupabilityWitness:
    blocks: list[tuple[int, ...]] = []
    thresholds: dict[str, int] = {}
    in_thresholds = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped == "thresholds:":
            in_thresholds = True
            continue
        toks = stripped.split()
        if in_thresholds:
            if len(toks) != 3 or toks[1] != ":" or not toks[2].isdigit():
                raise ParseError(lineno, 1, "'POINT : THRESHOLD'")
            thresholds[toks[0]] = int(toks[2])
            continue
        if toks[0] != "block" or len(toks) < 3 or toks[2] != ":":
            raise ParseError(lineno, 1, "'block N : k1 k2 ...'")
        if not toks[1].isdigit() or int(toks[1]) != len(blocks):
            raise ParseError(lineno, 1, f"block number {len(blocks)}", toks[1])
        elems = []
        for t in toks[3:]:
            if not t.isdigit():
                raise ParseError(lineno, 1, "block elements", t)
            elems.append(int(t))
        blocks.append(tuple(sorted(elems)))
    partition = BlockPartition.from_explicit_blocks(blocks)
    return GroupabilityWitness(partition, thresholds)
