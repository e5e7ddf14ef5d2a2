"""Reading and writing keis, diagrams, tri-plane files and reports.

Single diagrams use a line-oriented text format::

    # trefoil
    arc a
    arc b c
    x a b c          # under_in over under_out
    boundary p0 p1   # tangles only: endpoint labels in order
    end p0 a         # tangles only: endpoint p0 lies on arc a
    terminal p0      # 1-tangles only

Keis, tri-plane diagrams and reports are JSON.  Parsing is all-or-nothing:
every problem found is collected and raised together as a
:class:`ParseFailure`.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .diagrams import PANEL_NAMES, DiagramError, LinkDiagram, TangleDiagram, TriPlaneDiagram
from .kei import Kei, kei_to_dict, validate_kei

SYNTAX = "syntax"
DUPLICATE = "duplicate-label"
DANGLING = "dangling-reference"
STRUCTURAL = "structural"


@dataclass(frozen=True)
class ParseError:
    line: int
    column: int
    kind: str
    message: str

    def __str__(self):
        return f"{self.line}:{self.column}: {self.kind}: {self.message}"


class ParseFailure(ValueError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("\n".join(str(e) for e in self.errors))


def _tokens(line):
    """Yield (column, token) pairs, 1-based columns; stops at a comment."""
    col, n = 0, len(line)
    while col < n:
        while col < n and line[col].isspace():
            col += 1
        if col >= n or line[col] == "#":
            return
        start = col
        while col < n and not line[col].isspace():
            col += 1
        yield start + 1, line[start:col]


def _parse_records(text):
    """First pass over the text format; returns declarations plus errors."""
    errors = []
    arcs = {}  # label -> (line, col)
    crossings = []  # (line, [(col, label)] * 3)
    boundary = None
    ends = []  # (line, col, endpoint, arc)
    terminal = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = list(_tokens(raw))
        if not toks:
            continue
        (col, head), args = toks[0], toks[1:]
        if head == "arc":
            if not args:
                errors.append(ParseError(lineno, col, SYNTAX, "'arc' needs at least one label"))
            for c, a in args:
                if a in arcs:
                    errors.append(ParseError(lineno, c, DUPLICATE, f"arc {a!r} already declared on line {arcs[a][0]}"))
                else:
                    arcs[a] = (lineno, c)
        elif head == "x":
            if len(args) != 3:
                errors.append(ParseError(lineno, col, SYNTAX, f"crossing needs 3 labels, got {len(args)}"))
            else:
                crossings.append((lineno, args))
        elif head == "boundary":
            if boundary is not None:
                errors.append(ParseError(lineno, col, DUPLICATE, "boundary declared twice"))
                continue
            boundary = (lineno, col, args)
            seen = set()
            for c, p in args:
                if p in seen:
                    errors.append(ParseError(lineno, c, DUPLICATE, f"endpoint {p!r} repeated"))
                seen.add(p)
        elif head == "end":
            if len(args) != 2:
                errors.append(ParseError(lineno, col, SYNTAX, "'end' needs an endpoint and an arc"))
            else:
                ends.append((lineno, args[0], args[1]))
        elif head == "terminal":
            if len(args) != 1:
                errors.append(ParseError(lineno, col, SYNTAX, "'terminal' needs one endpoint label"))
            elif terminal is not None:
                errors.append(ParseError(lineno, col, DUPLICATE, "terminal declared twice"))
            else:
                terminal = (lineno, args[0])
        else:
            errors.append(ParseError(lineno, col, SYNTAX, f"unknown record {head!r}"))
    for lineno, args in crossings:
        for c, a in args:
            if a not in arcs:
                errors.append(ParseError(lineno, c, DANGLING, f"crossing uses undeclared arc {a!r}"))
    return arcs, crossings, boundary, ends, terminal, errors


def _end_count_errors(arcs, crossings, extra_ends=()):
    counts = Counter()
    for _, args in crossings:
        counts[args[0][1]] += 1
        counts[args[2][1]] += 1
    counts.update(extra_ends)
    errors = []
    for a, (line, col) in arcs.items():
        if counts[a] not in (0, 2):
            errors.append(ParseError(line, col, STRUCTURAL,
                                     f"arc {a!r} has {counts[a]} ends; expected 0 or 2"))
    return errors


def _build(make, errors, where=(1, 1)):
    if errors:
        raise ParseFailure(errors)
    try:
        return make()
    except DiagramError as exc:
        raise ParseFailure([ParseError(where[0], where[1], STRUCTURAL, str(exc))]) from None


def parse_link(text: str) -> LinkDiagram:
    arcs, crossings, boundary, ends, terminal, errors = _parse_records(text)
    if boundary is not None or ends or terminal is not None:
        line = boundary[0] if boundary else ends[0][0] if ends else terminal[0]
        errors.append(ParseError(line, 1, STRUCTURAL, "tangle records in a link diagram"))
    if not arcs and not errors:
        errors.append(ParseError(1, 1, STRUCTURAL, "diagram declares no arcs"))
    if not errors:
        errors = _end_count_errors(arcs, crossings)
    return _build(
        lambda: LinkDiagram(tuple(arcs), tuple(tuple(a for _, a in args) for _, args in crossings)),
        errors,
    )


def parse_tangle(text: str) -> TangleDiagram:
    arcs, crossings, boundary, ends, terminal, errors = _parse_records(text)
    if boundary is None:
        errors.append(ParseError(1, 1, STRUCTURAL, "tangle has no boundary record"))
        raise ParseFailure(errors)
    bline, bcol, bargs = boundary
    points = [p for _, p in bargs]
    if len(points) < 2 or len(points) % 2:
        errors.append(ParseError(bline, bcol, STRUCTURAL, f"need an even number >= 2 of endpoints, got {len(points)}"))
    end_of = {}
    for line, (pc, p), (ac, a) in ends:
        if p not in points:
            errors.append(ParseError(line, pc, DANGLING, f"'end' names unknown endpoint {p!r}"))
        elif p in end_of:
            errors.append(ParseError(line, pc, DUPLICATE, f"endpoint {p!r} placed twice"))
        else:
            end_of[p] = a
        if a not in arcs:
            errors.append(ParseError(line, ac, DANGLING, f"'end' names undeclared arc {a!r}"))
    for p in points:
        if p not in end_of:
            errors.append(ParseError(bline, bcol, STRUCTURAL, f"endpoint {p!r} lies on no arc"))
    if terminal is not None:
        if terminal[1][1] not in points:
            errors.append(ParseError(terminal[0], terminal[1][0], DANGLING,
                                     f"terminal {terminal[1][1]!r} is not a boundary endpoint"))
        elif len(points) != 2:
            errors.append(ParseError(terminal[0], terminal[1][0], STRUCTURAL,
                                     "only 1-tangles carry a terminal endpoint"))
    if not errors:
        errors = _end_count_errors(arcs, crossings, [end_of[p] for p in points])
    return _build(
        lambda: TangleDiagram(
            tuple(arcs),
            tuple(tuple(a for _, a in args) for _, args in crossings),
            tuple(points),
            tuple(end_of[p] for p in points),
            terminal[1][1] if terminal else None,
        ),
        errors,
        (bline, bcol),
    )


def parse_diagram(text: str):
    """A tangle if the text has a ``boundary`` record, else a link."""
    has_boundary = any(
        next(iter(_tokens(line)), (0, ""))[1] == "boundary" for line in text.splitlines()
    )
    return parse_tangle(text) if has_boundary else parse_link(text)


# --- JSON inputs -------------------------------------------------------------


def _locate(text, needle):
    idx = text.find(needle)
    if idx < 0:
        return 1, 1
    line = text.count("\n", 0, idx) + 1
    return line, idx - (text.rfind("\n", 0, idx) + 1) + 1


def _load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseFailure([ParseError(exc.lineno, exc.colno, SYNTAX, exc.msg)]) from None


def parse_kei(text: str) -> Kei:
    """Read a kei file; axiom failures raise :class:`KeiValidationError`."""
    data = _load_json(text)
    errors = []
    if not isinstance(data, dict) or "table" not in data:
        raise ParseFailure([ParseError(1, 1, STRUCTURAL, "kei file needs an object with a 'table'")])
    table = data["table"]
    where = _locate(text, '"table"')
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        errors.append(ParseError(*where, STRUCTURAL, "'table' must be a list of rows"))
    elif "order" in data and data["order"] != len(table):
        errors.append(ParseError(*_locate(text, '"order"'), STRUCTURAL,
                                 f"order {data['order']} but table has {len(table)} rows"))
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        errors.append(ParseError(*_locate(text, '"label"'), STRUCTURAL, "'label' must be a string"))
    if errors:
        raise ParseFailure(errors)
    return validate_kei(table, label)


def _tangle_from_obj(obj, shared_boundary, text, name, errors):
    where = _locate(text, '"panels"')
    if not isinstance(obj, dict):
        errors.append(ParseError(*where, STRUCTURAL, f"panel {name} must be an object"))
        return None
    boundary = obj.get("boundary", shared_boundary)
    arcs = obj.get("arcs", [])
    crossings = obj.get("crossings", [])
    ends = obj.get("ends", {})
    if not isinstance(ends, dict):
        errors.append(ParseError(*where, STRUCTURAL, f"panel {name}: 'ends' must map endpoints to arcs"))
        return None
    arcset = set(arcs)
    bad = False
    for c in crossings:
        if not isinstance(c, list) or len(c) != 3:
            errors.append(ParseError(*where, SYNTAX, f"panel {name}: crossing {c!r} needs 3 labels"))
            bad = True
            continue
        for a in c:
            if a not in arcset:
                errors.append(ParseError(*where, DANGLING, f"panel {name}: undeclared arc {a!r}"))
                bad = True
    for p in boundary:
        if p not in ends:
            errors.append(ParseError(*where, STRUCTURAL, f"panel {name}: endpoint {p!r} lies on no arc"))
            bad = True
    if bad:
        return None
    try:
        return TangleDiagram(arcs, [tuple(c) for c in crossings], boundary,
                             [ends[p] for p in boundary], obj.get("terminal"))
    except DiagramError as exc:
        errors.append(ParseError(*where, STRUCTURAL, f"panel {name}: {exc}"))
        return None


def parse_triplane(text: str) -> TriPlaneDiagram:
    data = _load_json(text)
    if not isinstance(data, dict):
        raise ParseFailure([ParseError(1, 1, STRUCTURAL, "tri-plane file must be a JSON object")])
    errors = []
    boundary = data.get("boundary")
    panels = data.get("panels")
    if not isinstance(boundary, list):
        errors.append(ParseError(*_locate(text, '"boundary"'), STRUCTURAL, "missing 'boundary' list"))
    if not isinstance(panels, list) or len(panels) != 3:
        errors.append(ParseError(*_locate(text, '"panels"'), STRUCTURAL, "'panels' must list three tangles"))
    if errors:
        raise ParseFailure(errors)
    if "b" in data and data["b"] * 2 != len(boundary):
        errors.append(ParseError(*_locate(text, '"b"'), STRUCTURAL,
                                 f"b = {data['b']} but boundary has {len(boundary)} labels"))
    built = []
    for name, obj in zip(PANEL_NAMES, panels):
        built.append(_tangle_from_obj(obj, boundary, text, name, errors))
    patch = data.get("patch_counts")
    if errors:
        raise ParseFailure(errors)
    TP = TriPlaneDiagram(boundary, built, tuple(patch) if patch is not None else None)
    for msg in TP.structural_problems():
        errors.append(ParseError(*_locate(text, '"panels"'), STRUCTURAL, msg))
    if errors:
        raise ParseFailure(errors)
    return TP


# --- reports -------------------------------------------------------------------


@dataclass
class Report:
    input: Optional[str]
    kei: Optional[str]
    count: Optional[int]
    bound_raw: Optional[float] = None
    bound_refined: Optional[int] = None
    congruence_ok: Optional[bool] = None
    details: dict = field(default_factory=dict)

    FIELDS = ("input", "kei", "count", "bound_raw", "bound_refined", "congruence_ok", "details")

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}


def parse_report(text: str) -> Report:
    data = _load_json(text)
    missing = [k for k in Report.FIELDS if k not in data]
    if missing:
        raise ParseFailure([ParseError(1, 1, STRUCTURAL, f"report lacks fields {missing}")])
    return Report(**{k: data[k] for k in Report.FIELDS})


def render_text(report: Report) -> str:
    lines = []
    for k in Report.FIELDS[:-1]:
        v = getattr(report, k)
        if v is not None:
            lines.append(f"{k}: {v}")
    for k, v in sorted(report.details.items()):
        lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines) + "\n"


# --- serialization ---------------------------------------------------------------


def _diagram_lines(D):
    lines = [f"arc {a}" for a in D.arcs]
    lines += [f"x {c.under_in} {c.over} {c.under_out}" for c in D.crossings]
    return lines


def _tangle_obj(T: TangleDiagram) -> dict:
    obj = {
        "boundary": list(T.boundary),
        "arcs": list(T.arcs),
        "crossings": [list(c) for c in T.crossings],
        "ends": {p: a for p, a in zip(T.boundary, T.ends)},
    }
    if T.terminal is not None:
        obj["terminal"] = T.terminal
    return obj


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def serialize(value) -> str:
    """Deterministic text for any supported value."""
    if isinstance(value, Kei):
        return _dump(kei_to_dict(value))
    if isinstance(value, LinkDiagram):
        return "\n".join(_diagram_lines(value)) + "\n"
    if isinstance(value, TangleDiagram):
        lines = _diagram_lines(value)
        lines.append("boundary " + " ".join(value.boundary))
        lines += [f"end {p} {a}" for p, a in zip(value.boundary, value.ends)]
        if value.terminal is not None:
            lines.append(f"terminal {value.terminal}")
        return "\n".join(lines) + "\n"
    if isinstance(value, TriPlaneDiagram):
        obj = {
            "b": value.strands,
            "boundary": list(value.boundary),
            "panels": [_tangle_obj(T) for T in value.panels],
        }
        if value.patch_counts is not None:
            obj["patch_counts"] = list(value.patch_counts)
        return _dump(obj)
    if isinstance(value, Report):
        return _dump(value.to_dict())
    if hasattr(value, "to_dict"):
        return _dump(value.to_dict())
    raise TypeError(f"cannot serialize {type(value).__name__}")
