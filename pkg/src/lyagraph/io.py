"""Graph documents: the line-oriented DSL, the JSON schema, and report rendering.

DSL grammar, one declaration per line, '#' starts a comment:

    vertex ID sing INDEX
    vertex ID orbit (attracting|repelling)
    vertex ID sft RxC [e11, e12, ..., eRC]
    edge SRC -> DST g=WEIGHT

The JSON schema mirrors it:

    {"vertices": [{"id": ..., "label": {"kind": "sing"|"orbit"|"sft", ...}}],
     "edges": [{"src": ..., "dst": ..., "g": ...}]}

Parsing either format produces the same graph; rendering then reparsing is
the identity.  Weights and matrix entries are capped at 2**31 - 1.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, NamedTuple

from .checker import CheckReport
from .graph import (
    AttractingOrbit,
    Edge,
    LyapunovGraph,
    RepellingOrbit,
    Singularity,
    SuspensionSFT,
    Vertex,
    VertexLabel,
)
from .linalg import IntMatrix

MAX_NUMBER = 2**31 - 1

_ID_RE = re.compile(r"^[A-Za-z0-9_.\-]+$")
_DIM_RE = re.compile(r"^(\d+)x(\d+)$")
_NUM_RE = re.compile(r"^\d+$")


class Location(NamedTuple):
    """Where a declaration came from: line/column for DSL, path for JSON."""

    line: int | None
    column: int | None
    path: str | None


class ParseError(Exception):
    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None, path: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line is not None and self.column is not None:
            return f"line {self.line}, column {self.column}: {self.message}"
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        if self.path is not None:
            return f"{self.path}: {self.message}"
        return self.message


@dataclass(frozen=True)
class GraphDocument:
    fmt: str
    graph: LyapunovGraph
    vertex_locations: dict[str, Location]
    edge_locations: tuple[Location, ...]


# ---------------------------------------------------------------------------
# DSL
# ---------------------------------------------------------------------------

def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _parse_number(token: str, what: str, line: int, column: int) -> int:
    if token.startswith("-"):
        raise ParseError(f"{what} must not be negative, got {token!r}", line, column)
    if not _NUM_RE.match(token):
        raise ParseError(f"expected a nonnegative integer for {what}, got {token!r}",
                         line, column)
    value = int(token)
    if value > MAX_NUMBER:
        raise ParseError(f"{what} exceeds the limit of {MAX_NUMBER}", line, column)
    return value


def parse_dsl(text: str) -> GraphDocument:
    """Parse the line-oriented format; errors carry line and column."""
    vertices: list[Vertex] = []
    vertex_locations: dict[str, Location] = {}
    edges: list[Edge] = []
    edge_locations: list[Location] = []

    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        hash_at = line.find("#")
        if hash_at >= 0:
            line = line[:hash_at]
        toks = _tokens(line)
        if not toks:
            continue
        keyword, col = toks[0]
        if keyword == "vertex":
            vertices.append(_parse_vertex_line(line, toks, line_no, vertex_locations))
        elif keyword == "edge":
            edges.append(_parse_edge_line(toks, line_no))
            edge_locations.append(Location(line_no, col, None))
        else:
            raise ParseError(
                f"unknown declaration {keyword!r}, expected 'vertex' or 'edge'",
                line_no, col)

    return _assemble("dsl", vertices, vertex_locations, edges,
                     tuple(edge_locations))


def _parse_vertex_line(line: str, toks, line_no: int,
                       vertex_locations: dict[str, Location]) -> Vertex:
    if len(toks) < 3:
        raise ParseError("vertex declaration needs an id and a label kind",
                         line_no, toks[0][1])
    vid, vid_col = toks[1]
    if not _ID_RE.match(vid):
        raise ParseError(
            f"invalid vertex id {vid!r} (use letters, digits, '_', '.', '-')",
            line_no, vid_col)
    if vid in vertex_locations:
        raise ParseError(f"duplicate vertex id {vid!r}", line_no, vid_col)
    kind, kind_col = toks[2]

    if kind == "sing":
        if len(toks) != 4:
            raise ParseError("usage: vertex ID sing INDEX", line_no, kind_col)
        idx_tok, idx_col = toks[3]
        index = _parse_number(idx_tok, "singularity index", line_no, idx_col)
        if index > 3:
            raise ParseError(f"singularity index must be 0..3, got {index}",
                             line_no, idx_col)
        label: VertexLabel = Singularity(index)
    elif kind == "orbit":
        if len(toks) != 4:
            raise ParseError("usage: vertex ID orbit (attracting|repelling)",
                             line_no, kind_col)
        direction, dir_col = toks[3]
        if direction == "attracting":
            label = AttractingOrbit()
        elif direction == "repelling":
            label = RepellingOrbit()
        else:
            raise ParseError(
                f"orbit direction must be 'attracting' or 'repelling', "
                f"got {direction!r}", line_no, dir_col)
    elif kind == "sft":
        if len(toks) < 5:
            raise ParseError("usage: vertex ID sft RxC [entries]", line_no, kind_col)
        dim_tok, dim_col = toks[3]
        m = _DIM_RE.match(dim_tok)
        if not m:
            raise ParseError(f"expected dimensions like 2x2, got {dim_tok!r}",
                             line_no, dim_col)
        r, c = int(m.group(1)), int(m.group(2))
        if r != c:
            raise ParseError(f"subshift matrix must be square, got {r}x{c}",
                             line_no, dim_col)
        if r < 1:
            raise ParseError("subshift matrix must be at least 1x1", line_no, dim_col)
        blob_col = toks[4][1]
        blob = line[blob_col - 1:].strip()
        if not (blob.startswith("[") and blob.endswith("]")):
            raise ParseError("matrix entries must be bracketed: [a, b, ...]",
                             line_no, blob_col)
        items = [s.strip() for s in blob[1:-1].split(",")] if blob[1:-1].strip() else []
        if len(items) != r * c:
            raise ParseError(
                f"expected {r * c} matrix entries for {r}x{c}, got {len(items)}",
                line_no, blob_col)
        entries = [_parse_number(s, "matrix entry", line_no, blob_col) for s in items]
        label = SuspensionSFT(IntMatrix(r, c, tuple(entries)))
    else:
        raise ParseError(
            f"unknown label kind {kind!r}, expected 'sing', 'orbit', or 'sft'",
            line_no, kind_col)

    vertex_locations[vid] = Location(line_no, toks[0][1], None)
    return Vertex(vid, label)


def _parse_edge_line(toks, line_no: int) -> Edge:
    if len(toks) != 5 or toks[2][0] != "->" or not toks[4][0].startswith("g="):
        ref_col = toks[min(len(toks) - 1, 2)][1]
        raise ParseError("usage: edge SRC -> DST g=WEIGHT", line_no, ref_col)
    src, src_col = toks[1]
    dst, dst_col = toks[3]
    for name, col in ((src, src_col), (dst, dst_col)):
        if not _ID_RE.match(name):
            raise ParseError(f"invalid vertex id {name!r}", line_no, col)
    if src == dst:
        raise ParseError(f"self-loop at {src!r} is an oriented cycle",
                         line_no, dst_col)
    weight_tok, weight_col = toks[4]
    weight = _parse_number(weight_tok[2:], "edge weight", line_no, weight_col)
    return Edge(src, dst, weight)


def _assemble(fmt: str, vertices, vertex_locations, edges,
              edge_locations) -> GraphDocument:
    if not vertices:
        raise ParseError("graph has no vertices")
    known = {v.id for v in vertices}
    for e, loc in zip(edges, edge_locations):
        for endpoint in (e.src, e.dst):
            if endpoint not in known:
                raise ParseError(f"edge references unknown vertex {endpoint!r}",
                                 loc.line, loc.column, loc.path)
    try:
        graph = LyapunovGraph(tuple(vertices), tuple(edges))
    except ValueError as exc:  # construction invariants double as a backstop
        raise ParseError(str(exc)) from exc
    return GraphDocument(fmt, graph, vertex_locations, edge_locations)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def parse_json(text: str) -> GraphDocument:
    """Parse the JSON schema; errors carry the JSON path of the offender."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc

    _expect(isinstance(data, dict), "document", "expected a JSON object")
    _expect_keys(data, "document", {"vertices", "edges"})
    raw_vertices = data["vertices"]
    raw_edges = data["edges"]
    _expect(isinstance(raw_vertices, list), "vertices", "expected a list")
    _expect(isinstance(raw_edges, list), "edges", "expected a list")

    vertices: list[Vertex] = []
    vertex_locations: dict[str, Location] = {}
    for i, item in enumerate(raw_vertices):
        path = f"vertices[{i}]"
        _expect(isinstance(item, dict), path, "expected an object")
        _expect_keys(item, path, {"id", "label"})
        vid = item["id"]
        _expect(isinstance(vid, str) and vid, f"{path}.id", "expected a nonempty string")
        _expect(vid not in vertex_locations, f"{path}.id",
                f"duplicate vertex id {vid!r}")
        label = _parse_json_label(item["label"], f"{path}.label")
        vertices.append(Vertex(vid, label))
        vertex_locations[vid] = Location(None, None, path)

    edges: list[Edge] = []
    edge_locations: list[Location] = []
    for i, item in enumerate(raw_edges):
        path = f"edges[{i}]"
        _expect(isinstance(item, dict), path, "expected an object")
        _expect_keys(item, path, {"src", "dst", "g"})
        src, dst = item["src"], item["dst"]
        _expect(isinstance(src, str) and src, f"{path}.src",
                "expected a nonempty string")
        _expect(isinstance(dst, str) and dst, f"{path}.dst",
                "expected a nonempty string")
        _expect(src != dst, path, f"self-loop at {src!r} is an oriented cycle")
        weight = _json_number(item["g"], f"{path}.g", "edge weight")
        edges.append(Edge(src, dst, weight))
        edge_locations.append(Location(None, None, path))

    return _assemble("json", vertices, vertex_locations, edges,
                     tuple(edge_locations))


def _expect(ok: bool, path: str, message: str) -> None:
    if not ok:
        raise ParseError(message, path=path)


def _expect_keys(obj: dict, path: str, required: set[str]) -> None:
    missing = required - obj.keys()
    if missing:
        raise ParseError(f"missing required field {sorted(missing)[0]!r}", path=path)
    extra = obj.keys() - required
    if extra:
        raise ParseError(f"unknown field {sorted(extra)[0]!r}", path=path)


def _json_number(value: Any, path: str, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer for {what}", path=path)
    if value < 0:
        raise ParseError(f"{what} must not be negative, got {value}", path=path)
    if value > MAX_NUMBER:
        raise ParseError(f"{what} exceeds the limit of {MAX_NUMBER}", path=path)
    return value


def _parse_json_label(raw: Any, path: str) -> VertexLabel:
    _expect(isinstance(raw, dict), path, "expected an object")
    kind = raw.get("kind")
    if kind == "sing":
        _expect_keys(raw, path, {"kind", "index"})
        index = _json_number(raw["index"], f"{path}.index", "singularity index")
        _expect(index <= 3, f"{path}.index",
                f"singularity index must be 0..3, got {index}")
        return Singularity(index)
    if kind == "orbit":
        _expect_keys(raw, path, {"kind", "direction"})
        direction = raw["direction"]
        _expect(direction in ("attracting", "repelling"), f"{path}.direction",
                "orbit direction must be 'attracting' or 'repelling'")
        return AttractingOrbit() if direction == "attracting" else RepellingOrbit()
    if kind == "sft":
        _expect_keys(raw, path, {"kind", "matrix"})
        rows = raw["matrix"]
        _expect(isinstance(rows, list) and rows, f"{path}.matrix",
                "expected a nonempty list of rows")
        n = len(rows)
        entries: list[int] = []
        for i, row in enumerate(rows):
            _expect(isinstance(row, list), f"{path}.matrix[{i}]", "expected a list")
            _expect(len(row) == n, f"{path}.matrix[{i}]",
                    f"subshift matrix must be square: row has {len(row)} entries, "
                    f"expected {n}")
            for j, e in enumerate(row):
                entries.append(
                    _json_number(e, f"{path}.matrix[{i}][{j}]", "matrix entry"))
        return SuspensionSFT(IntMatrix(n, n, tuple(entries)))
    raise ParseError(
        f"unknown label kind {kind!r}, expected 'sing', 'orbit', or 'sft'",
        path=f"{path}.kind")


def detect_format(text: str) -> str:
    return "json" if text.lstrip()[:1] == "{" else "dsl"


def parse_auto(text: str) -> GraphDocument:
    return parse_json(text) if detect_format(text) == "json" else parse_dsl(text)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render_dsl(g: LyapunovGraph) -> str:
    lines = []
    for v in g.vertices:
        label = v.label
        if isinstance(label, Singularity):
            lines.append(f"vertex {v.id} sing {label.index}")
        elif isinstance(label, AttractingOrbit):
            lines.append(f"vertex {v.id} orbit attracting")
        elif isinstance(label, RepellingOrbit):
            lines.append(f"vertex {v.id} orbit repelling")
        else:
            m = label.matrix
            body = ", ".join(str(e) for e in m.entries)
            lines.append(f"vertex {v.id} sft {m.rows}x{m.cols} [{body}]")
    for e in g.edges:
        lines.append(f"edge {e.src} -> {e.dst} g={e.weight}")
    return "\n".join(lines) + "\n"


def _label_to_json(label: VertexLabel) -> dict:
    if isinstance(label, Singularity):
        return {"kind": "sing", "index": label.index}
    if isinstance(label, AttractingOrbit):
        return {"kind": "orbit", "direction": "attracting"}
    if isinstance(label, RepellingOrbit):
        return {"kind": "orbit", "direction": "repelling"}
    return {"kind": "sft", "matrix": label.matrix.to_rows()}


def render_json(g: LyapunovGraph) -> str:
    doc = {
        "vertices": [{"id": v.id, "label": _label_to_json(v.label)}
                     for v in g.vertices],
        "edges": [{"src": e.src, "dst": e.dst, "g": e.weight} for e in g.edges],
    }
    return json.dumps(doc, separators=(", ", ": ")) + "\n"


def render_report(report: CheckReport, mode: str = "text",
                  graph: LyapunovGraph | None = None) -> str:
    """Render a check report; pass the graph to get per-vertex detail in text mode."""
    if mode == "json":
        return _report_json(report)
    if mode != "text":
        raise ValueError(f"unknown render mode {mode!r}")
    return _report_text(report, graph)


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _report_text(report: CheckReport, graph: LyapunovGraph | None) -> str:
    s = report.structure
    lines = [
        f"target: {report.target.value}",
        f"structure: nonempty={_yesno(s.nonempty)} connected={_yesno(s.connected)} "
        f"acyclic={_yesno(s.oriented_acyclic)}",
        f"beta: {report.beta if report.beta is not None else 'n/a'}",
    ]
    for verdict in report.verdicts:
        lines.append(f"{verdict.condition}: {verdict.status}")
        for w in verdict.witnesses:
            lines.append(f"  - {w.ref}: {w.message}")
    if report.sft_classes:
        lines.append("subshift vertices:")
        for c in report.sft_classes:
            lines.append(
                f"  {c.vertex}: {c.kind.value} (k={c.k}, indegree={c.indegree}, "
                f"outdegree={c.outdegree}, in_weight={c.in_weight}, "
                f"out_weight={c.out_weight})")
    if graph is not None:
        from .checker import _label_desc
        from .graph import degree_profile
        lines.append("vertices:")
        for v in graph.vertices:
            p = degree_profile(graph, v.id)
            lines.append(
                f"  {v.id}: {_label_desc(v.label)}, indegree={p.indegree}, "
                f"outdegree={p.outdegree}, in_weights={list(p.in_weights)}, "
                f"out_weights={list(p.out_weights)}")
    outcome = "REALIZABLE" if report.realizable else "NOT REALIZABLE"
    lines.append(f"verdict: {outcome} on {report.target.value}")
    return "\n".join(lines) + "\n"


def _report_json(report: CheckReport) -> str:
    s = report.structure
    doc = {
        "target": report.target.value,
        "realizable": report.realizable,
        "beta": report.beta,
        "structure": {
            "nonempty": s.nonempty,
            "connected": s.connected,
            "oriented_acyclic": s.oriented_acyclic,
            "violations": list(s.violations),
        },
        "conditions": [
            {
                "id": v.condition,
                "status": v.status,
                "witnesses": [{"ref": w.ref, "message": w.message}
                              for w in v.witnesses],
            }
            for v in report.verdicts
        ],
        "sft_vertices": [
            {
                "vertex": c.vertex,
                "class": c.kind.value,
                "k": c.k,
                "indegree": c.indegree,
                "outdegree": c.outdegree,
                "in_weight": c.in_weight,
                "out_weight": c.out_weight,
            }
            for c in report.sft_classes
        ],
    }
    return json.dumps(doc, indent=2) + "\n"
