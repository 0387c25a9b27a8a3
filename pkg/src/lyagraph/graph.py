"""Abstract Lyapunov graphs: labeled oriented multigraphs with weighted edges.

A graph is a finite oriented multigraph whose vertices carry one of four
label kinds (an index-0..3 singularity, an attracting or repelling periodic
orbit, or the suspension of a subshift of finite type given by a square
nonnegative integer matrix) and whose edges carry nonnegative weights (the
genus of the level surface the edge represents).

All values are immutable; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple, Sequence, Union

from .linalg import IntMatrix


@dataclass(frozen=True)
class Singularity:
    """Rest point of index 0 (sink) through 3 (source)."""

    index: int

    def __post_init__(self):
        if self.index not in (0, 1, 2, 3):
            raise ValueError(f"singularity index must be 0..3, got {self.index}")


@dataclass(frozen=True)
class AttractingOrbit:
    """Attracting periodic orbit (sink vertex label)."""


@dataclass(frozen=True)
class RepellingOrbit:
    """Repelling periodic orbit (source vertex label)."""


@dataclass(frozen=True)
class SuspensionSFT:
    """Suspension of the subshift of finite type with the given matrix."""

    matrix: IntMatrix

    def __post_init__(self):
        if not self.matrix.is_square:
            raise ValueError("subshift matrix must be square")
        if any(e < 0 for e in self.matrix.entries):
            raise ValueError("subshift matrix entries must be nonnegative")


VertexLabel = Union[Singularity, AttractingOrbit, RepellingOrbit, SuspensionSFT]

_LABEL_KINDS = (Singularity, AttractingOrbit, RepellingOrbit, SuspensionSFT)


class Vertex(NamedTuple):
    id: str
    label: VertexLabel


class Edge(NamedTuple):
    src: str
    dst: str
    weight: int


@dataclass(frozen=True)
class LyapunovGraph:
    """Oriented multigraph with labeled vertices and weighted edges.

    Construction enforces the structural invariants that make the value
    well-formed (unique ids, known endpoints, nonnegative weights, no
    self-loops); connectivity and acyclicity are reported by
    :func:`validate_structure`, not raised here.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        ids = set()
        for v in self.vertices:
            if v.id in ids:
                raise ValueError(f"duplicate vertex id {v.id!r}")
            ids.add(v.id)
            if not isinstance(v.label, _LABEL_KINDS):
                raise ValueError(f"unsupported vertex label {v.label!r}")
        for e in self.edges:
            if e.src not in ids:
                raise ValueError(f"edge references unknown vertex {e.src!r}")
            if e.dst not in ids:
                raise ValueError(f"edge references unknown vertex {e.dst!r}")
            if e.src == e.dst:
                raise ValueError(f"self-loop at {e.src!r} is an oriented cycle")
            if not isinstance(e.weight, int) or isinstance(e.weight, bool) or e.weight < 0:
                raise ValueError(f"edge weight must be a nonnegative int, got {e.weight!r}")

    @classmethod
    def build(
        cls,
        vertices: Sequence[tuple[str, VertexLabel]],
        edges: Sequence[tuple[str, str, int]] = (),
    ) -> "LyapunovGraph":
        return cls(
            tuple(Vertex(i, l) for i, l in vertices),
            tuple(Edge(s, d, w) for s, d, w in edges),
        )

    @cached_property
    def label_map(self) -> dict[str, VertexLabel]:
        return {v.id: v.label for v in self.vertices}

    @cached_property
    def structure_flags(self) -> tuple[bool, bool]:
        """(connected, oriented_acyclic), cached per instance."""
        return _structure_flags(self)

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)


@dataclass(frozen=True)
class DegreeProfile:
    """Edge and weight counts at a single vertex, in declaration order."""

    indegree: int
    outdegree: int
    in_weight: int
    out_weight: int
    in_weights: tuple[int, ...]
    out_weights: tuple[int, ...]


@dataclass(frozen=True)
class StructureReport:
    """Verdicts of the structural checks, with one finding per violation."""

    connected: bool
    oriented_acyclic: bool
    nonempty: bool
    violations: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return self.connected and self.oriented_acyclic and self.nonempty


def validate_structure(g: LyapunovGraph) -> StructureReport:
    """Report whether g is nonempty, connected, and free of oriented cycles."""
    violations: list[str] = []

    nonempty = len(g.vertices) > 0
    if not nonempty:
        violations.append("graph has no vertices")

    connected, acyclic = g.structure_flags
    if nonempty and not connected:
        unreachable = _first_unreachable(g)
        violations.append(
            f"graph is not connected: vertex {unreachable!r} is not linked to "
            f"{g.vertices[0].id!r}"
        )
    if not acyclic:
        cycle = _find_cycle(g)
        violations.append("oriented cycle: " + " -> ".join(cycle))

    return StructureReport(connected, acyclic, nonempty, tuple(violations))


def _structure_flags(g: LyapunovGraph) -> tuple[bool, bool]:
    """(connected, acyclic) in one pass over the edges."""
    n = len(g.vertices)
    if n == 0:
        return False, True
    idx = {v.id: i for i, v in enumerate(g.vertices)}
    adj: list[list[int]] = [[] for _ in range(n)]
    out: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for src, dst, _ in g.edges:
        a, b = idx[src], idx[dst]
        adj[a].append(b)
        adj[b].append(a)
        out[a].append(b)
        indeg[b] += 1

    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)

    queue = [i for i in range(n) if indeg[i] == 0]
    removed = 0
    while queue:
        u = queue.pop()
        removed += 1
        for w in out[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return count == n, removed == n


def cycle_rank(g: LyapunovGraph) -> int:
    """Edges removable without disconnecting: |E| - |V| + 1 for connected graphs."""
    if not g.vertices or not _is_connected(g):
        raise ValueError("cycle rank is defined for connected graphs only")
    return len(g.edges) - len(g.vertices) + 1


def degree_profile(g: LyapunovGraph, vertex_id: str) -> DegreeProfile:
    """Incoming/outgoing edge counts and weights at one vertex."""
    if vertex_id not in g.label_map:
        raise KeyError(f"unknown vertex id {vertex_id!r}")
    in_w = []
    out_w = []
    for e in g.edges:
        if e.dst == vertex_id:
            in_w.append(e.weight)
        if e.src == vertex_id:
            out_w.append(e.weight)
    return DegreeProfile(
        indegree=len(in_w),
        outdegree=len(out_w),
        in_weight=sum(in_w),
        out_weight=sum(out_w),
        in_weights=tuple(in_w),
        out_weights=tuple(out_w),
    )


def reverse(g: LyapunovGraph) -> LyapunovGraph:
    """Time reversal: flip every edge and swap attracting/repelling roles.

    Singularity indices map to 3 - index, orbit labels swap, and subshift
    matrices transpose; edge weights and declaration order are preserved.
    """
    return LyapunovGraph(
        tuple(Vertex(v.id, _reverse_label(v.label)) for v in g.vertices),
        tuple(Edge(e.dst, e.src, e.weight) for e in g.edges),
    )


@lru_cache(maxsize=4096)
def _reverse_label(label: VertexLabel) -> VertexLabel:
    if isinstance(label, Singularity):
        return Singularity(3 - label.index)
    if isinstance(label, AttractingOrbit):
        return RepellingOrbit()
    if isinstance(label, RepellingOrbit):
        return AttractingOrbit()
    return SuspensionSFT(label.matrix.transpose())


def _index_of(g: LyapunovGraph) -> dict[str, int]:
    return {v.id: i for i, v in enumerate(g.vertices)}


def _is_connected(g: LyapunovGraph) -> bool:
    return len(g.vertices) > 0 and g.structure_flags[0]


def _first_unreachable(g: LyapunovGraph) -> str:
    n = len(g.vertices)
    idx = _index_of(g)
    adj: list[list[int]] = [[] for _ in range(n)]
    for e in g.edges:
        a, b = idx[e.src], idx[e.dst]
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    for i, v in enumerate(g.vertices):
        if not seen[i]:
            return v.id
    raise AssertionError("graph is connected")


def _find_cycle(g: LyapunovGraph) -> list[str]:
    """Name one oriented cycle of a graph known to be cyclic.

    Peeling zero-indegree vertices leaves everything on or downstream of a
    cycle; peeling zero-outdegree vertices leaves everything on or upstream.
    Inside the intersection every vertex keeps an out-neighbor that is also
    in the intersection, so a forward walk must close up.
    """
    idx = _index_of(g)
    n = len(g.vertices)
    out: list[list[int]] = [[] for _ in range(n)]
    into: list[list[int]] = [[] for _ in range(n)]
    for e in g.edges:
        out[idx[e.src]].append(idx[e.dst])
        into[idx[e.dst]].append(idx[e.src])

    def survivors(fwd: list[list[int]], bwd: list[list[int]]) -> list[bool]:
        deg = [len(bwd[i]) for i in range(n)]
        queue = [i for i in range(n) if deg[i] == 0]
        alive = [True] * n
        while queue:
            u = queue.pop()
            alive[u] = False
            for w in fwd[u]:
                deg[w] -= 1
                if deg[w] == 0:
                    queue.append(w)
        return alive

    down = survivors(out, into)
    up = survivors(into, out)
    core = [down[i] and up[i] for i in range(n)]

    start = next(i for i in range(n) if core[i])
    seen_at = {start: 0}
    path = [start]
    cur = start
    while True:
        cur = next(w for w in out[cur] if core[w])
        if cur in seen_at:
            cycle = path[seen_at[cur]:] + [cur]
            return [g.vertices[i].id for i in cycle]
        seen_at[cur] = len(path)
        path.append(cur)
