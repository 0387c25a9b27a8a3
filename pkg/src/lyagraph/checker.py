"""Realizability of abstract Lyapunov graphs as Smale flows on S2xS1 or S3.

The checker evaluates five verdicts per graph: STRUCT (nonempty, connected,
no oriented cycles; for S3 also cycle rank 0) and the four conditions C1-C4
(sink/source shape, index-1/2 singularity degrees, the subshift-vertex
degree bounds, and the Poincare-Hopf balance).  Verdicts are computed
independently, never short-circuited, so a report lists every failing
condition with witnesses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .graph import (
    AttractingOrbit,
    LyapunovGraph,
    RepellingOrbit,
    Singularity,
    SuspensionSFT,
    VertexLabel,
    cycle_rank,
    validate_structure,
)
from .graph import StructureReport
from .invariants import k_invariant
from .linalg import IntMatrix

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"

STRUCT = "STRUCT"
C1 = "C1"
C2 = "C2"
C3 = "C3"
C4 = "C4"

GRAPH_REF = "graph"


class Target(enum.Enum):
    """Closed 3-manifold the flow should live on."""

    S2XS1 = "S2xS1"
    S3 = "S3"


class SftClass(enum.Enum):
    """How a subshift vertex relates to the degree bounds.

    INEQUALITY: indegree and outdegree both land in [k+1-weight, k+1].
    EQUALITY:   indegree = k - out_weight and outdegree = k - in_weight,
                one unit below the inequality window.
    NEITHER:    outside both cases.
    """

    INEQUALITY = "inequality"
    EQUALITY = "equality"
    NEITHER = "neither"


class Witness(NamedTuple):
    ref: str
    message: str


@dataclass(frozen=True)
class SftVertexClass:
    vertex: str
    kind: SftClass
    k: int
    indegree: int
    outdegree: int
    in_weight: int
    out_weight: int


@dataclass(frozen=True)
class ConditionVerdict:
    condition: str
    status: str
    witnesses: tuple[Witness, ...]

    def __post_init__(self):
        if self.status == FAIL and not self.witnesses:
            raise ValueError("failing verdict requires at least one witness")


@dataclass(frozen=True)
class CheckReport:
    target: Target
    structure: StructureReport
    beta: int | None
    verdicts: tuple[ConditionVerdict, ...]
    sft_classes: tuple[SftVertexClass, ...]
    realizable: bool


_cached_k = lru_cache(maxsize=None)(k_invariant)

# profile entry: (indegree, outdegree, in_weight, out_weight)
_Profile = tuple[int, int, int, int]


def _profiles(g: LyapunovGraph) -> dict[str, list[int]]:
    prof = {v.id: [0, 0, 0, 0] for v in g.vertices}
    for src, dst, w in g.edges:
        p = prof[dst]
        p[0] += 1
        p[2] += w
        p = prof[src]
        p[1] += 1
        p[3] += w
    return prof


def _label_desc(label: VertexLabel) -> str:
    if isinstance(label, Singularity):
        return f"index-{label.index} singularity"
    if isinstance(label, AttractingOrbit):
        return "attracting orbit"
    if isinstance(label, RepellingOrbit):
        return "repelling orbit"
    m = label.matrix
    return f"subshift suspension ({m.rows}x{m.cols} matrix)"


def check_condition1(g: LyapunovGraph) -> ConditionVerdict:
    """Sinks and sources carry exactly one edge and the matching label.

    A sink (outdegree 0) must have exactly one incoming edge and be labelled
    with an index-0 singularity or an attracting orbit; dually for sources.
    Conversely, those four labels only sit on such vertices, and a subshift
    vertex must have both incoming and outgoing edges.
    """
    return _condition1(g, _profiles(g))


def _condition1(g: LyapunovGraph, prof) -> ConditionVerdict:
    witnesses: list[Witness] = []
    for vid, label in g.vertices:
        ind, outd, _, _ = prof[vid]
        kind = type(label)
        if outd == 0:
            if ind != 1:
                witnesses.append(Witness(
                    vid, f"sink vertex must have exactly one incoming edge, has {ind}"))
            if not (kind is AttractingOrbit
                    or (kind is Singularity and label.index == 0)):
                witnesses.append(Witness(
                    vid,
                    f"sink vertex must be an index-0 singularity or attracting "
                    f"orbit, got {_label_desc(label)}"))
        elif kind is AttractingOrbit or (
                kind is Singularity and label.index == 0):
            witnesses.append(Witness(
                vid,
                f"{_label_desc(label)} must be a sink, but vertex has "
                f"outdegree {outd}"))
        if ind == 0:
            if outd != 1:
                witnesses.append(Witness(
                    vid, f"source vertex must have exactly one outgoing edge, has {outd}"))
            if not (kind is RepellingOrbit
                    or (kind is Singularity and label.index == 3)):
                witnesses.append(Witness(
                    vid,
                    f"source vertex must be an index-3 singularity or repelling "
                    f"orbit, got {_label_desc(label)}"))
        elif kind is RepellingOrbit or (
                kind is Singularity and label.index == 3):
            witnesses.append(Witness(
                vid,
                f"{_label_desc(label)} must be a source, but vertex has "
                f"indegree {ind}"))
        if kind is SuspensionSFT and (ind == 0 or outd == 0):
            witnesses.append(Witness(
                vid,
                f"subshift vertex needs incoming and outgoing edges "
                f"(indegree {ind}, outdegree {outd})"))
    status = FAIL if witnesses else PASS
    return ConditionVerdict(C1, status, tuple(witnesses))


def check_condition2(g: LyapunovGraph) -> ConditionVerdict:
    """Index-2 singularities: 1 <= indegree <= 2 and outdegree 1; index-1 dually."""
    return _condition2(g, _profiles(g))


def _condition2(g: LyapunovGraph, prof) -> ConditionVerdict:
    witnesses: list[Witness] = []
    for vid, label in g.vertices:
        if type(label) is not Singularity or label.index not in (1, 2):
            continue
        ind, outd, _, _ = prof[vid]
        if label.index == 2 and not (1 <= ind <= 2 and outd == 1):
            witnesses.append(Witness(
                vid,
                f"index-2 singularity needs indegree 1 or 2 and outdegree 1, "
                f"has indegree {ind}, outdegree {outd}"))
        if label.index == 1 and not (ind == 1 and 1 <= outd <= 2):
            witnesses.append(Witness(
                vid,
                f"index-1 singularity needs indegree 1 and outdegree 1 or 2, "
                f"has indegree {ind}, outdegree {outd}"))
    status = FAIL if witnesses else PASS
    return ConditionVerdict(C2, status, tuple(witnesses))


def check_poincare_hopf(g: LyapunovGraph) -> ConditionVerdict:
    """Per-vertex balance: indegree - outdegree - in_weight + out_weight.

    Equals (-1)^r at an index-r singularity and 0 at orbit and subshift
    vertices.
    """
    return _condition4(g, _profiles(g))


def _condition4(g: LyapunovGraph, prof) -> ConditionVerdict:
    witnesses: list[Witness] = []
    for vid, label in g.vertices:
        ind, outd, win, wout = prof[vid]
        rhs = ind - outd - win + wout
        if type(label) is Singularity:
            lhs = 1 if label.index % 2 == 0 else -1
            side = f"(-1)^{label.index} = {lhs}"
        else:
            lhs = 0
            side = "0"
        if lhs != rhs:
            witnesses.append(Witness(
                vid,
                f"balance violated: {side} but indegree - outdegree - in_weight "
                f"+ out_weight = {ind} - {outd} - {win} + {wout} = {rhs}"))
    status = FAIL if witnesses else PASS
    return ConditionVerdict(C4, status, tuple(witnesses))


def classify_sft_vertex(g: LyapunovGraph, vertex_id: str) -> SftVertexClass:
    """Place one subshift vertex in the equality/inequality/neither trichotomy."""
    label = g.label_map.get(vertex_id)
    if label is None:
        raise KeyError(f"unknown vertex id {vertex_id!r}")
    if not isinstance(label, SuspensionSFT):
        raise ValueError(f"vertex {vertex_id!r} is not labelled with a subshift")
    return _classify(vertex_id, label.matrix, _profiles(g)[vertex_id])


def _classify(vid: str, matrix: IntMatrix, profile) -> SftVertexClass:
    ind, outd, win, wout = profile
    k = _cached_k(matrix)
    equality = (k - wout == ind) and (k - win == outd)
    inequality = (
        k + 1 - wout <= ind <= k + 1
        and k + 1 - win <= outd <= k + 1
    )
    # The equality case sits strictly below the inequality window.
    assert not (equality and inequality), (vid, k, profile)
    if equality:
        kind = SftClass.EQUALITY
    elif inequality:
        kind = SftClass.INEQUALITY
    else:
        kind = SftClass.NEITHER
    return SftVertexClass(vid, kind, k, ind, outd, win, wout)


def _class_detail(c: SftVertexClass) -> str:
    return (f"k={c.k}, indegree={c.indegree}, outdegree={c.outdegree}, "
            f"in_weight={c.in_weight}, out_weight={c.out_weight}")


def check_condition3_s2xs1(g: LyapunovGraph) -> ConditionVerdict:
    """Subshift-vertex rule for the S2xS1 target.

    With a cycle (rank 1) every subshift vertex must land in the inequality
    window; on a tree at most one vertex may take the equality case, the
    rest the inequality window, and if no vertex takes the equality case
    some edge must have positive weight.  Cycle rank 2 or more never embeds.
    """
    beta = cycle_rank(g)
    classes = _classify_all(g, _profiles(g))
    return _condition3(Target.S2XS1, g, beta, classes)


def _classify_all(g: LyapunovGraph, prof) -> tuple[SftVertexClass, ...]:
    out = []
    for vid, label in g.vertices:
        if type(label) is SuspensionSFT:
            out.append(_classify(vid, label.matrix, prof[vid]))
    return tuple(out)


def _condition3(target: Target, g: LyapunovGraph, beta: int,
                classes: tuple[SftVertexClass, ...]) -> ConditionVerdict:
    witnesses: list[Witness] = []
    if target is Target.S3 or beta == 1:
        where = ("on S3" if target is Target.S3
                 else "when the graph has a cycle")
        for c in classes:
            if c.kind is not SftClass.INEQUALITY:
                witnesses.append(Witness(
                    c.vertex,
                    f"subshift vertex must satisfy the inequality bounds "
                    f"{where}: {_class_detail(c)}"))
    elif beta >= 2:
        witnesses.append(Witness(
            GRAPH_REF, f"cycle rank {beta} exceeds 1, the genus of S2xS1"))
    else:
        equality = [c for c in classes if c.kind is SftClass.EQUALITY]
        for c in classes:
            if c.kind is SftClass.NEITHER:
                witnesses.append(Witness(
                    c.vertex,
                    f"subshift vertex satisfies neither the inequality bounds "
                    f"nor the equality case: {_class_detail(c)}"))
        if len(equality) > 1:
            for c in equality:
                witnesses.append(Witness(
                    c.vertex,
                    f"at most one subshift vertex may take the equality case; "
                    f"{len(equality)} do ({_class_detail(c)})"))
        if not equality and all(e.weight == 0 for e in g.edges):
            witnesses.append(Witness(
                GRAPH_REF,
                "no subshift vertex takes the equality case and every edge "
                "has weight 0; some edge needs positive weight"))
    status = FAIL if witnesses else PASS
    return ConditionVerdict(C3, status, tuple(witnesses))


def check(g: LyapunovGraph, target: Target) -> CheckReport:
    """Full realizability decision for one graph and one target manifold."""
    structure = validate_structure(g)
    if structure.valid:
        beta = len(g.edges) - len(g.vertices) + 1
    else:
        beta = None

    struct_witnesses = [Witness(GRAPH_REF, v) for v in structure.violations]
    if target is Target.S3 and beta is not None and beta != 0:
        struct_witnesses.append(Witness(
            GRAPH_REF, f"graph must be a tree for S3, cycle rank is {beta}"))
    struct_verdict = ConditionVerdict(
        STRUCT, FAIL if struct_witnesses else PASS, tuple(struct_witnesses))

    if structure.valid:
        prof = _profiles(g)
        classes = _classify_all(g, prof)
        verdicts = (
            struct_verdict,
            _condition1(g, prof),
            _condition2(g, prof),
            _condition3(target, g, beta, classes),
            _condition4(g, prof),
        )
    else:
        classes = ()
        na = tuple(
            ConditionVerdict(cid, NOT_APPLICABLE, ())
            for cid in (C1, C2, C3, C4)
        )
        verdicts = (struct_verdict,) + na

    realizable = all(v.status == PASS for v in verdicts)
    return CheckReport(target, structure, beta, verdicts, classes, realizable)
