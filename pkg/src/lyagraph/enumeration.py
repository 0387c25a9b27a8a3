"""Bounded enumeration and seeded random generation of valid Lyapunov graphs.

The enumerator yields every connected, oriented-acyclic labeled multigraph
within the given bounds, in a fixed lexicographic order (vertex count, then
edge multiset, then weight assignment, then label assignment), with no
isomorphism reduction.  Expected yield is computed in closed form up front
so oversized bounds are rejected before any work is done.

Counting folds may be partitioned across worker processes by structure
index; totals are additive, so results are independent of worker count.
"""

from __future__ import annotations

import multiprocessing
import random
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import comb
from typing import Iterator, Sequence

from .checker import Target, check
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

DEFAULT_BUDGET = 10_000_000

DEFAULT_SFT_MATRICES: tuple[IntMatrix, ...] = (
    IntMatrix.from_rows([[1]]),
    IntMatrix.from_rows([[2]]),
    IntMatrix.from_rows([[1, 1], [1, 1]]),
    IntMatrix.from_rows([[1, 0], [0, 1]]),
)


def default_label_pool(
    matrices: Sequence[IntMatrix] = DEFAULT_SFT_MATRICES,
) -> tuple[VertexLabel, ...]:
    """Every label kind: the four singularities, both orbits, one subshift per matrix."""
    return (
        Singularity(0),
        Singularity(1),
        Singularity(2),
        Singularity(3),
        AttractingOrbit(),
        RepellingOrbit(),
    ) + tuple(SuspensionSFT(m) for m in matrices)


class BudgetExceededError(Exception):
    """Bounds would yield more graphs than the safety budget allows."""


@dataclass(frozen=True)
class EnumerationBounds:
    max_vertices: int
    max_weight: int
    max_parallel_edges: int
    label_pool: tuple[VertexLabel, ...]

    def __post_init__(self):
        if self.max_vertices < 1:
            raise ValueError("max_vertices must be at least 1")
        if self.max_weight < 0:
            raise ValueError("max_weight must be nonnegative")
        if self.max_parallel_edges < 1:
            raise ValueError("max_parallel_edges must be at least 1")
        if not self.label_pool:
            raise ValueError("label pool must be nonempty")


# ---------------------------------------------------------------------------
# Closed-form yield: connected DAGs counted by number of arcs
# ---------------------------------------------------------------------------

def _poly_add(a: list[int], b: list[int], scale: int = 1) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] += scale * c
    return out

def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _connected_dag_polys(max_n: int) -> list[list[int]]:
    """polys[n][s] = number of weakly connected DAGs on n labeled vertices with s arcs.

    DAG counts come from the inclusion-exclusion over vertex subsets with no
    incoming arcs; connected counts follow by peeling off the component of
    the first vertex.
    """
    dag: list[list[int]] = [[1]]
    for n in range(1, max_n + 1):
        acc: list[int] = [0]
        for k in range(1, n + 1):
            # (1+x)^(k(n-k)) counts optional arcs from the k in-arc-free
            # vertices to the rest.
            e = k * (n - k)
            cross = [comb(e, s) for s in range(e + 1)]
            term = _poly_mul(cross, dag[n - k])
            acc = _poly_add(acc, term, scale=(-1) ** (k + 1) * comb(n, k))
        dag.append(acc)

    conn: list[list[int]] = [[0], dag[1]]
    for n in range(2, max_n + 1):
        acc = list(dag[n])
        for k in range(1, n):
            term = _poly_mul(conn[k], dag[n - k])
            acc = _poly_add(acc, term, scale=-comb(n - 1, k - 1))
        conn.append(acc)
    return conn


def expected_yield(b: EnumerationBounds) -> int:
    """Exact number of graphs the bounds admit, computed without enumerating."""
    # Weighted multiplicity choices for one present arc: mu parallel copies
    # carry a multiset of mu weights drawn from 0..max_weight.
    arc_weight = sum(
        comb(b.max_weight + mu, mu) for mu in range(1, b.max_parallel_edges + 1)
    )
    labels = len(b.label_pool)
    polys = _connected_dag_polys(b.max_vertices)
    total = 0
    for n in range(1, b.max_vertices + 1):
        structures = sum(c * arc_weight**s for s, c in enumerate(polys[n]))
        total += labels**n * structures
    return total


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _arc_list(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def _support_ok(n: int, support: list[tuple[int, int]]) -> bool:
    """Connected as an undirected graph and free of directed cycles."""
    if n == 1:
        return True
    adj: list[list[int]] = [[] for _ in range(n)]
    out: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for i, j in support:
        adj[i].append(j)
        adj[j].append(i)
        out[i].append(j)
        indeg[j] += 1
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
    if count != n:
        return False
    queue = [i for i in range(n) if indeg[i] == 0]
    removed = 0
    while queue:
        u = queue.pop()
        removed += 1
        for w in out[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return removed == n


def _structures(b: EnumerationBounds) -> Iterator[tuple[int, tuple[int, ...]]]:
    """All (vertex count, arc multiplicity vector) pairs, lexicographically."""
    for n in range(1, b.max_vertices + 1):
        arcs = _arc_list(n)
        for mult in product(range(b.max_parallel_edges + 1), repeat=len(arcs)):
            support = [arcs[a] for a in range(len(arcs)) if mult[a]]
            if len(support) >= n - 1 and _support_ok(n, support):
                yield n, mult


def _graphs_of(
    b: EnumerationBounds, n: int, mult: tuple[int, ...]
) -> Iterator[LyapunovGraph]:
    """All weight and label assignments over one structure, lexicographically."""
    ids = tuple(f"v{i + 1}" for i in range(n))
    arcs = _arc_list(n)
    present = [(arcs[a], mult[a]) for a in range(len(arcs)) if mult[a]]
    weight_choices = [
        list(combinations_with_replacement(range(b.max_weight + 1), m))
        for _, m in present
    ]
    pool = b.label_pool
    for weights in product(*weight_choices):
        edges = tuple(
            Edge(ids[i], ids[j], w)
            for ((i, j), _), ws in zip(present, weights)
            for w in ws
        )
        for labels in product(pool, repeat=n):
            vertices = tuple(Vertex(ids[i], labels[i]) for i in range(n))
            yield LyapunovGraph(vertices, edges)


def enumerate_graphs(
    b: EnumerationBounds, budget: int | None = None
) -> Iterator[LyapunovGraph]:
    """Every graph within the bounds, in a fixed deterministic order.

    Raises BudgetExceededError up front when the bounds admit more graphs
    than the safety budget (default 10**7).
    """
    cap = DEFAULT_BUDGET if budget is None else budget
    total = expected_yield(b)
    if total > cap:
        raise BudgetExceededError(
            f"bounds admit {total} graphs, above the safety budget of {cap}"
        )
    for n, mult in _structures(b):
        yield from _graphs_of(b, n, mult)


def random_graph(seed: int, b: EnumerationBounds) -> LyapunovGraph:
    """One structurally valid graph drawn with a Mersenne Twister stream.

    Uses random.Random(seed); the draw sequence is fixed, so identical
    (seed, bounds) always produce the identical graph.  No uniformity over
    the enumeration is promised.
    """
    rng = random.Random(seed)
    n = rng.randint(1, b.max_vertices)
    ids = tuple(f"v{i + 1}" for i in range(n))
    order = list(range(n))
    rng.shuffle(order)

    mult: dict[tuple[int, int], int] = {}
    # Tie each vertex to an earlier one in topological order: connected, acyclic.
    for pos in range(1, n):
        parent = order[rng.randrange(pos)]
        mult[(parent, order[pos])] = 1
    for pi in range(n):
        for pj in range(pi + 1, n):
            arc = (order[pi], order[pj])
            room = b.max_parallel_edges - mult.get(arc, 0)
            if room > 0 and rng.random() < 0.35:
                mult[arc] = mult.get(arc, 0) + rng.randint(1, room)

    edges = []
    for (i, j) in sorted(mult):
        for _ in range(mult[(i, j)]):
            edges.append(Edge(ids[i], ids[j], rng.randint(0, b.max_weight)))
    vertices = tuple(Vertex(ids[i], rng.choice(b.label_pool)) for i in range(n))
    return LyapunovGraph(vertices, tuple(edges))


def count_realizable(
    b: EnumerationBounds,
    target: Target,
    workers: int = 1,
    budget: int | None = None,
) -> tuple[int, int]:
    """Fold check() over the enumeration: (total graphs, realizable graphs)."""
    cap = DEFAULT_BUDGET if budget is None else budget
    total_expected = expected_yield(b)
    if total_expected > cap:
        raise BudgetExceededError(
            f"bounds admit {total_expected} graphs, above the safety budget of {cap}"
        )
    structures = list(_structures(b))
    if workers <= 1:
        return _count_chunk((b, target, structures))
    chunks = [structures[i::workers] for i in range(workers)]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(workers) as pool:
        parts = pool.map(_count_chunk, [(b, target, ch) for ch in chunks])
    return sum(t for t, _ in parts), sum(r for _, r in parts)


def _count_chunk(args) -> tuple[int, int]:
    b, target, structures = args
    total = 0
    realizable = 0
    for n, mult in structures:
        for g in _graphs_of(b, n, mult):
            total += 1
            if check(g, target).realizable:
                realizable += 1
    return total, realizable
