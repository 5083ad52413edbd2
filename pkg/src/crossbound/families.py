"""Generators for the graph families with their canonical decompositions.

Each generator returns the graph together with a transitive decomposition
whose witnesses are found by the verifier, so every emitted decomposition
is checked, not assumed.
"""

from __future__ import annotations

import dataclasses
from typing import Optional

from .config import DEFAULT_CONFIG, RunConfig
from .errors import CrossboundError
from .graphs import (
    Edge,
    Graph,
    TransitiveDecomposition,
    edge,
    verify_transitive_decomposition,
)


@dataclasses.dataclass(frozen=True)
class Tile:
    """A graph with two equal-length boundary sequences (left and right).

    Entries may repeat.  Chaining tiles joins the j-th right vertex of one
    copy to the j-th left vertex of the next.
    """

    graph: Graph
    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        if len(self.left) != len(self.right):
            raise ValueError("left and right sequences must have equal length")
        vs = set(self.graph.vertices)
        for v in (*self.left, *self.right):
            if v not in vs:
                raise ValueError(f"boundary vertex {v} not in tile graph")

    @property
    def width(self) -> int:
        return len(self.left)


def petersen(
    n: int,
    k: int,
    decomposition: str = "rotation",
    config: RunConfig = DEFAULT_CONFIG,
) -> tuple[Graph, TransitiveDecomposition]:
    """Generalized Petersen graph P(n, k) with a verified decomposition.

    Vertices: outer u_i are 1..n, inner v_i are n+1..2n.  Edges are
    u_i u_{i+1}, u_i v_i, v_i v_{i+k} (indices mod n).

    decomposition="rotation" gives the n single-rotation parts
    E_i = {u_i u_{i+1}, u_i v_i, v_i v_{i+k}}.  decomposition="paired" is
    available exactly for n = 4h+2, k = 2h and pairs antipodal rotations
    F_i = E_i ∪ E_{i+2h+1}, giving t = 2h+1 parts.
    """
    if not (3 <= n and 1 <= k < n):
        raise ValueError("need n >= 3 and 1 <= k < n")
    if 2 * k == n:
        raise ValueError(
            "2k = n collapses antipodal inner edges; not supported"
        )

    def u(i: int) -> int:
        return i % n + 1

    def v(i: int) -> int:
        return n + i % n + 1

    rotations = [
        frozenset({edge(u(i), u(i + 1)), edge(u(i), v(i)), edge(v(i), v(i + k))})
        for i in range(n)
    ]
    g = Graph.build(range(1, 2 * n + 1), [e for part in rotations for e in part])

    if decomposition == "rotation":
        parts: list[frozenset[Edge]] = rotations
    elif decomposition == "paired":
        if n % 4 != 2 or k != (n - 2) // 2:
            raise ValueError("paired decomposition needs n = 4h+2, k = 2h")
        h = k // 2
        parts = [rotations[i] | rotations[i + 2 * h + 1] for i in range(2 * h + 1)]
    else:
        raise ValueError(f"unknown decomposition {decomposition!r}")
    return g, verify_transitive_decomposition(g, parts, config)


def petersen_deletion_sets(n: int, k: int) -> list[frozenset[Edge]]:
    """Spoke quadruples whose deletion leaves a subdivision of P(n-4, k-2).

    For P(4h+2, 2h) these are the deletion sets of the family pruning
    rule: {spoke_i, spoke_{i+1}, spoke_{i+2h+1}, spoke_{i+2h+2}} and
    {spoke_i, spoke_{i+1}, spoke_{i+2h+2}, spoke_{i+2h+3}} for every i.
    """
    if n % 4 != 2 or k != (n - 2) // 2:
        raise ValueError("deletion sets are defined for P(4h+2, 2h)")

    def spoke(i: int) -> Edge:
        return edge(i % n + 1, n + i % n + 1)

    out: list[frozenset[Edge]] = []
    seen = set()
    for off2, off3 in ((k + 1, k + 2), (k + 2, k + 3)):
        for i in range(n):
            s = frozenset(
                {spoke(i), spoke(i + 1), spoke(i + off2), spoke(i + off3)}
            )
            if s not in seen:
                seen.add(s)
                out.append(s)
    return out


def complete_odd(
    r: int, config: RunConfig = DEFAULT_CONFIG
) -> tuple[Graph, TransitiveDecomposition]:
    """K_{2r+1} with the star-window decomposition into 2r+1 parts.

    Part i holds the edges from v_i to the next r vertices around the
    cycle, so every edge lands in exactly one part.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    n = 2 * r + 1

    def v(i: int) -> int:
        return (i - 1) % n + 1

    parts = [
        frozenset(edge(v(i), v(i + j)) for j in range(1, r + 1))
        for i in range(1, n + 1)
    ]
    g = Graph.build(range(1, n + 1), [e for p in parts for e in p])
    return g, verify_transitive_decomposition(g, parts, config)


def cycle_family(
    n: int, config: RunConfig = DEFAULT_CONFIG
) -> tuple[Graph, TransitiveDecomposition]:
    """C_n with one part per edge."""
    if n < 3:
        raise ValueError("need n >= 3")
    parts = [frozenset({edge(i, i % n + 1)}) for i in range(1, n + 1)]
    g = Graph.build(range(1, n + 1), [e for p in parts for e in p])
    return g, verify_transitive_decomposition(g, parts, config)


def tile_power_close(
    q: Tile,
    t: int,
    want_decomposition: bool = True,
    config: RunConfig = DEFAULT_CONFIG,
) -> tuple[Graph, Optional[TransitiveDecomposition]]:
    """Close the chain of t disjoint copies of ``q`` into a periodic graph.

    Copy i occupies vertex ids offset by (i-1)·|V(q)|; external edges join
    the j-th right vertex of copy i to the j-th left vertex of copy i+1,
    and of copy t back to copy 1.  The closure is rejected when it would
    create a loop or a parallel edge (the engine is simple-graph only).

    The decomposition assigns copy i plus its following external bundle
    to part i; it needs t >= 3 (with t = 2 the closure is still built but
    no decomposition is returned).
    """
    if t < 2:
        raise ValueError("need t >= 2")
    base_vs = sorted(q.graph.vertices)
    index = {v: i for i, v in enumerate(base_vs)}
    nv = len(base_vs)

    def copy_vertex(copy: int, v: int) -> int:
        return copy * nv + index[v] + 1

    vertices = range(1, t * nv + 1)
    internal: list[list[Edge]] = [[] for _ in range(t)]
    for c in range(t):
        for u, v in q.graph.edges:
            internal[c].append(edge(copy_vertex(c, u), copy_vertex(c, v)))
    external: list[list[Edge]] = [[] for _ in range(t)]
    all_edges: set[Edge] = {e for es in internal for e in es}
    for c in range(t):
        nxt = (c + 1) % t
        for j in range(q.width):
            a = copy_vertex(c, q.right[j])
            b = copy_vertex(nxt, q.left[j])
            if a == b:
                raise CrossboundError(
                    f"closure creates a loop at boundary position {j}"
                )
            e = edge(a, b)
            if e in all_edges:
                raise CrossboundError(
                    f"closure creates a parallel edge {e} at position {j}"
                )
            all_edges.add(e)
            external[c].append(e)
    g = Graph.build(
        vertices, [e for es in internal for e in es] + [e for es in external for e in es]
    )
    if not want_decomposition:
        return g, None
    if t < 3:
        raise CrossboundError(
            "the copy-plus-bundle decomposition needs t >= 3"
        )
    parts = [frozenset(internal[c]) | frozenset(external[c]) for c in range(t)]
    return g, verify_transitive_decomposition(g, parts, config)


def single_vertex_tile() -> Tile:
    """The one-vertex tile whose closed powers are cycles."""
    g = Graph.build([1], [])
    return Tile(g, (1,), (1,))


def edge_tile(twisted: bool = False) -> Tile:
    """Width-2 tile on one edge; closed powers are circular (or Moebius)
    ladders.  The twisted power at t = 3 is K_{3,3}."""
    g = Graph.build([1, 2], [(1, 2)])
    return Tile(g, (1, 2), (2, 1) if twisted else (1, 2))


def parse_tile(text: str) -> Tile:
    """Tile file: a graph block followed by 'l v1 v2 ...' and 'r v1 v2 ...'."""
    from .errors import FormatError
    from .graphs import parse_graph

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    l_line = [ln for ln in lines if ln.startswith("l ")]
    r_line = [ln for ln in lines if ln.startswith("r ")]
    if len(l_line) != 1 or len(r_line) != 1:
        raise FormatError("tile file needs exactly one 'l' and one 'r' line")
    graph_text = "\n".join(
        ln for ln in lines if not (ln.startswith("l ") or ln.startswith("r "))
    )
    g = parse_graph(graph_text)
    left = tuple(int(x) for x in l_line[0].split()[1:])
    right = tuple(int(x) for x in r_line[0].split()[1:])
    return Tile(g, left, right)


def serialize_tile(q: Tile) -> str:
    lines = [q.graph.canonical_text().rstrip("\n")]
    lines.append("l " + " ".join(str(v) for v in q.left))
    lines.append("r " + " ".join(str(v) for v in q.right))
    return "\n".join(lines) + "\n"
