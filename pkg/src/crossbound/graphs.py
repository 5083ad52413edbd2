"""Simple graphs, cyclic windows, automorphism search, decomposition checks.

Vertices are dense positive integers (1-based, assigned by input file
order).  Edges are unordered pairs stored as sorted tuples.  All cyclic
part arithmetic is 1-based modulo the part count, mapped back to 1..t.
"""

from __future__ import annotations

import dataclasses
import hashlib
from typing import Iterable, Optional

from .config import DEFAULT_CONFIG, RunConfig
from .errors import (
    DecompositionViolation,
    FormatError,
    InvalidWindowError,
    SizeGuardError,
)

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclasses.dataclass(frozen=True)
class Graph:
    """Simple undirected graph with stable vertex identities.

    Invariants: no loops, no parallel edges, every edge endpoint is a
    declared vertex.
    """

    vertices: tuple[int, ...]
    edges: frozenset[Edge]

    @staticmethod
    def build(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> "Graph":
        vs = tuple(sorted(set(vertices)))
        vset = set(vs)
        es = set()
        for u, v in edges:
            e = edge(u, v)
            if e[0] not in vset or e[1] not in vset:
                raise ValueError(f"edge {e} uses undeclared vertex")
            es.add(e)
        return Graph(vs, frozenset(es))

    @staticmethod
    def from_edges(edges: Iterable[tuple[int, int]]) -> "Graph":
        es = [edge(u, v) for u, v in edges]
        vs = sorted({x for e in es for x in e})
        return Graph(tuple(vs), frozenset(es))

    def __post_init__(self):
        vset = set(self.vertices)
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u},{v}) uses undeclared vertex")

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    def subgraph_of_edges(self, edges: Iterable[Edge]) -> "Graph":
        """Subgraph induced by an edge subset; vertices are the endpoints."""
        es = frozenset(edges)
        missing = es - self.edges
        if missing:
            raise ValueError(f"edges not in graph: {sorted(missing)}")
        vs = tuple(sorted({x for e in es for x in e}))
        return Graph(vs, es)

    def canonical_text(self) -> str:
        lines = [f"p {self.num_vertices} {self.num_edges}"]
        lines += [f"e {u} {v}" for u, v in sorted(self.edges)]
        return "\n".join(lines) + "\n"

    def sha256(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()


@dataclasses.dataclass(frozen=True)
class WindowRef:
    """A cyclic window of consecutive parts: ``length`` parts from ``start``.

    ``start`` is a 1-based part index; the window wraps modulo the part
    count of the decomposition it is applied to.
    """

    start: int
    length: int


@dataclasses.dataclass(frozen=True)
class TransitiveDecomposition:
    """An ordered edge-disjoint cover of ``base`` with shift witnesses.

    ``witnesses[(i, j)]`` is a vertex bijection theta such that for every
    offset l, theta maps the edges of part i+l onto the edges of part j+l
    (indices cyclic).  Witnesses are populated by
    :func:`verify_transitive_decomposition`.
    """

    base: Graph
    parts: tuple[frozenset[Edge], ...]
    witnesses: Optional[dict[tuple[int, int], dict[int, int]]] = None

    @property
    def t(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> frozenset[Edge]:
        """1-based cyclic part access."""
        return self.parts[(i - 1) % self.t]

    def window_edges(self, w: WindowRef) -> frozenset[Edge]:
        if not 1 <= w.length <= self.t:
            raise InvalidWindowError(
                f"window length {w.length} outside 1..{self.t}"
            )
        out: set[Edge] = set()
        for off in range(w.length):
            out |= self.part(w.start + off)
        return frozenset(out)

    def canonical_text(self) -> str:
        lines = [f"t {self.t}"]
        for idx, part in enumerate(self.parts, start=1):
            lines.append(f"part {idx} {len(part)}")
            lines += [f"e {u} {v}" for u, v in sorted(part)]
        return "\n".join(lines) + "\n"

    def sha256(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()


def window_union(d: TransitiveDecomposition, w: WindowRef) -> Graph:
    """Subgraph of the base spanned by ``w.length`` consecutive parts."""
    return d.base.subgraph_of_edges(d.window_edges(w))


def _extend_map(
    order: list[int],
    adj: dict[int, frozenset[int]],
    degs: dict[int, int],
    mapping: dict[int, int],
    used: set[int],
    out: list[dict[int, int]],
    limit: Optional[int],
) -> bool:
    """Backtracking core: returns False when the limit cut the search."""
    if len(mapping) == len(order):
        out.append(dict(mapping))
        return limit is None or len(out) < limit
    v = order[len(mapping)]
    for w in order:  # candidate images in ascending id order: lex output
        if w in used or degs[v] != degs[w]:
            continue
        ok = True
        for u, img in mapping.items():
            if (u in adj[v]) != (img in adj[w]):
                ok = False
                break
        if not ok:
            continue
        mapping[v] = w
        used.add(w)
        if not _extend_map(order, adj, degs, mapping, used, out, limit):
            return False
        del mapping[v]
        used.discard(w)
    return True


def automorphisms(
    g: Graph, config: RunConfig = DEFAULT_CONFIG
) -> list[dict[int, int]]:
    """All automorphisms of ``g``, in lexicographic order of vertex images.

    Exhaustive backtracking with degree and partial-adjacency pruning;
    refuses graphs above the configured vertex guard.
    """
    if g.num_vertices > config.automorphism_vertex_guard:
        raise SizeGuardError(
            f"{g.num_vertices} vertices exceeds automorphism guard "
            f"{config.automorphism_vertex_guard}"
        )
    if not g.vertices:
        return [{}]
    order = list(g.vertices)
    out: list[dict[int, int]] = []
    _extend_map(order, g.adjacency(), g.degrees(), {}, set(), out, None)
    return out


def isomorphism(g: Graph, h: Graph) -> Optional[dict[int, int]]:
    """One isomorphism g -> h, or None.  Small-graph backtracking."""
    if g.num_vertices != h.num_vertices or g.num_edges != h.num_edges:
        return None
    if sorted(g.degrees().values()) != sorted(h.degrees().values()):
        return None
    gadj, hadj = g.adjacency(), h.adjacency()
    gdeg, hdeg = g.degrees(), h.degrees()
    gorder = sorted(g.vertices, key=lambda v: (-gdeg[v], v))
    hverts = list(h.vertices)

    def rec(mapping: dict[int, int], used: set[int]) -> Optional[dict[int, int]]:
        if len(mapping) == len(gorder):
            return dict(mapping)
        v = gorder[len(mapping)]
        for w in hverts:
            if w in used or gdeg[v] != hdeg[w]:
                continue
            if any((u in gadj[v]) != (img in hadj[w]) for u, img in mapping.items()):
                continue
            mapping[v] = w
            used.add(w)
            found = rec(mapping, used)
            if found is not None:
                return found
            del mapping[v]
            used.discard(w)
        return None

    return rec({}, set())


def _part_shift(
    theta: dict[int, int], parts: tuple[frozenset[Edge], ...]
) -> Optional[int]:
    """The cyclic shift delta with theta(part[a]) == part[a+delta], or None."""
    t = len(parts)
    index_of = {part: i for i, part in enumerate(parts)}
    delta = None
    for a, part in enumerate(parts):
        image = frozenset(edge(theta[u], theta[v]) for u, v in part)
        b = index_of.get(image)
        if b is None:
            return None
        d = (b - a) % t
        if delta is None:
            delta = d
        elif d != delta:
            return None
    return delta


def verify_transitive_decomposition(
    g: Graph,
    parts: Iterable[Iterable[tuple[int, int]]],
    config: RunConfig = DEFAULT_CONFIG,
) -> TransitiveDecomposition:
    """Check that ``parts`` is a transitive decomposition of ``g``.

    First checks the edge-disjoint exact cover, then searches the
    automorphism group for shift witnesses.  A witness for the pair
    (i, j) must map every part i+l onto part j+l simultaneously, which
    forces its part action to be the cyclic shift by j-i; the search
    therefore classifies each automorphism by its part action once and
    reuses the classification for all pairs.

    Raises :class:`DecompositionViolation` on the first failed condition;
    on success returns the decomposition with witnesses for every (i, j).
    """
    normalized: list[frozenset[Edge]] = []
    for part in parts:
        es = frozenset(edge(u, v) for u, v in part)
        if not es:
            raise DecompositionViolation("structural", "empty part")
        normalized.append(es)
    if not normalized:
        raise DecompositionViolation("structural", "no parts")
    seen: set[Edge] = set()
    for idx, es in enumerate(normalized, start=1):
        overlap = es & seen
        if overlap:
            raise DecompositionViolation(
                "structural",
                f"part {idx} overlaps earlier parts on {sorted(overlap)}",
            )
        stray = es - g.edges
        if stray:
            raise DecompositionViolation(
                "structural", f"part {idx} uses non-edges {sorted(stray)}"
            )
        seen |= es
    if seen != g.edges:
        missing = sorted(g.edges - seen)
        raise DecompositionViolation(
            "structural", f"parts do not cover edges {missing}"
        )

    t = len(normalized)
    parts_tuple = tuple(normalized)
    by_shift: dict[int, dict[int, int]] = {}
    for theta in automorphisms(g, config):
        delta = _part_shift(theta, parts_tuple)
        if delta is not None and delta not in by_shift:
            by_shift[delta] = theta
        if len(by_shift) == t:
            break
    for delta in range(t):
        if delta not in by_shift:
            i, j = 1, 1 + delta
            raise DecompositionViolation(
                "transitivity",
                f"no automorphism shifts part {i} onto part {j} "
                f"(missing shift {delta})",
            )
    witnesses = {
        (i, j): by_shift[(j - i) % t]
        for i in range(1, t + 1)
        for j in range(1, t + 1)
    }
    return TransitiveDecomposition(g, parts_tuple, witnesses)


# ---------------------------------------------------------------------------
# Text formats.
#
# Graph file:           p <num_vertices> <num_edges>
#                       e <u> <v>            (one line per edge, 1-based ids)
# Decomposition file:   t <num_parts>
#                       part <index> <num_edges>
#                       e <u> <v>
# ---------------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("p "):
        raise FormatError("graph file must start with 'p <nv> <ne>'")
    try:
        _, nv_s, ne_s = lines[0].split()
        nv, ne = int(nv_s), int(ne_s)
    except ValueError as exc:
        raise FormatError(f"bad header {lines[0]!r}") from exc
    if nv < 0 or ne < 0:
        raise FormatError("negative counts in header")
    edges: set[Edge] = set()
    for ln in lines[1:]:
        fields = ln.split()
        if fields[0] != "e" or len(fields) != 3:
            raise FormatError(f"bad edge line {ln!r}")
        u, v = int(fields[1]), int(fields[2])
        if not (1 <= u <= nv and 1 <= v <= nv):
            raise FormatError(f"vertex id out of range in {ln!r}")
        if u == v:
            raise FormatError(f"loop in {ln!r}")
        e = edge(u, v)
        if e in edges:
            raise FormatError(f"duplicate edge {e}")
        edges.add(e)
    if len(edges) != ne:
        raise FormatError(f"header announced {ne} edges, found {len(edges)}")
    return Graph(tuple(range(1, nv + 1)), frozenset(edges))


def parse_decomposition(text: str, g: Graph) -> tuple[frozenset[Edge], ...]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("t "):
        raise FormatError("decomposition file must start with 't <parts>'")
    t = int(lines[0].split()[1])
    parts: list[set[Edge]] = []
    current: Optional[set[Edge]] = None
    for ln in lines[1:]:
        fields = ln.split()
        if fields[0] == "part":
            if len(fields) != 3:
                raise FormatError(f"bad part line {ln!r}")
            if int(fields[1]) != len(parts) + 1:
                raise FormatError(f"parts out of order at {ln!r}")
            current = set()
            parts.append(current)
        elif fields[0] == "e":
            if current is None:
                raise FormatError("edge line before any part line")
            u, v = int(fields[1]), int(fields[2])
            e = edge(u, v)
            if e not in g.edges:
                raise FormatError(f"part edge {e} not in graph")
            if e in current:
                raise FormatError(f"duplicate edge {e} within part")
            current.add(e)
        else:
            raise FormatError(f"unrecognized line {ln!r}")
    if len(parts) != t:
        raise FormatError(f"header announced {t} parts, found {len(parts)}")
    return tuple(frozenset(p) for p in parts)


def serialize_graph(g: Graph) -> str:
    return g.canonical_text()


def serialize_decomposition(d: TransitiveDecomposition) -> str:
    return d.canonical_text()
