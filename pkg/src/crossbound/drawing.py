"""Combinatorial good drawings on the sphere.

A drawing of a (sub)graph is stored as its planarization: each crossing
becomes a degree-4 node, every edge carries the ordered list of crossing
nodes along it, and every node carries the counterclockwise cyclic order
of its incident edge segments.  Because any two edges cross at most once,
a crossing node is identified by its unordered edge pair.

Disconnected planarizations additionally carry a nesting structure: the
partition of the per-component faces into sphere regions (a region is one
connected area of the sphere; its members are the boundary walks that
face it, at most one per component).  The component-region incidence
graph of a realizable arrangement is a tree, which ``validate`` checks.

Darts: the segment of edge ``e`` between positions ``s`` and ``s+1`` of
its node sequence ``[low endpoint, x1, ..., xk, high endpoint]`` yields
the darts ``(e, s, +1)`` (pointing from position s to s+1) and
``(e, s, -1)``.  Rotations list darts whose tail is the node.  Faces are
traced with ``next(d) = rotation-successor of reverse(d)``; with
counterclockwise rotations this walks the face on the left of each dart.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import DomainError
from .graphs import Edge, Graph

CrossNode = tuple[Edge, Edge]
Node = Union[int, CrossNode]
Dart = tuple[Edge, int, int]


def cross_node(e: Edge, f: Edge) -> CrossNode:
    if e == f:
        raise ValueError("an edge cannot cross itself")
    return (e, f) if e < f else (f, e)


def node_key(n: Node):
    if isinstance(n, int):
        return (0, n, ())
    return (1, 0, n)


def reverse(d: Dart) -> Dart:
    return (d[0], d[1], -d[2])


@dataclasses.dataclass(frozen=True, order=True)
class HalfInt:
    """Exact nonnegative value in half-integer steps (stores 2x the value)."""

    twice: int

    def __post_init__(self):
        if self.twice < 0:
            raise ValueError("half-integer values are nonnegative here")

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice + other.twice)

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def cmp(self, bound: Fraction) -> int:
        """Exact three-way comparison against a rational bound."""
        lhs = self.twice * bound.denominator
        rhs = 2 * bound.numerator
        return (lhs > rhs) - (lhs < rhs)

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


@dataclasses.dataclass(frozen=True)
class Drawing:
    """Immutable combinatorial drawing; equality is structural.

    ``orders`` lists only edges that carry at least one crossing.
    ``rotations`` holds one entry per planarization node, cyclically
    normalized to start at the smallest dart.  ``regions`` is the nesting
    structure: a partition of face ids (a face id is the smallest dart in
    its boundary orbit) into sphere regions; the empty drawing has the
    single empty region (the bare sphere).
    """

    graph: Graph
    crossings: frozenset[CrossNode]
    orders: tuple[tuple[Edge, tuple[CrossNode, ...]], ...]
    rotations: tuple[tuple[Node, tuple[Dart, ...]], ...]
    regions: tuple[tuple[Dart, ...], ...]

    # derived caches, excluded from equality
    _derived: dict = dataclasses.field(
        default=None, compare=False, repr=False, hash=False
    )

    # -- construction -------------------------------------------------

    @staticmethod
    def build(
        graph: Graph,
        crossings: Iterable[CrossNode],
        edge_orders: dict[Edge, Iterable[CrossNode]],
        rotations: dict[Node, Iterable[Dart]],
        regions: Iterable[Iterable[Dart]],
    ) -> "Drawing":
        xset = frozenset(crossings)
        materialized = {e: tuple(seq) for e, seq in edge_orders.items()}
        orders = tuple(
            (e, materialized[e]) for e in sorted(materialized) if materialized[e]
        )
        rots = []
        for n in sorted(rotations, key=node_key):
            rots.append((n, _normalize_cycle(tuple(rotations[n]))))
        regs = tuple(sorted(tuple(sorted(r)) for r in regions))
        return Drawing(graph, xset, tuple(orders), tuple(rots), regs)

    @staticmethod
    def empty() -> "Drawing":
        return Drawing(
            Graph((), frozenset()), frozenset(), (), (), ((),)
        )

    def __post_init__(self):
        object.__setattr__(self, "_derived", self._compute_derived())

    def _compute_derived(self) -> dict:
        order_map = dict(self.orders)
        edge_cross: dict[Edge, tuple[CrossNode, ...]] = {
            e: order_map.get(e, ()) for e in self.graph.edges
        }
        rot_map = dict(self.rotations)
        succ: dict[Dart, Dart] = {}
        for _, rot in self.rotations:
            m = len(rot)
            for i, d in enumerate(rot):
                succ[d] = rot[(i + 1) % m]
        faces = _trace_faces(succ)
        face_of: dict[Dart, Dart] = {}
        orbit_of: dict[Dart, tuple[Dart, ...]] = {}
        for orbit in faces:
            fid = orbit[0]
            orbit_of[fid] = orbit
            for d in orbit:
                face_of[d] = fid
        seen_nodes = set(rot_map)
        for e in self.graph.edges:
            seen_nodes.update(self._edge_nodes(e, edge_cross))
        dsu = _DSU(seen_nodes)
        for e in self.graph.edges:
            seq = self._edge_nodes(e, edge_cross)
            for a, b in zip(seq, seq[1:]):
                dsu.union(a, b)
        comp_of: dict[Node, Node] = {}
        for n in rot_map:
            root = dsu.find(n)
            comp_of[n] = root
        # name components by their minimal node
        comp_name: dict[Node, Node] = {}
        for n in sorted(rot_map, key=node_key):
            r = comp_of[n]
            if r not in comp_name:
                comp_name[r] = n
        comp_of = {n: comp_name[comp_of[n]] for n in rot_map}
        region_of_face: dict[Dart, int] = {}
        for idx, reg in enumerate(self.regions):
            for fid in reg:
                region_of_face[fid] = idx
        return {
            "edge_cross": edge_cross,
            "rot_map": rot_map,
            "succ": succ,
            "faces": faces,
            "face_of": face_of,
            "orbit_of": orbit_of,
            "comp_of": comp_of,
            "region_of_face": region_of_face,
        }

    # -- basic queries --------------------------------------------------

    def _edge_nodes(self, e: Edge, edge_cross=None) -> list[Node]:
        ec = edge_cross if edge_cross is not None else self._derived["edge_cross"]
        return [e[0], *ec[e], e[1]]

    def edge_nodes(self, e: Edge) -> list[Node]:
        return self._edge_nodes(e)

    def crossings_on(self, e: Edge) -> tuple[CrossNode, ...]:
        return self._derived["edge_cross"][e]

    def dart_tail(self, d: Dart) -> Node:
        seq = self.edge_nodes(d[0])
        return seq[d[1]] if d[2] > 0 else seq[d[1] + 1]

    def dart_head(self, d: Dart) -> Node:
        return self.dart_tail(reverse(d))

    def all_darts(self) -> list[Dart]:
        out = []
        for e in sorted(self.graph.edges):
            k = len(self.crossings_on(e))
            for s in range(k + 1):
                out.append((e, s, 1))
                out.append((e, s, -1))
        return out

    @property
    def nodes(self) -> list[Node]:
        return sorted(self._derived["rot_map"], key=node_key)

    def faces_raw(self) -> list[tuple[Dart, ...]]:
        """Per-component face orbits (before region merging)."""
        return self._derived["faces"]

    def face_of_dart(self, d: Dart) -> Dart:
        return self._derived["face_of"][d]

    def orbit(self, face_id: Dart) -> tuple[Dart, ...]:
        return self._derived["orbit_of"][face_id]

    def component_of(self, n: Node) -> Node:
        return self._derived["comp_of"][n]

    def region_index_of_face(self, face_id: Dart) -> int:
        return self._derived["region_of_face"][face_id]

    def num_crossings(self) -> int:
        return len(self.crossings)

    def face_boundary_nodes(self, face_id: Dart) -> set[Node]:
        return {self.dart_tail(d) for d in self.orbit(face_id)}

    def region_boundary_nodes(self, region_idx: int) -> set[Node]:
        out: set[Node] = set()
        for fid in self.regions[region_idx]:
            out |= self.face_boundary_nodes(fid)
        return out

    # -- validation ------------------------------------------------------

    def validate(self) -> list[str]:
        """All violated good-drawing and arrangement invariants (empty = ok)."""
        bad: list[str] = []
        drawn = self.graph.edges
        deg = self.graph.degrees()
        for v in self.graph.vertices:
            if deg[v] == 0:
                bad.append(f"isolated vertex {v} (drawings carry edges only)")
        for pair in self.crossings:
            e, f = pair
            if e == f:
                bad.append(f"self-crossing on {e}")
                continue
            if e not in drawn or f not in drawn:
                bad.append(f"crossing {pair} uses undrawn edge")
                continue
            if set(e) & set(f):
                bad.append(f"adjacent edges cross: {e} x {f}")
        # orders consistency
        order_map = dict(self.orders)
        seen_in_orders: dict[CrossNode, set[Edge]] = {x: set() for x in self.crossings}
        for e, seq in self.orders:
            if e not in drawn:
                bad.append(f"order entry for undrawn edge {e}")
                continue
            if len(set(seq)) != len(seq):
                bad.append(f"edge {e} meets a crossing twice")
            for x in seq:
                if x not in self.crossings:
                    bad.append(f"order of {e} lists unknown crossing {x}")
                elif e not in x:
                    bad.append(f"crossing {x} listed on non-member edge {e}")
                else:
                    seen_in_orders[x].add(e)
        for x, es in seen_in_orders.items():
            if es != set(x):
                bad.append(f"crossing {x} does not appear on exactly its two edges")
        if bad:
            return bad

        # rotation completeness
        rot_map = self._derived["rot_map"]
        expected: dict[Node, set[Dart]] = {}
        for d in self.all_darts():
            expected.setdefault(self.dart_tail(d), set()).add(d)
        if set(rot_map) != set(expected):
            bad.append("rotation nodes differ from planarization nodes")
            return bad
        for n, rot in rot_map.items():
            if set(rot) != expected[n] or len(rot) != len(expected[n]):
                bad.append(f"rotation at {n} does not list incident darts once")
        if bad:
            return bad

        # transversal crossings: the four darts alternate between edges
        for x in self.crossings:
            rot = rot_map[x]
            seq = [d[0] for d in rot]
            if seq[0] == seq[1] or seq[1] == seq[2]:
                bad.append(f"touching, not crossing, at {x}")

        # genus per component
        comp_of = self._derived["comp_of"]
        comp_nodes: dict[Node, int] = {}
        for n in rot_map:
            comp_nodes[comp_of[n]] = comp_nodes.get(comp_of[n], 0) + 1
        comp_segments: dict[Node, int] = {c: 0 for c in comp_nodes}
        for d in self.all_darts():
            if d[2] > 0:
                comp_segments[comp_of[self.dart_tail(d)]] += 1
        comp_faces: dict[Node, int] = {c: 0 for c in comp_nodes}
        for orbit in self.faces_raw():
            comp_faces[comp_of[self.dart_tail(orbit[0])]] += 1
        for c in comp_nodes:
            if comp_nodes[c] - comp_segments[c] + comp_faces[c] != 2:
                bad.append(f"component {c} is not genus 0")

        # nesting: regions partition faces, one face per component per region,
        # and the component-region incidence graph is a tree
        face_ids = [orbit[0] for orbit in self.faces_raw()]
        listed = [fid for reg in self.regions for fid in reg]
        if sorted(listed) != sorted(face_ids):
            bad.append("regions do not partition the faces")
            return bad
        if not face_ids:
            if self.regions != ((),):
                bad.append("empty drawing must have the single bare-sphere region")
            return bad
        if any(len(reg) == 0 for reg in self.regions):
            bad.append("empty region in a nonempty drawing")
            return bad
        incidence: list[tuple[Node, int]] = []
        for idx, reg in enumerate(self.regions):
            comps_here = [comp_of[self.dart_tail(fid)] for fid in reg]
            if len(set(comps_here)) != len(comps_here):
                bad.append(f"region {idx} holds two faces of one component")
            incidence += [(c, idx) for c in comps_here]
        n_comp = len(comp_nodes)
        n_reg = len(self.regions)
        if len(incidence) != n_comp + n_reg - 1:
            bad.append("component-region incidence is not a tree (count)")
        else:
            dsu = _DSU([("c", c) for c in comp_nodes] + [("r", i) for i in range(n_reg)])
            for c, i in incidence:
                dsu.union(("c", c), ("r", i))
            roots = {dsu.find(x) for x in dsu.parent}
            if len(roots) != 1:
                bad.append("component-region incidence is not connected")
        return bad

    # -- crossing counts and f-values -------------------------------------

    def cr_between(self, a: Iterable[Edge], b: Iterable[Edge]) -> int:
        """Crossings with one edge in ``a`` and the other in ``b``.

        Each unordered crossing is counted at most once, which makes the
        two additivity identities over edge-disjoint unions exact.
        """
        aset, bset = frozenset(a), frozenset(b)
        for s in (aset, bset):
            stray = s - self.graph.edges
            if stray:
                raise DomainError(f"edges not drawn: {sorted(stray)}")
        n = 0
        for e, f in self.crossings:
            if (e in aset and f in bset) or (e in bset and f in aset):
                n += 1
        return n

    def f_charge(self, window: Iterable[Edge], scope: Optional[Iterable[Edge]] = None) -> HalfInt:
        """cr(window) + cr(window, scope minus window) / 2, exactly.

        ``scope`` defaults to all drawn edges; the window is intersected
        with the drawn edge set so the same window can be charged against
        partial drawings.
        """
        scope_set = frozenset(scope) if scope is not None else self.graph.edges
        win = frozenset(window) & scope_set
        rest = scope_set - win
        return HalfInt(2 * self.cr_between(win, win) + self.cr_between(win, rest))

    # -- merged faces and separation ---------------------------------------

    def merged_faces(self) -> tuple[tuple[tuple[Dart, ...], ...], ...]:
        """Faces of the arrangement: one entry per region, each a tuple of
        boundary walks."""
        bad = self.validate()
        if bad:
            raise DomainError(f"invalid drawing: {bad[0]}")
        return tuple(
            tuple(self.orbit(fid) for fid in reg) for reg in self.regions
        )

    def separated(self, u: int, v: int) -> bool:
        """True iff no region boundary contains both vertices."""
        for w in (u, v):
            if w not in self.graph.vertices:
                raise DomainError(f"vertex {w} is not drawn")
        for idx in range(len(self.regions)):
            nodes = self.region_boundary_nodes(idx)
            if u in nodes and v in nodes:
                return False
        return True

    # -- relabeling, reflection, canonical form ----------------------------

    def relabel(self, theta: dict[int, int]) -> "Drawing":
        """Rename vertices by the bijection ``theta`` (structure-preserving)."""
        emap: dict[Edge, tuple[Edge, bool]] = {}
        for e in self.graph.edges:
            u, v = theta[e[0]], theta[e[1]]
            emap[e] = ((u, v), False) if u < v else ((v, u), True)
        kof = {e: len(self.crossings_on(e)) for e in self.graph.edges}

        def map_x(x: CrossNode) -> CrossNode:
            return cross_node(emap[x[0]][0], emap[x[1]][0])

        def map_dart(d: Dart) -> Dart:
            e, s, sg = d
            ne, flip = emap[e]
            if flip:
                return (ne, kof[e] - s, -sg)
            return (ne, s, sg)

        new_graph = Graph.build(
            [theta[v] for v in self.graph.vertices],
            [emap[e][0] for e in self.graph.edges],
        )
        new_orders = {}
        for e, seq in self.orders:
            ne, flip = emap[e]
            ns = [map_x(x) for x in seq]
            new_orders[ne] = tuple(reversed(ns)) if flip else tuple(ns)
        new_rot = {}
        for n, rot in self.rotations:
            nn: Node = theta[n] if isinstance(n, int) else map_x(n)
            new_rot[nn] = tuple(map_dart(d) for d in rot)
        new_regions = []
        for reg in self.regions:
            new_regions.append(
                [min(map_dart(d) for d in self.orbit(fid)) for fid in reg]
            )
        return Drawing.build(
            new_graph,
            [map_x(x) for x in self.crossings],
            new_orders,
            new_rot,
            new_regions,
        )

    def reflect(self) -> "Drawing":
        """The mirror drawing: all rotations reversed."""
        new_rot = {n: tuple(reversed(rot)) for n, rot in self.rotations}
        new_regions = []
        for reg in self.regions:
            new_regions.append(
                [min(reverse(d) for d in self.orbit(fid)) for fid in reg]
            )
        return Drawing.build(
            self.graph, self.crossings, dict(self.orders), new_rot, new_regions
        )

    def restrict(self, keep: Iterable[Edge]) -> "Drawing":
        """The subdrawing on an edge subset.

        Deleting an edge merges the sphere areas its segments separated,
        so the restricted region partition is derived by unioning the old
        regions across every deleted segment and regrouping the surviving
        faces; crossings with deleted edges dissolve and the segments of
        the surviving edge merge.
        """
        keep_set = frozenset(keep) & self.graph.edges
        deleted = self.graph.edges - keep_set
        if not keep_set:
            return Drawing.empty()
        if not deleted:
            return self
        new_crossings = [
            x for x in self.crossings if x[0] in keep_set and x[1] in keep_set
        ]
        xset = set(new_crossings)
        new_orders: dict[Edge, tuple] = {}
        seg_map: dict[Edge, list[int]] = {}
        for e in keep_set:
            old = self.crossings_on(e)
            kept_prefix = [0] * (len(old) + 1)
            for i, x in enumerate(old):
                kept_prefix[i + 1] = kept_prefix[i] + (1 if x in xset else 0)
            seg_map[e] = kept_prefix
            new_seq = tuple(x for x in old if x in xset)
            if new_seq:
                new_orders[e] = new_seq

        def map_dart(d: Dart) -> Optional[Dart]:
            e, s, sg = d
            if e not in keep_set:
                return None
            return (e, seg_map[e][s], sg)

        new_rot: dict[Node, tuple[Dart, ...]] = {}
        for n, rot in self.rotations:
            if isinstance(n, int):
                mapped = [md for md in (map_dart(d) for d in rot) if md is not None]
                if mapped:
                    new_rot[n] = tuple(mapped)
            elif n in xset:
                new_rot[n] = tuple(map_dart(d) for d in rot)

        # merge old regions across every deleted segment
        parent = list(range(len(self.regions)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i, j):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj

        for e in deleted:
            k = len(self.crossings_on(e))
            for s in range(k + 1):
                d = (e, s, 1)
                union(
                    self.region_index_of_face(self.face_of_dart(d)),
                    self.region_index_of_face(self.face_of_dart(reverse(d))),
                )
        area_of_new_dart: dict[Dart, int] = {}
        for e in keep_set:
            k = len(self.crossings_on(e))
            for s in range(k + 1):
                for sg in (1, -1):
                    d = (e, s, sg)
                    nd = map_dart(d)
                    area = find(
                        self.region_index_of_face(self.face_of_dart(d))
                    )
                    prev = area_of_new_dart.get(nd)
                    if prev is not None and prev != area:
                        raise AssertionError("restriction area mismatch")
                    area_of_new_dart[nd] = area

        new_graph = Graph.from_edges(keep_set)
        probe = Drawing.build(new_graph, new_crossings, new_orders, new_rot, [])
        regions_by_area: dict[int, list[Dart]] = {}
        for orbit in probe.faces_raw():
            area = area_of_new_dart[orbit[0]]
            regions_by_area.setdefault(area, []).append(orbit[0])
        return Drawing.build(
            new_graph, new_crossings, new_orders, new_rot,
            list(regions_by_area.values()),
        )

    def key_bytes(self) -> bytes:
        return repr(
            (self.crossings_sorted(), self.orders, self.rotations, self.regions)
        ).encode()

    def crossings_sorted(self) -> tuple[CrossNode, ...]:
        return tuple(sorted(self.crossings))

    def canonical_key(self, symmetry: Iterable[dict[int, int]] = ()) -> bytes:
        """Smallest serialization over allowed relabelings and reflection.

        Every map in ``symmetry`` must send the drawn graph to itself.
        The identity and the global reflection are always quotiented.
        """
        best = None
        thetas = [None, *symmetry]
        for theta in thetas:
            if theta is None:
                base = self
            else:
                for e in self.graph.edges:
                    u, v = theta.get(e[0]), theta.get(e[1])
                    if u is None or v is None or not self.graph.has_edge(u, v):
                        raise DomainError(
                            "symmetry map does not stabilize the drawn subgraph"
                        )
                base = self.relabel(theta)
            for cand in (base, base.reflect()):
                kb = cand.key_bytes()
                if best is None or kb < best:
                    best = kb
        return best


def _normalize_cycle(rot: tuple[Dart, ...]) -> tuple[Dart, ...]:
    if not rot:
        return rot
    i = rot.index(min(rot))
    return rot[i:] + rot[:i]


def _trace_faces(succ: dict[Dart, Dart]) -> list[tuple[Dart, ...]]:
    visited: set[Dart] = set()
    faces: list[tuple[Dart, ...]] = []
    for start in sorted(succ):
        if start in visited:
            continue
        orbit = []
        d = start
        while d is not None and d not in visited:
            visited.add(d)
            orbit.append(d)
            # missing successors only occur on malformed input, which
            # validate() reports before faces are consulted
            d = succ.get(reverse(d))
        faces.append(tuple(orbit))
    return faces


# ---------------------------------------------------------------------------
# Text serialization (bit-exact round trip).
# ---------------------------------------------------------------------------


def _dart_ref(d: Dart) -> str:
    e, s, sg = d
    return f"{e[0]},{e[1]}:{s}:{'+' if sg > 0 else '-'}"


def _parse_dart(ref: str) -> Dart:
    epart, s, sg = ref.split(":")
    u, v = epart.split(",")
    return ((int(u), int(v)), int(s), 1 if sg == "+" else -1)


def serialize_drawing(d: Drawing) -> str:
    lines = ["drawing 1"]
    lines.append(f"vertices {' '.join(str(v) for v in d.graph.vertices)}")
    lines.append(f"edges {d.graph.num_edges}")
    lines += [f"e {u} {v}" for u, v in sorted(d.graph.edges)]
    xs = d.crossings_sorted()
    xindex = {x: i for i, x in enumerate(xs)}
    lines.append(f"crossings {len(xs)}")
    for (e, f) in xs:
        lines.append(f"x {e[0]} {e[1]} {f[0]} {f[1]}")
    for e, seq in d.orders:
        idxs = " ".join(str(xindex[x]) for x in seq)
        lines.append(f"order {e[0]} {e[1]} : {idxs}")
    for n, rot in d.rotations:
        refs = " ".join(_dart_ref(dd) for dd in rot)
        if isinstance(n, int):
            lines.append(f"rot v {n} : {refs}")
        else:
            lines.append(f"rot x {xindex[n]} : {refs}")
    for reg in d.regions:
        if reg:
            lines.append("region " + " ".join(_dart_ref(f) for f in reg))
        else:
            lines.append("region -")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_drawing(text: str) -> Drawing:
    from .errors import FormatError

    lines = [ln.rstrip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "drawing 1":
        raise FormatError("expected 'drawing 1' header")
    if lines[-1] != "end":
        raise FormatError("expected trailing 'end'")
    body = lines[1:-1]
    pos = 0
    if not body[pos].startswith("vertices"):
        raise FormatError("expected vertices line")
    vertices = [int(x) for x in body[pos].split()[1:]]
    pos += 1
    if not body[pos].startswith("edges "):
        raise FormatError("expected edges count")
    ne = int(body[pos].split()[1])
    pos += 1
    edges = []
    for _ in range(ne):
        f = body[pos].split()
        if f[0] != "e":
            raise FormatError(f"expected edge line, got {body[pos]!r}")
        edges.append((int(f[1]), int(f[2])))
        pos += 1
    graph = Graph.build(vertices, edges)
    if not body[pos].startswith("crossings "):
        raise FormatError("expected crossings count")
    nx_ = int(body[pos].split()[1])
    pos += 1
    xs: list[CrossNode] = []
    for _ in range(nx_):
        f = body[pos].split()
        if f[0] != "x":
            raise FormatError(f"expected crossing line, got {body[pos]!r}")
        e1 = (int(f[1]), int(f[2]))
        e2 = (int(f[3]), int(f[4]))
        xs.append(cross_node(e1, e2))
        pos += 1
    orders: dict[Edge, tuple[CrossNode, ...]] = {}
    rotations: dict[Node, tuple[Dart, ...]] = {}
    regions: list[list[Dart]] = []
    for ln in body[pos:]:
        f = ln.split()
        if f[0] == "order":
            e = (int(f[1]), int(f[2]))
            idxs = [int(x) for x in f[4:]]
            orders[e] = tuple(xs[i] for i in idxs)
        elif f[0] == "rot":
            if f[1] == "v":
                n: Node = int(f[2])
                refs = f[4:]
            else:
                n = xs[int(f[2])]
                refs = f[4:]
            rotations[n] = tuple(_parse_dart(r) for r in refs)
        elif f[0] == "region":
            if f[1] == "-":
                regions.append([])
            else:
                regions.append([_parse_dart(r) for r in f[1:]])
        else:
            raise FormatError(f"unrecognized line {ln!r}")
    return Drawing.build(graph, xs, orders, rotations, regions)
