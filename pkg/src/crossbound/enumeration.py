"""Exhaustive enumeration and extension of good drawings.

Edges are inserted one at a time.  Inserting an edge is a walk in the
(merged) face structure of the current arrangement: the arc starts at a
corner of its first endpoint (or is placed freely in a region when the
endpoint is new), crosses one existing segment per step, and ends at a
corner of its second endpoint.  Every walk within the crossing cap is
spliced into the combinatorial data and kept when the result is a valid
sphere arrangement; completeness follows because restricting any good
drawing to one fewer edge leaves exactly such a walk.

Walks are enumerated against the static face structure of the current
drawing, which over-approximates reachability once the arc has cut
regions; impossible combinations fail the genus check after splicing and
are dropped, never produced.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .config import DEFAULT_CONFIG, RunConfig
from .drawing import (
    CrossNode,
    Dart,
    Drawing,
    Node,
    cross_node,
    reverse,
)
from .errors import DomainError, ResourceExhausted, SizeGuardError
from .graphs import Edge, Graph, edge as mk_edge


@dataclasses.dataclass(frozen=True)
class BudgetPredicate:
    """Exact pruning predicate applied after every single edge insertion.

    window_checks: pairs (edge set, bound) read as "the half-weighted
        crossing charge of the window, inside the drawn scope, stays
        strictly below the bound".
    pair_caps: pairs (edge set, cap) read as "crossings on the set plus
        crossings between the set and the rest of the drawn scope stay
        strictly below the cap" (the deletion-set pruning rule).  Sets
        that do not meet the drawn scope impose nothing.
    total_cap: hard ceiling on the total number of crossings; every
        crossing charge is monotone under extension, so all three checks
        prune soundly mid-search.
    """

    window_checks: tuple[tuple[frozenset[Edge], Fraction], ...] = ()
    pair_caps: tuple[tuple[frozenset[Edge], Fraction], ...] = ()
    total_cap: int = 0
    reject_counter: Optional[list] = dataclasses.field(default=None, compare=False)

    @staticmethod
    def total_only(total_cap: int) -> "BudgetPredicate":
        return BudgetPredicate((), (), total_cap)

    def check(self, d: Drawing) -> bool:
        ok = self._check(d)
        if not ok and self.reject_counter is not None:
            self.reject_counter[0] += 1
        return ok

    def _check(self, d: Drawing) -> bool:
        if d.num_crossings() > self.total_cap:
            return False
        for window, bound in self.window_checks:
            if d.f_charge(window).cmp(bound) >= 0:
                return False
        drawn = d.graph.edges
        for eset, cap in self.pair_caps:
            inside = eset & drawn
            if not inside:
                continue
            q = d.cr_between(inside, inside) + d.cr_between(inside, drawn - inside)
            if q * cap.denominator >= cap.numerator:
                return False
        return True


# ---------------------------------------------------------------------------
# Walk enumeration
# ---------------------------------------------------------------------------


def _darts_by_region(d: Drawing) -> dict[int, list[Dart]]:
    out: dict[int, list[Dart]] = {i: [] for i in range(len(d.regions))}
    for dart in d.all_darts():
        out[d.region_index_of_face(d.face_of_dart(dart))].append(dart)
    for lst in out.values():
        lst.sort()
    return out


def _corner_darts(d: Drawing, v: int) -> list[Dart]:
    return sorted(dd for dd in d.all_darts() if d.dart_tail(dd) == v)


def _walks(
    d: Drawing, a: int, b: int, cap: int
) -> Iterator[tuple[tuple, tuple[Dart, ...], tuple]]:
    """Yield (start anchor, crossed darts, end anchor) triples.

    Anchors are ('corner', dart) for drawn endpoints and ('place',
    region index) for new ones.  The arc travels from ``a`` to ``b`` and
    crosses each listed dart from the side of the face containing it.
    """
    a_drawn = a in d.graph.vertices
    b_drawn = b in d.graph.vertices
    by_region = _darts_by_region(d)
    region_of_dart = {
        dart: d.region_index_of_face(d.face_of_dart(dart))
        for dart in d.all_darts()
    }
    if b_drawn:
        ends_in: dict[int, list[Dart]] = {}
        for dart in _corner_darts(d, b):
            ends_in.setdefault(region_of_dart[dart], []).append(dart)

    if a_drawn:
        starts = [(("corner", dart), region_of_dart[dart]) for dart in _corner_darts(d, a)]
    else:
        starts = [(("place", r), r) for r in range(len(d.regions))]

    def rec(region: int, crossed: tuple[Dart, ...], used: frozenset[Edge]):
        if b_drawn:
            for dart in ends_in.get(region, ()):
                yield crossed, ("corner", dart)
        else:
            yield crossed, ("place", region)
        if len(crossed) >= cap:
            return
        for dart in by_region[region]:
            f = dart[0]
            if f in used or a in f or b in f:
                continue
            nxt = region_of_dart[reverse(dart)]
            yield from rec(nxt, crossed + (dart,), used | {f})

    for start, region in starts:
        for crossed, end in rec(region, (), frozenset()):
            yield start, crossed, end


# ---------------------------------------------------------------------------
# Splicing a walk into the combinatorial data
# ---------------------------------------------------------------------------


def _splice(
    d: Drawing,
    g: Edge,
    start: tuple,
    crossed: Sequence[Dart],
    end: tuple,
) -> list[Drawing]:
    """All drawings realizing the walk (region placements may branch).

    Returns an empty list when the walk is not realizable on the sphere
    (the spliced rotation system fails the per-component genus check).
    """
    a, b = g
    m = len(crossed)
    cross_edges = [dart[0] for dart in crossed]
    ins_index = {dart[0]: dart[1] for dart in crossed}  # edge -> split segment

    def rename(dart: Dart) -> Dart:
        e, s, sg = dart
        j = ins_index.get(e)
        if j is None:
            return dart
        if s > j or (s == j and sg < 0):
            return (e, s + 1, sg)
        return dart

    def old_of(dart: Dart) -> Optional[Dart]:
        """Old-name of a non-g dart in the new structure."""
        e, s, sg = dart
        if e == g:
            return None
        j = ins_index.get(e)
        if j is None:
            return dart
        return (e, s - 1, sg) if s > j else (e, s, sg)

    new_x = [cross_node(g, f) for f in cross_edges]
    new_crossings = set(d.crossings) | set(new_x)

    new_orders: dict[Edge, list[CrossNode]] = {
        e: list(seq) for e, seq in d.orders
    }
    for xi, f in zip(new_x, cross_edges):
        new_orders.setdefault(f, [])
        new_orders[f].insert(ins_index[f], xi)
    if a < b:
        g_seq = list(new_x)
    else:
        g_seq = list(reversed(new_x))
    if g_seq:
        new_orders[g] = g_seq

    # travel-oriented g darts
    if a < b:
        g_start = (g, 0, 1)
        g_end = (g, m, -1)
        g_back = [(g, i - 1, -1) for i in range(1, m + 1)]
        g_fwd = [(g, i, 1) for i in range(1, m + 1)]
    else:
        g_start = (g, m, -1)
        g_end = (g, 0, 1)
        g_back = [(g, m - i + 1, 1) for i in range(1, m + 1)]
        g_fwd = [(g, m - i, -1) for i in range(1, m + 1)]

    new_rot: dict[Node, list[Dart]] = {
        n: [rename(dd) for dd in rot] for n, rot in d.rotations
    }

    def insert_at_corner(vertex: int, corner: Dart, new_dart: Dart):
        # the corner of face_of(corner) at the vertex is the wedge between
        # the rotation predecessor of ``corner`` and ``corner`` itself
        rot = new_rot[vertex]
        i = rot.index(rename(corner))
        rot.insert(i, new_dart)

    if start[0] == "corner":
        insert_at_corner(a, start[1], g_start)
    else:
        new_rot[a] = [g_start]
    if end[0] == "corner":
        insert_at_corner(b, end[1], g_end)
    else:
        new_rot[b] = [g_end]

    for i, dart in enumerate(crossed):
        # the arc approaches the segment from the side of face_of(dart),
        # which lies on the right of the dart; counterclockwise around the
        # new crossing node this reads back, head-side, forward, tail-side
        f, j, sg = dart
        if sg > 0:
            toward_head = (f, j + 1, 1)
            toward_tail = (f, j, -1)
        else:
            toward_head = (f, j, -1)
            toward_tail = (f, j + 1, 1)
        new_rot[new_x[i]] = [g_back[i], toward_head, g_fwd[i], toward_tail]

    new_graph = Graph.build(
        set(d.graph.vertices) | {a, b}, set(d.graph.edges) | {g}
    )

    candidate = Drawing.build(
        new_graph, new_crossings, new_orders, new_rot, []
    )
    # genus check per component before any region reasoning
    comp_of = candidate._derived["comp_of"]
    nodes_per: dict[Node, int] = {}
    for n in candidate._derived["rot_map"]:
        nodes_per[comp_of[n]] = nodes_per.get(comp_of[n], 0) + 1
    segs_per: dict[Node, int] = {c: 0 for c in nodes_per}
    for dart in candidate.all_darts():
        if dart[2] > 0:
            segs_per[comp_of[candidate.dart_tail(dart)]] += 1
    faces_per: dict[Node, int] = {c: 0 for c in nodes_per}
    for orbit in candidate.faces_raw():
        faces_per[comp_of[candidate.dart_tail(orbit[0])]] += 1
    for c in nodes_per:
        if nodes_per[c] - segs_per[c] + faces_per[c] != 2:
            return []

    # map new faces back to old regions
    old_orbits = {
        fid: tuple(rename(x) for x in d.orbit(fid))
        for fid in (orb[0] for orb in d.faces_raw())
    }
    survived = {}  # new face id -> old face id
    renamed_lookup = {}
    for old_fid, ren in old_orbits.items():
        i = ren.index(min(ren))
        renamed_lookup[ren[i:] + ren[:i]] = old_fid
    new_faces = [orbit[0] for orbit in candidate.faces_raw()]
    touched_by_region: dict[int, list[Dart]] = {}
    survivors_by_region: dict[int, list[Dart]] = {}
    place_region = start[1] if start[0] == "place" else None
    for orbit in candidate.faces_raw():
        fid = orbit[0]
        old_fid = renamed_lookup.get(orbit)
        if old_fid is not None:
            r = d.region_index_of_face(old_fid)
            survivors_by_region.setdefault(r, []).append(fid)
            continue
        regions_hit = set()
        for dart in orbit:
            old = old_of(dart)
            if old is not None:
                regions_hit.add(
                    d.region_index_of_face(d.face_of_dart(old))
                )
        if not regions_hit:
            if place_region is None:
                return []  # unreachable for well-formed walks
            regions_hit = {place_region}
        if len(regions_hit) != 1:
            raise AssertionError(
                "insertion walk touched one face across several regions"
            )
        r = regions_hit.pop()
        touched_by_region.setdefault(r, []).append(fid)

    region_sets: list[list[list[Dart]]] = []  # choices per old region
    for r in range(len(d.regions)):
        touched = sorted(touched_by_region.get(r, []))
        survivors = sorted(survivors_by_region.get(r, []))
        if not touched:
            if survivors:
                region_sets.append([[list(survivors)]])
            continue
        if not survivors:
            region_sets.append([[[fid] for fid in touched]])
            continue
        # branch: each surviving boundary may sit in any piece of the cut region
        options: list[list[list[Dart]]] = []

        def assign(idx: int, groups: list[list[Dart]]):
            if idx == len(survivors):
                options.append([list(grp) for grp in groups])
                return
            for grp in groups:
                grp.append(survivors[idx])
                assign(idx + 1, groups)
                grp.pop()

        assign(0, [[fid] for fid in touched])
        region_sets.append(options)

    results: list[Drawing] = []

    def product(idx: int, acc: list[list[Dart]]):
        if idx == len(region_sets):
            regions = acc if acc else [[]]
            results.append(
                Drawing.build(
                    new_graph, new_crossings, new_orders, new_rot, regions
                )
            )
            return
        for choice in region_sets[idx]:
            product(idx + 1, acc + choice)

    product(0, [])
    return results


def insert_edge(
    d: Drawing,
    e: tuple[int, int],
    budget: BudgetPredicate,
    config: RunConfig = DEFAULT_CONFIG,
) -> list[Drawing]:
    """All extensions of ``d`` by the single edge ``e`` within the budget.

    Endpoints may be drawn or new; a fresh component is tried in every
    region.  Returns a deterministically ordered, deduplicated list; an
    empty list means no admissible extension exists.
    """
    g = mk_edge(*e)
    if g in d.graph.edges:
        raise DomainError(f"edge {g} is already drawn")
    cap = budget.total_cap - d.num_crossings()
    if cap < 0:
        return []
    seen: dict[bytes, Drawing] = {}
    for start, crossed, end in _walks(d, g[0], g[1], cap):
        for nd in _splice(d, g, start, crossed, end):
            if not budget.check(nd):
                continue
            kb = nd.key_bytes()
            if kb not in seen:
                seen[kb] = nd
    return [seen[k] for k in sorted(seen)]


# ---------------------------------------------------------------------------
# Whole-graph enumeration and part extension
# ---------------------------------------------------------------------------


def grouped_edge_order(g: Graph) -> list[Edge]:
    """Insertion order that completes low-id vertices first.

    Keeps early prefixes cycle-rich, which keeps intermediate frontiers
    small; any fixed order is complete.
    """
    return sorted(g.edges, key=lambda e: (e[1], e[0]))


def _stabilizer(
    symmetry: Sequence[dict[int, int]], drawn: frozenset[Edge]
) -> list[dict[int, int]]:
    out = []
    for theta in symmetry:
        image = frozenset(mk_edge(theta[u], theta[v]) for u, v in drawn)
        if image == drawn:
            out.append(theta)
    return out


def enumerate_drawings(
    h: Graph,
    max_crossings: int,
    budget: Optional[BudgetPredicate] = None,
    symmetry: Sequence[dict[int, int]] = (),
    config: RunConfig = DEFAULT_CONFIG,
    edge_order: Optional[Sequence[Edge]] = None,
    first_witness: bool = False,
) -> list[Drawing]:
    """All good drawings of ``h`` with at most ``max_crossings`` crossings.

    The result is quotiented by ``canonical_key`` under ``symmetry``
    (graph automorphisms of ``h``) plus global reflection, and filtered
    by ``budget``.  With ``first_witness`` the search stops at the first
    complete drawing and returns it alone.
    """
    if h.num_edges > config.max_enum_edges:
        raise SizeGuardError(
            f"{h.num_edges} edges exceeds enumeration guard "
            f"{config.max_enum_edges}"
        )
    if budget is None:
        budget = BudgetPredicate.total_only(max_crossings)
    budget = dataclasses.replace(
        budget, total_cap=min(budget.total_cap, max_crossings)
    )
    order = list(edge_order) if edge_order is not None else grouped_edge_order(h)
    if frozenset(order) != h.edges or len(order) != h.num_edges:
        raise DomainError("edge order must list each edge of h exactly once")

    frontier: dict[bytes, Drawing] = {Drawing.empty().key_bytes(): Drawing.empty()}
    for idx, e in enumerate(order):
        drawn_after = frozenset(order[: idx + 1])
        syms = _stabilizer(symmetry, drawn_after)
        last = idx == len(order) - 1
        nxt: dict[bytes, Drawing] = {}
        for base in frontier.values():
            for ext in insert_edge(base, e, budget, config):
                if first_witness and last:
                    return [ext]
                key = ext.canonical_key(syms)
                if key not in nxt:
                    nxt[key] = ext
            if len(nxt) > config.max_frontier:
                raise ResourceExhausted(
                    f"frontier exceeded {config.max_frontier} drawings"
                )
        frontier = nxt
        if not frontier:
            return []
    return [frontier[k] for k in sorted(frontier)]


def extend_by_part(
    d: Drawing,
    part: Iterable[tuple[int, int]],
    budget: BudgetPredicate,
    symmetry: Sequence[dict[int, int]] = (),
    config: RunConfig = DEFAULT_CONFIG,
) -> list[Drawing]:
    """All extensions of ``d`` by every edge of ``part``, within budget.

    Part edges are inserted in lexicographic order; after each edge the
    partial frontier is deduplicated under the symmetry maps that fix the
    currently drawn edge set.
    """
    part_edges = sorted(mk_edge(u, v) for u, v in part)
    overlap = set(part_edges) & set(d.graph.edges)
    if overlap:
        raise DomainError(f"part edges already drawn: {sorted(overlap)}")
    frontier: dict[bytes, Drawing] = {d.key_bytes(): d}
    drawn = frozenset(d.graph.edges)
    for e in part_edges:
        drawn = drawn | {e}
        syms = _stabilizer(symmetry, drawn)
        nxt: dict[bytes, Drawing] = {}
        for base in frontier.values():
            for ext in insert_edge(base, e, budget, config):
                key = ext.canonical_key(syms)
                if key not in nxt:
                    nxt[key] = ext
            if len(nxt) > config.max_frontier:
                raise ResourceExhausted(
                    f"frontier exceeded {config.max_frontier} drawings"
                )
        frontier = nxt
        if not frontier:
            return []
    return [frontier[k] for k in sorted(frontier)]


def insert_paths_feasible(
    d: Drawing,
    paths: Sequence[Sequence[int]],
    budget: BudgetPredicate,
    config: RunConfig = DEFAULT_CONFIG,
) -> bool:
    """Whether all ``paths`` can be drawn on top of ``d`` within budget.

    Each path is a vertex sequence whose internal vertices are undrawn;
    its edges are inserted one at a time through the same dual walks as
    ordinary extension, so path edges may cross the drawing and each
    other subject to the good-drawing rules.  Exhaustive up to the
    budget's total crossing cap; returns at the first success.
    """
    drawn_vs = set(d.graph.vertices)
    edges: list[Edge] = []
    for path in paths:
        for w in path[1:-1]:
            if w in drawn_vs:
                raise DomainError(
                    f"internal path vertex {w} is already drawn"
                )
        for u, v in zip(path, path[1:]):
            edges.append(mk_edge(u, v))
    if len(set(edges)) != len(edges):
        raise DomainError("latent paths must be edge-disjoint")
    if any(e in d.graph.edges for e in edges):
        raise DomainError("latent path edges must be undrawn")

    def rec(cur: Drawing, idx: int) -> bool:
        if idx == len(edges):
            return True
        for ext in insert_edge(cur, edges[idx], budget, config):
            if rec(ext, idx + 1):
                return True
        return False

    if not budget.check(d):
        return False
    return rec(d, 0)
