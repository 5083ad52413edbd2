"""Exact crossing numbers of small graphs by exhaustive search.

The oracle deepens on the crossing count k = 0, 1, 2, ... and reports
the first k admitting a good drawing, so minimality is inherent.  By
default it runs the shared enumeration core without any automorphism
quotient (reflection only), keeping its ground-truth role independent of
symmetry reasoning in the bound engine.

``naive_enumerate`` is a second, deliberately dumb enumerator used only
to cross-validate the dual-walk machinery at nine edges or fewer: it
ranges over crossing schemes, per-edge crossing orders, raw rotation
systems and nesting placements, then filters by validation.
"""

from __future__ import annotations

import dataclasses
import itertools
from fractions import Fraction
from typing import Optional

from .config import DEFAULT_CONFIG, RunConfig
from .drawing import Drawing, cross_node, node_key
from .enumeration import enumerate_drawings
from .errors import SizeGuardError
from .families import Tile, tile_power_close
from .graphs import Graph


@dataclasses.dataclass(frozen=True)
class OracleResult:
    """Outcome of the exact search: ``value`` is None when unknown."""

    value: Optional[int]
    witness: Optional[Drawing]
    max_k_searched: int

    @property
    def known(self) -> bool:
        return self.value is not None


def exact_crossing_number(
    g: Graph,
    max_k: int,
    config: RunConfig = DEFAULT_CONFIG,
    symmetry: tuple = (),
) -> OracleResult:
    """Smallest k <= max_k with a good drawing of ``g`` having k crossings.

    Iterative deepening: level k is searched only after level k-1 proved
    empty, so the returned witness has exactly the minimum number of
    crossings.  Returns ``value=None`` when every level up to ``max_k``
    is empty.
    """
    if g.num_edges > config.max_oracle_edges:
        raise SizeGuardError(
            f"{g.num_edges} edges exceeds oracle guard {config.max_oracle_edges}"
        )
    for k in range(max_k + 1):
        found = enumerate_drawings(
            g, k, symmetry=symmetry, config=config, first_witness=True
        )
        if found:
            witness = found[0]
            assert witness.num_crossings() == k
            return OracleResult(k, witness, k)
    return OracleResult(None, None, max_k)


def periodic_ratio(
    q: Tile, t: int, max_k: int, config: RunConfig = DEFAULT_CONFIG
) -> Fraction:
    """cr of the closed t-th tile power, divided by t, as an exact rational."""
    graph, _ = tile_power_close(q, t, want_decomposition=False)
    res = exact_crossing_number(graph, max_k, config)
    if not res.known:
        raise SizeGuardError(
            f"crossing number of the closure exceeds the search bound {max_k}"
        )
    return Fraction(res.value, t)


# ---------------------------------------------------------------------------
# Independent naive enumerator (cross-validation only)
# ---------------------------------------------------------------------------


def _cyclic_orders(items):
    """All cyclic orders of ``items`` as tuples anchored at the minimum."""
    items = sorted(items)
    if len(items) <= 2:
        yield tuple(items)
        return
    first, rest = items[0], items[1:]
    for perm in itertools.permutations(rest):
        yield (first, *perm)


def _region_partitions(comp_faces: dict):
    """All sphere placements: each component joins one existing region
    through one of its faces, the rest of its faces open new regions."""
    comps = sorted(comp_faces, key=node_key)
    first = comps[0]
    base = [[fid] for fid in comp_faces[first]]
    placements = [base]
    for comp in comps[1:]:
        nxt = []
        for regions in placements:
            for host_idx in range(len(regions)):
                for outward in comp_faces[comp]:
                    new_regions = [list(r) for r in regions]
                    new_regions[host_idx].append(outward)
                    for fid in comp_faces[comp]:
                        if fid != outward:
                            new_regions.append([fid])
                    nxt.append(new_regions)
        placements = nxt
    return placements


def naive_enumerate(
    h: Graph, max_k: int, max_components: int = 3
) -> dict[bytes, Drawing]:
    """Good drawings of ``h`` with <= max_k crossings, brute force.

    No dual walks: every crossing scheme, every per-edge crossing order,
    every rotation system and every nesting placement is generated and
    filtered through ``validate``.  Returns drawings keyed by their
    reflection-quotient canonical key.  Guarded to 9 edges.
    """
    if h.num_edges > 9:
        raise SizeGuardError("naive enumerator is limited to 9 edges")
    edges = sorted(h.edges)
    admissible = [
        (e, f)
        for i, e in enumerate(edges)
        for f in edges[i + 1 :]
        if not (set(e) & set(f))
    ]
    out: dict[bytes, Drawing] = {}
    for size in range(max_k + 1):
        for scheme in itertools.combinations(admissible, size):
            crossings = [cross_node(e, f) for e, f in scheme]
            on_edge: dict = {e: [] for e in edges}
            for x in crossings:
                on_edge[x[0]].append(x)
                on_edge[x[1]].append(x)
            order_choices = [
                list(itertools.permutations(on_edge[e])) for e in edges
            ]
            for orders in itertools.product(*order_choices):
                edge_orders = {
                    e: seq for e, seq in zip(edges, orders) if seq
                }
                _enumerate_rotations(
                    h, crossings, edge_orders, max_components, out
                )
    return out


def _enumerate_rotations(h, crossings, edge_orders, max_components, out):
    nodes_darts: dict = {}
    for e in sorted(h.edges):
        seq = [e[0], *edge_orders.get(e, ()), e[1]]
        k = len(seq) - 2
        for s in range(k + 1):
            nodes_darts.setdefault(seq[s], []).append((e, s, 1))
            nodes_darts.setdefault(seq[s + 1], []).append((e, s, -1))
    vertex_nodes = sorted(n for n in nodes_darts if isinstance(n, int))
    cross_nodes = sorted(n for n in nodes_darts if not isinstance(n, int))
    vertex_choices = [list(_cyclic_orders(nodes_darts[v])) for v in vertex_nodes]
    cross_choices = []
    for x in cross_nodes:
        alts = [
            rot
            for rot in _cyclic_orders(nodes_darts[x])
            if rot[0][0] != rot[1][0] and rot[1][0] != rot[2][0]
        ]
        cross_choices.append(alts)
    for vrots in itertools.product(*vertex_choices):
        for xrots in itertools.product(*cross_choices):
            rotations = dict(zip(vertex_nodes, vrots))
            rotations.update(zip(cross_nodes, xrots))
            probe = Drawing.build(h, crossings, edge_orders, rotations, [])
            comp_of = probe._derived["comp_of"]
            comp_faces: dict = {}
            for orbit in probe.faces_raw():
                c = comp_of[probe.dart_tail(orbit[0])]
                comp_faces.setdefault(c, []).append(orbit[0])
            if len(comp_faces) > max_components:
                raise SizeGuardError("too many components for naive nesting")
            for regions in _region_partitions(comp_faces):
                d = Drawing.build(h, crossings, edge_orders, rotations, regions)
                if d.validate():
                    continue
                key = d.canonical_key()
                if key not in out:
                    out[key] = d
