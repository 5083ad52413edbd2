"""The window criterion and the two lower-bound search algorithms.

For a transitive decomposition H_1..H_t of G, a good drawing D, and a
positive rational c, the charge of a window is its internal crossing
count plus half its crossings with the rest of the drawn scope.  Charges
are additive over edge-disjoint unions and monotone under extension,
which makes them sound pruning predicates on partial drawings.

The level-i frontier holds the drawings of the union of the first i
parts whose every prefix window H_{1,s} keeps its charge strictly below
c*s, further filtered by the latent-path feasibility test.  An empty
frontier at any level certifies cr(G) >= ceil(c*t); a frontier that
survives all t levels consists of explicit counterexample drawings with
fewer than c*t crossings.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import __version__
from .config import DEFAULT_CONFIG, RunConfig
from .drawing import Drawing, HalfInt
from .enumeration import (
    BudgetPredicate,
    enumerate_drawings,
    extend_by_part,
    insert_paths_feasible,
)
from .errors import (
    CrossboundError,
    DomainError,
    PreconditionError,
    ResourceExhausted,
)
from .graphs import (
    Edge,
    Graph,
    TransitiveDecomposition,
    WindowRef,
    automorphisms,
    edge as mk_edge,
    isomorphism,
)
from .graphs import _part_shift


@dataclasses.dataclass(frozen=True)
class BoundProblem:
    """A decomposition plus the per-part rate c; the claim is cr >= ceil(c*t)."""

    decomposition: TransitiveDecomposition
    c: Fraction

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("c must be positive")

    @property
    def t(self) -> int:
        return self.decomposition.t

    @property
    def graph(self) -> Graph:
        return self.decomposition.base

    def ct(self) -> Fraction:
        return self.c * self.t

    def claimed_bound(self) -> int:
        return math.ceil(self.ct())


@dataclasses.dataclass(frozen=True)
class DeletionFamily:
    """Edge sets whose deletion leaves a subdivision of the previous
    family member, enabling the per-set pruning caps of the family rule."""

    deletion_sets: tuple[frozenset[Edge], ...]
    d: int
    target: Graph

    def cap(self, c: Fraction) -> Fraction:
        return c * self.d


@dataclasses.dataclass(frozen=True)
class LevelStats:
    level: int
    candidates: int
    pruned_latent: int
    kept: int
    budget_rejects: int


@dataclasses.dataclass(frozen=True)
class SearchFrontier:
    """The drawings of the first ``level`` parts that survived all filters,
    with the counts that produced them."""

    level: int
    drawings: tuple[Drawing, ...]
    stats: LevelStats


@dataclasses.dataclass(frozen=True)
class Certificate:
    """Machine-checkable outcome of a bound run.

    outcome "bound": the frontier died at level ``ell``; the certified
    inequality is cr(G) >= ceil(c*t).  outcome "refuted": ``drawings``
    are full good drawings of G with fewer than c*t crossings.  outcome
    "inconclusive": a resource guard tripped; never a bound.
    """

    outcome: str
    mode: str
    c: Fraction
    t: int
    graph_sha: str
    decomposition_sha: str
    config_echo: tuple[tuple[str, object], ...]
    engine_version: str
    levels: tuple[LevelStats, ...]
    ell: Optional[int] = None
    drawings: tuple[Drawing, ...] = ()
    graph: Optional[Graph] = None
    decomposition: Optional[TransitiveDecomposition] = None
    deletion_d: Optional[int] = None
    deletion_sets: tuple[frozenset[Edge], ...] = ()
    prior_note: str = ""

    def bound_value(self) -> Optional[int]:
        if self.outcome != "bound":
            return None
        return math.ceil(self.c * self.t)


# ---------------------------------------------------------------------------
# Window charges
# ---------------------------------------------------------------------------


def f_value(
    d: Drawing,
    decomposition: TransitiveDecomposition,
    window: WindowRef,
    scope: Optional[Iterable[Edge]] = None,
) -> HalfInt:
    """Charge of the window inside ``scope`` (default: all drawn edges)."""
    win = decomposition.window_edges(window)
    if scope is not None:
        scope = frozenset(scope)
        if not (win & d.graph.edges) <= scope:
            raise DomainError("window edges escape the given scope")
    return d.f_charge(win, scope)


def l_value(d: Drawing, p: BoundProblem, i: int) -> int:
    """Smallest window length l at part i whose charge reaches l*c, else t+1."""
    if d.graph.edges != p.graph.edges:
        raise PreconditionError("l-values are defined on full drawings of G")
    for l in range(1, p.t + 1):
        charge = f_value(d, p.decomposition, WindowRef(i, l))
        if charge.cmp(l * p.c) >= 0:
            return l
    return p.t + 1


def lemma1_decompose(d: Drawing, p: BoundProblem) -> list[WindowRef]:
    """A block tiling of the part cycle with every block fully charged.

    Requires every l-value to be at most t.  Blocks are grown greedily,
    each taking the l-value of its first part as its length; the pass
    starts right after a maximizing part, and if that walk closes only
    after winding more than once, the remaining starts are scanned for a
    walk that closes after exactly one turn.  Every returned block (r, h)
    satisfies charge(H_{r, r-1+h}) >= c*h, and the blocks cover each part
    exactly once.
    """
    t = p.t
    ls = {i: l_value(d, p, i) for i in range(1, t + 1)}
    lmax = max(ls.values())
    if lmax > t:
        raise PreconditionError("some l-value exceeds t; the tiling hypothesis fails")
    imax = min(i for i in range(1, t + 1) if ls[i] == lmax)

    def walk(start: int) -> Optional[list[WindowRef]]:
        blocks: list[WindowRef] = []
        covered = 0
        pos = start
        while covered < t:
            h = ls[(pos - 1) % t + 1]
            if covered + h > t:
                return None
            blocks.append(WindowRef((pos - 1) % t + 1, h))
            covered += h
            pos += h
        return blocks

    starts = [(imax + off) % t + 1 for off in range(t)]
    blocks = None
    for s in starts:
        blocks = walk(s)
        if blocks is not None:
            break
    if blocks is None:
        raise CrossboundError("no exact block tiling found")
    assert sum(b.length for b in blocks) == t
    for b in blocks:
        charge = f_value(d, p.decomposition, b)
        assert charge.cmp(b.length * p.c) >= 0
    return blocks


# ---------------------------------------------------------------------------
# Latent paths
# ---------------------------------------------------------------------------


def latent_paths(
    d: Drawing, g: Graph, config: RunConfig = DEFAULT_CONFIG
) -> list[tuple[int, ...]]:
    """A maximal independent set of latent paths of ``d`` inside ``g``.

    A latent path joins two drawn vertices that are unsaturated (drawn
    degree below their degree in g) and separated (no common region
    boundary), through internal vertices that are not drawn yet.  Paths
    are collected greedily, shortest first then lexicographic, keeping
    the set edge-disjoint; path length is capped by configuration.
    """
    drawn_vs = set(d.graph.vertices)
    deg_d = d.graph.degrees()
    deg_g = g.degrees()
    unsat = sorted(v for v in drawn_vs if deg_d.get(v, 0) < deg_g[v])
    pairs = [
        (u, v)
        for ui, u in enumerate(unsat)
        for v in unsat[ui + 1 :]
        if d.separated(u, v)
    ]
    if not pairs:
        return []
    adj = g.adjacency()
    cap = config.latent_path_cap
    candidates: list[tuple[int, ...]] = []
    drawn_edges = d.graph.edges
    for u, v in pairs:
        stack = [(u, (u,))]
        while stack:
            node, path = stack.pop()
            for w in sorted(adj[node]):
                if w == v:
                    # a drawn closing edge adds nothing to the extension
                    if mk_edge(node, v) not in drawn_edges:
                        candidates.append(path + (v,))
                    continue
                if w in drawn_vs or w in path:
                    continue
                if len(path) - 1 >= cap:
                    continue
                stack.append((w, path + (w,)))
    normalized = sorted(
        {min(p, tuple(reversed(p))) for p in candidates},
        key=lambda p: (len(p), p),
    )
    chosen: list[tuple[int, ...]] = []
    used: set[Edge] = set()
    for path in normalized:
        es = {mk_edge(a, b) for a, b in zip(path, path[1:])}
        if es & used:
            continue
        chosen.append(path)
        used |= es
    return chosen


# ---------------------------------------------------------------------------
# Algorithm 1 / Algorithm 2
# ---------------------------------------------------------------------------


def _part_fixing_symmetry(
    p: BoundProblem, config: RunConfig
) -> list[dict[int, int]]:
    """Automorphisms of G mapping every part onto itself (identity dropped)."""
    out = []
    identity = {v: v for v in p.graph.vertices}
    for theta in automorphisms(p.graph, config):
        if theta == identity:
            continue
        if _part_shift(theta, p.decomposition.parts) == 0:
            out.append(theta)
    return out


def _budget_for_level(
    p: BoundProblem,
    level: int,
    total_cap: int,
    family: Optional[DeletionFamily],
    counter: Optional[list] = None,
) -> BudgetPredicate:
    windows = tuple(
        (p.decomposition.window_edges(WindowRef(1, s)), p.c * s)
        for s in range(1, level + 1)
    )
    caps = ()
    if family is not None:
        caps = tuple((es, family.cap(p.c)) for es in family.deletion_sets)
    return BudgetPredicate(windows, caps, total_cap, counter)


def _rotate_problem(p: BoundProblem, r: int) -> BoundProblem:
    """The same problem with part r moved to the front."""
    parts = p.decomposition.parts
    rotated = parts[r - 1 :] + parts[: r - 1]
    dec = TransitiveDecomposition(
        p.decomposition.base, rotated, p.decomposition.witnesses
    )
    return BoundProblem(dec, p.c)


def algorithm1(
    p: BoundProblem,
    config: RunConfig = DEFAULT_CONFIG,
    family: Optional[DeletionFamily] = None,
    prior_note: str = "",
) -> Certificate:
    """Level-by-level search deciding whether cr(G) >= c*t.

    Level 1 enumerates the drawings of H_1 with fewer than c crossings up
    to the part-fixing symmetry quotient; each later level extends every
    surviving drawing by the next part under the prefix window budgets,
    filtering by latent-path feasibility.  Passing a deletion ``family``
    adds its caps to every budget, which is the family variant of the
    search (its four modified steps are exactly these caps).
    """
    if config.root_strategy == "best" and p.t > 1:
        return _best_rotation(p, config, family, prior_note)
    return _run_levels(p, config, family, prior_note)


def _best_rotation(p, config, family, prior_note) -> Certificate:
    best = None
    best_peak = None
    for r in range(1, p.t + 1):
        cert = _run_levels(_rotate_problem(p, r), config, family, prior_note)
        peak = max((ls.kept for ls in cert.levels), default=0)
        if best is None or peak < best_peak:
            best, best_peak = cert, peak
    return best


def _run_levels(
    p: BoundProblem,
    config: RunConfig,
    family: Optional[DeletionFamily],
    prior_note: str,
) -> Certificate:
    mode = "algorithm2" if family is not None else "algorithm1"
    g = p.graph
    t = p.t
    total_cap = p.claimed_bound() - 1
    symmetry = _part_fixing_symmetry(p, config)
    stats: list[LevelStats] = []

    def certificate(outcome, ell=None, drawings=()):
        return Certificate(
            outcome=outcome,
            mode=mode,
            c=p.c,
            t=t,
            graph_sha=g.sha256(),
            decomposition_sha=p.decomposition.sha256(),
            config_echo=config.echo_items(),
            engine_version=__version__,
            levels=tuple(stats),
            ell=ell,
            drawings=tuple(drawings),
            graph=g,
            decomposition=p.decomposition,
            deletion_d=None if family is None else family.d,
            deletion_sets=() if family is None else family.deletion_sets,
            prior_note=prior_note,
        )

    def latent_filter(cands: Sequence[Drawing], level, budget) -> list[Drawing]:
        kept = []
        for dd in cands:
            paths = latent_paths(dd, g, config)
            if insert_paths_feasible(dd, paths, budget, config):
                kept.append(dd)
        return kept

    try:
        rejects = [0]
        budget1 = _budget_for_level(p, 1, total_cap, family, rejects)
        h1 = g.subgraph_of_edges(p.decomposition.part(1))
        cap1 = min(total_cap, math.ceil(p.c) - 1)
        s_prime = enumerate_drawings(
            h1, max(cap1, 0), budget1, symmetry, config
        )
        if not s_prime:
            stats.append(LevelStats(1, 0, 0, 0, rejects[0]))
            return certificate("bound", ell=1)
        kept = latent_filter(s_prime, 1, budget1)
        stats.append(
            LevelStats(1, len(s_prime), len(s_prime) - len(kept),
                       len(kept), rejects[0])
        )
        if not kept:
            return certificate("bound", ell=1)
        frontier = SearchFrontier(1, tuple(kept), stats[-1])

        for i in range(2, t + 1):
            rejects = [0]
            budget = _budget_for_level(p, i, total_cap, family, rejects)
            part = p.decomposition.part(i)
            s_prime = []
            seen = set()
            for dd in frontier.drawings:
                exts = extend_by_part(dd, part, budget, symmetry, config)
                if i == t and exts:
                    stats.append(
                        LevelStats(i, len(exts), 0, len(exts), rejects[0])
                    )
                    return certificate("refuted", drawings=exts)
                for ext in exts:
                    key = ext.canonical_key(symmetry)
                    if key not in seen:
                        seen.add(key)
                        s_prime.append(ext)
                if len(s_prime) > config.max_frontier:
                    raise ResourceExhausted(
                        f"level {i} frontier exceeded {config.max_frontier}",
                        stats,
                    )
            kept = latent_filter(s_prime, i, budget)
            stats.append(
                LevelStats(i, len(s_prime), len(s_prime) - len(kept),
                           len(kept), rejects[0])
            )
            if not kept:
                return certificate("bound", ell=i)
            frontier = SearchFrontier(i, tuple(kept), stats[-1])
    except ResourceExhausted:
        return certificate("inconclusive")
    raise AssertionError("level loop must return")  # pragma: no cover


def smooth_degree_two(g: Graph) -> Graph:
    """Suppress degree-2 vertices; fails if a parallel edge or loop appears."""
    edges = set(g.edges)
    degs = {v: 0 for v in g.vertices}
    for u, v in edges:
        degs[u] += 1
        degs[v] += 1
    changed = True
    while changed:
        changed = False
        for w in sorted(degs):
            if degs[w] != 2:
                continue
            nbrs = [x for e in edges if w in e for x in e if x != w]
            a, b = nbrs
            if a == b or mk_edge(a, b) in edges:
                raise CrossboundError(
                    "smoothing would create a loop or parallel edge"
                )
            edges.discard(mk_edge(w, a))
            edges.discard(mk_edge(w, b))
            edges.add(mk_edge(a, b))
            del degs[w]
            changed = True
            break
    vs = [v for v in degs]
    return Graph.build(vs, edges)


def verify_deletion_family(g: Graph, family: DeletionFamily) -> None:
    """Check every deletion set leaves a subdivision of the family target."""
    if family.d <= 0:
        raise PreconditionError("deletion family needs d >= 1")
    target = smooth_degree_two(family.target)
    for idx, es in enumerate(family.deletion_sets, start=1):
        stray = es - g.edges
        if stray:
            raise PreconditionError(
                f"deletion set {idx} uses non-edges {sorted(stray)}"
            )
        remaining = g.edges - es
        kept = Graph.from_edges(remaining)
        smoothed = smooth_degree_two(kept)
        if isomorphism(smoothed, target) is None:
            raise PreconditionError(
                f"deleting set {idx} does not leave a subdivision of the target"
            )


def algorithm2(
    p: BoundProblem,
    family: DeletionFamily,
    prior_note: str,
    config: RunConfig = DEFAULT_CONFIG,
) -> Certificate:
    """The family-pruned search: algorithm 1 plus the deletion-set caps.

    ``prior_note`` documents the already-certified bound on the smaller
    family member that makes the caps sound; it is echoed into the
    certificate verbatim.
    """
    verify_deletion_family(p.graph, family)
    return algorithm1(p, config, family=family, prior_note=prior_note)


def theorem2_lower_bound(
    p: BoundProblem,
    mode: str = "algorithm1",
    family: Optional[DeletionFamily] = None,
    prior_note: str = "",
    config: RunConfig = DEFAULT_CONFIG,
) -> Certificate:
    """Run the requested algorithm and return its certificate.

    A "bound" outcome certifies cr(G) >= ceil(c*t) with the ceiling taken
    exactly on rationals; a "refuted" outcome carries counterexample
    drawings together with their exact crossing counts.
    """
    if mode == "algorithm1":
        return algorithm1(p, config)
    if mode == "algorithm2":
        if family is None:
            raise PreconditionError("algorithm2 needs a deletion family")
        return algorithm2(p, family, prior_note, config)
    raise ValueError(f"unknown mode {mode!r}")
