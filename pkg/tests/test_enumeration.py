from fractions import Fraction

import networkx as nx
import pytest

from crossbound.drawing import Drawing
from crossbound.enumeration import (
    BudgetPredicate,
    enumerate_drawings,
    extend_by_part,
    grouped_edge_order,
    insert_edge,
    insert_paths_feasible,
)
from crossbound.errors import DomainError, SizeGuardError
from crossbound.graphs import Graph
from crossbound.config import RunConfig
from crossbound.oracle import naive_enumerate

from conftest import (
    complete,
    cycle,
    k4_one_crossing,
    planar_k4,
    triangle_drawing,
)


class TestEnumerate:
    def test_c3_unique_embedding(self):
        out = enumerate_drawings(cycle(3), 0)
        assert len(out) == 1
        assert out[0].num_crossings() == 0

    def test_k5_planar_empty(self):
        # independent planarity oracle
        assert not nx.check_planarity(nx.complete_graph(5))[0]
        assert enumerate_drawings(complete(5), 0) == []

    def test_planar_graph_nonempty(self):
        g = cycle(6)
        assert nx.check_planarity(nx.cycle_graph(6))[0]
        assert len(enumerate_drawings(g, 0)) == 1

    def test_k4_classes_match_naive(self):
        engine = enumerate_drawings(complete(4), 1)
        naive = naive_enumerate(complete(4), 1)
        assert {d.canonical_key() for d in engine} == set(naive)
        by_cr = {}
        for d in engine:
            by_cr.setdefault(d.num_crossings(), 0)
            by_cr[d.num_crossings()] += 1
        assert by_cr[0] == 1  # the planar class
        assert by_cr[1] == 3  # one class per opposite pair

    @pytest.mark.parametrize(
        "edges,k",
        [
            ([(1, 2), (2, 3), (3, 4), (1, 4)], 2),
            ([(i, j) for i in range(1, 5) for j in range(i + 1, 5)], 2),
            ([(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)], 2),
            ([(1, 2), (1, 3), (1, 4), (1, 5), (6, 7)], 1),
            ([(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)], 2),
            ([(1, 2), (1, 3), (2, 3), (4, 5), (5, 6)], 2),
        ],
    )
    def test_agrees_with_naive_enumerator(self, edges, k):
        g = Graph.from_edges(edges)
        engine = {d.canonical_key() for d in enumerate_drawings(g, k)}
        naive = set(naive_enumerate(g, k))
        assert engine == naive

    def test_symmetry_quotient(self):
        from crossbound.graphs import automorphisms

        k5 = complete(5)
        full = enumerate_drawings(k5, 1)
        quotient = enumerate_drawings(k5, 1, symmetry=automorphisms(k5))
        assert len(full) == 15
        assert len(quotient) == 1

    def test_budget_filters_results(self):
        g = complete(4)
        budget = BudgetPredicate(
            window_checks=((frozenset({(1, 3), (2, 4)}), Fraction(1, 2)),),
            total_cap=1,
        )
        out = enumerate_drawings(g, 1, budget)
        assert out
        for d in out:
            assert d.f_charge({(1, 3), (2, 4)}).cmp(Fraction(1, 2)) < 0

    def test_size_guard(self):
        with pytest.raises(SizeGuardError):
            enumerate_drawings(
                complete(5), 0, config=RunConfig(max_enum_edges=5)
            )

    def test_all_results_validate_and_satisfy_budget(self):
        budget = BudgetPredicate.total_only(2)
        for d in enumerate_drawings(complete(4), 2, budget):
            assert d.validate() == []
            assert budget.check(d)


class TestInsertEdge:
    def test_common_face_chord_has_zero_crossing_extension(self):
        d = triangle_drawing(1, 2, 3)
        base = Drawing.build(
            Graph.from_edges([(1, 2), (2, 3), (3, 4), (1, 4)]),
            [], {},
            {
                1: (((1, 2), 0, 1), ((1, 4), 0, 1)),
                2: (((1, 2), 0, -1), ((2, 3), 0, 1)),
                3: (((2, 3), 0, -1), ((3, 4), 0, 1)),
                4: (((3, 4), 0, -1), ((1, 4), 0, -1)),
            },
            [],
        )
        base = Drawing.build(
            base.graph, [], {}, dict(base.rotations),
            [[orb[0]] for orb in base.faces_raw()],
        )
        exts = insert_edge(base, (1, 3), BudgetPredicate.total_only(2))
        assert any(x.num_crossings() == 0 for x in exts)

    def test_separated_endpoints_force_crossings(self):
        # vertex 5 hangs inside the K4 face bounded by {1,2,3}; vertex 4
        # is separated from it, so every insertion of (4,5) crosses
        k4 = planar_k4()
        host = next(
            orb[0]
            for orb in k4.faces_raw()
            if {k4.dart_tail(dd) for dd in orb} == {1, 2, 3}
        )
        region = k4.region_index_of_face(host)
        exts5 = [
            d
            for d in insert_edge(k4, (1, 5), BudgetPredicate.total_only(0))
            if d.region_index_of_face(
                d.face_of_dart(((1, 5), 0, -1))
            ) is not None
        ]
        anchored = [d for d in exts5 if d.separated(5, 4)]
        assert anchored, "some placement separates 5 from 4"
        base = anchored[0]
        exts = insert_edge(base, (4, 5), BudgetPredicate.total_only(3))
        assert exts
        assert min(x.num_crossings() for x in exts) == 1

    def test_blocked_by_adjacency_and_budget_is_empty(self):
        # hub 1 sits inside triangle 2,3,4 (its own edges cannot be
        # crossed); vertex 8 hangs inside disjoint triangle 5,6,7; any
        # arc needs two crossings, so a total cap of 1 blocks everything
        k4 = planar_k4()
        tri = triangle_drawing(5, 6, 7)
        union = Graph.from_edges(
            list(k4.graph.edges) + list(tri.graph.edges)
        )
        rot = dict(k4.rotations) | dict(tri.rotations)
        outer = next(
            orb[0]
            for orb in k4.faces_raw()
            if {k4.dart_tail(dd) for dd in orb} == {2, 3, 4}
        )
        ft = [orb[0] for orb in tri.faces_raw()]
        others = [orb[0] for orb in k4.faces_raw() if orb[0] != outer]
        base = Drawing.build(
            union, [], {}, rot,
            [[outer, ft[0]], [ft[1]], *[[f] for f in others]],
        )
        assert base.validate() == []
        with_8 = [
            d
            for d in insert_edge(base, (5, 8), BudgetPredicate.total_only(0))
            if d.separated(8, 1)
        ]
        assert with_8
        blocked = insert_edge(with_8[0], (1, 8), BudgetPredicate.total_only(1))
        assert blocked == []
        unblocked = insert_edge(with_8[0], (1, 8), BudgetPredicate.total_only(2))
        assert unblocked
        assert min(x.num_crossings() for x in unblocked) == 2

    def test_already_drawn_rejected(self):
        d = triangle_drawing(1, 2, 3)
        with pytest.raises(DomainError):
            insert_edge(d, (1, 2), BudgetPredicate.total_only(1))

    def test_restriction_recovers_base(self, k4_drawings):
        budget = BudgetPredicate.total_only(3)
        for d in k4_drawings[:4]:
            for e in sorted(d.graph.edges)[:3]:
                base = d.restrict(d.graph.edges - {e})
                exts = insert_edge(base, e, budget)
                assert any(x == d for x in exts)


class TestExtendByPart:
    def test_forest_extension_is_planar(self):
        d = enumerate_drawings(
            Graph.from_edges([(1, 2)]), 0
        )[0]
        budget = BudgetPredicate(
            window_checks=((frozenset({(1, 2), (2, 3)}), Fraction(1, 6)),),
            total_cap=0,
        )
        out = extend_by_part(d, [(2, 3)], budget)
        assert out
        for x in out:
            assert x.num_crossings() == 0

    def test_p52_first_two_rotations_extend(self):
        from crossbound.families import petersen
        from crossbound.graphs import WindowRef

        g, dec = petersen(5, 2)
        c = Fraction(2, 5)
        h1 = g.subgraph_of_edges(dec.part(1))
        budget1 = BudgetPredicate(
            window_checks=((dec.window_edges(WindowRef(1, 1)), c),),
            total_cap=1,
        )
        level1 = enumerate_drawings(h1, 1, budget1)
        assert level1
        budget2 = BudgetPredicate(
            window_checks=(
                (dec.window_edges(WindowRef(1, 1)), c),
                (dec.window_edges(WindowRef(1, 2)), 2 * c),
            ),
            total_cap=1,
        )
        extended = []
        for d in level1:
            extended += extend_by_part(d, dec.part(2), budget2)
        assert extended

    def test_zero_budget_separated_part_is_empty(self):
        k4 = planar_k4()
        host = next(
            orb[0]
            for orb in k4.faces_raw()
            if {k4.dart_tail(dd) for dd in orb} == {1, 2, 3}
        )
        exts5 = insert_edge(k4, (1, 5), BudgetPredicate.total_only(0))
        base = next(d for d in exts5 if d.separated(5, 4))
        assert extend_by_part(base, [(4, 5)], BudgetPredicate.total_only(0)) == []

    def test_restriction_reproduces_base(self):
        d = enumerate_drawings(cycle(4), 0)[0]
        out = extend_by_part(
            d, [(1, 3)], BudgetPredicate.total_only(1)
        )
        for x in out:
            assert x.restrict(d.graph.edges) == d


class TestInsertPaths:
    def test_empty_paths_reduce_to_budget(self):
        d = k4_one_crossing()
        assert insert_paths_feasible(d, [], BudgetPredicate.total_only(1))
        assert not insert_paths_feasible(d, [], BudgetPredicate.total_only(0))

    def test_common_face_path_feasible(self):
        d = triangle_drawing(1, 2, 3)
        assert insert_paths_feasible(
            d, [(1, 9, 2)], BudgetPredicate.total_only(0)
        )

    def test_separated_path_needs_crossing(self):
        k4 = planar_k4()
        exts5 = insert_edge(k4, (1, 5), BudgetPredicate.total_only(0))
        base = next(d for d in exts5 if d.separated(5, 4))
        assert not insert_paths_feasible(
            base, [(5, 4)], BudgetPredicate.total_only(0)
        )
        assert insert_paths_feasible(
            base, [(5, 4)], BudgetPredicate.total_only(1)
        )

    def test_edge_disjointness_enforced(self):
        d = triangle_drawing(1, 2, 3)
        with pytest.raises(DomainError):
            insert_paths_feasible(
                d, [(1, 9, 2), (3, 9, 2)][:1] + [(1, 9, 2)],
                BudgetPredicate.total_only(0),
            )


def test_grouped_edge_order_completes_vertices():
    order = grouped_edge_order(complete(4))
    assert order[:3] == [(1, 2), (1, 3), (2, 3)]
