import random
from fractions import Fraction

import pytest

from crossbound.drawing import (
    Drawing,
    HalfInt,
    cross_node,
    parse_drawing,
    serialize_drawing,
)
from crossbound.errors import DomainError

from conftest import (
    complete,
    k4_one_crossing,
    planar_k4,
    triangle_drawing,
)


class TestHalfInt:
    def test_arithmetic(self):
        assert (HalfInt(3) + HalfInt(2)).twice == 5
        assert str(HalfInt(4)) == "2"
        assert str(HalfInt(3)) == "3/2"

    def test_exact_comparison_with_rationals(self):
        assert HalfInt(1).cmp(Fraction(2, 5)) > 0   # 1/2 > 2/5
        assert HalfInt(1).cmp(Fraction(1, 2)) == 0
        assert HalfInt(1).cmp(Fraction(51, 100)) < 0
        assert HalfInt(0).cmp(Fraction(1, 1000000)) < 0

    def test_nonnegative(self):
        with pytest.raises(ValueError):
            HalfInt(-1)


class TestValidate:
    def test_planar_triangle_ok(self):
        assert triangle_drawing(1, 2, 3).validate() == []

    def test_k4_one_crossing_ok(self):
        d = k4_one_crossing()
        assert d.validate() == []
        # planarization Euler count: 5 nodes, 8 segments, 5 faces
        assert len(d.nodes) == 5
        assert len(d.faces_raw()) == 5

    def test_touching_rotation_rejected(self):
        d = k4_one_crossing()
        x = cross_node((1, 3), (2, 4))
        rot = dict(d.rotations)
        a, b, c, e = rot[x]
        rot[x] = (a, c, b, e)  # edges no longer alternate
        bad = Drawing.build(
            d.graph, d.crossings, dict(d.orders), rot, d.regions
        )
        assert any("touching" in v for v in bad.validate())

    def test_adjacent_crossing_rejected(self):
        g = complete(3)
        d = triangle_drawing(1, 2, 3)
        x = cross_node((1, 2), (1, 3))
        bad = Drawing(
            g,
            frozenset([x]),
            (((1, 2), (x,)), ((1, 3), (x,))),
            d.rotations,
            d.regions,
        )
        assert any("adjacent" in v for v in bad.validate())

    def test_bad_region_partition_rejected(self):
        d = triangle_drawing(1, 2, 3)
        faces = [orb[0] for orb in d.faces_raw()]
        both = Drawing.build(
            d.graph, [], {}, dict(d.rotations), [faces]
        )
        assert both.validate()  # two faces of one component in one region


class TestCrBetween:
    def test_union_additivity_identity(self):
        d = k4_one_crossing()
        edges = sorted(d.graph.edges)
        a = frozenset(edges[:3])
        b = frozenset(edges[3:])
        total = d.cr_between(a | b, a | b)
        assert total == (
            d.cr_between(a, a) + d.cr_between(b, b) + d.cr_between(a, b)
        )

    def test_total_crossings(self):
        d = k4_one_crossing()
        assert d.cr_between(d.graph.edges, d.graph.edges) == 1

    def test_single_pair(self):
        d = k4_one_crossing()
        assert d.cr_between([(1, 3)], [(2, 4)]) == 1
        assert d.cr_between([(1, 2)], [(3, 4)]) == 0

    def test_undrawn_edge_rejected(self):
        d = triangle_drawing(1, 2, 3)
        with pytest.raises(DomainError):
            d.cr_between([(1, 4)], [(2, 3)])

    def test_f_charge_half_weight(self):
        d = k4_one_crossing()
        # window containing exactly one side of the crossing: charge 1/2
        assert d.f_charge([(1, 3)]).twice == 1
        assert d.f_charge([(1, 3), (2, 4)]).twice == 2
        assert d.f_charge(d.graph.edges).twice == 2


class TestFacesAndSeparation:
    def test_c4_two_faces(self):
        from conftest import cycle
        from crossbound.enumeration import enumerate_drawings

        d = enumerate_drawings(cycle(4), 0)[0]
        assert len(d.merged_faces()) == 2
        assert not d.separated(1, 2)

    def test_planar_k4_four_faces(self):
        d = planar_k4()
        assert d.validate() == []
        # V - E + F = 2 for the single component
        assert len(d.merged_faces()) == 4

    def test_nested_triangles_three_merged_faces(self):
        a = triangle_drawing(1, 2, 3)
        b = triangle_drawing(4, 5, 6)
        g = complete(3)
        from crossbound.graphs import Graph

        union = Graph.from_edges(list(a.graph.edges) + list(b.graph.edges))
        rot = dict(a.rotations) | dict(b.rotations)
        fa = [orb[0] for orb in a.faces_raw()]
        fb = [orb[0] for orb in b.faces_raw()]
        d = Drawing.build(
            union, [], {}, rot, [[fa[0], fb[0]], [fa[1]], [fb[1]]]
        )
        assert d.validate() == []
        assert len(d.merged_faces()) == 3
        # triangles put every vertex on every boundary: nothing separates
        assert not d.separated(1, 4)

    def test_k4_host_separation(self):
        # triangle 5,6,7 inside the K4 face bounded by 1,2,3 only:
        # vertex 4 is not on that region, so it separates from the triangle
        k4 = planar_k4()
        tri = triangle_drawing(5, 6, 7)
        from crossbound.graphs import Graph

        union = Graph.from_edges(list(k4.graph.edges) + list(tri.graph.edges))
        rot = dict(k4.rotations) | dict(tri.rotations)
        host = next(
            orb[0]
            for orb in k4.faces_raw()
            if {k4.dart_tail(dd) for dd in orb} == {1, 2, 3}
        )
        others = [orb[0] for orb in k4.faces_raw() if orb[0] != host]
        ft = [orb[0] for orb in tri.faces_raw()]
        d = Drawing.build(
            union, [], {}, rot,
            [[host, ft[0]], [ft[1]], *[[f] for f in others]],
        )
        assert d.validate() == []
        assert d.separated(5, 4)
        assert not d.separated(5, 1)
        assert len(d.merged_faces()) == 5

    def test_k4_one_crossing_no_separated_pairs(self):
        # the outer quadrilateral region touches all four vertices
        d = k4_one_crossing()
        for u in range(1, 5):
            for v in range(u + 1, 5):
                assert not d.separated(u, v)

    def test_undrawn_vertex_rejected(self):
        d = triangle_drawing(1, 2, 3)
        with pytest.raises(DomainError):
            d.separated(1, 9)


class TestCanonicalKey:
    def test_mirror_same_key(self):
        d = k4_one_crossing()
        assert d.canonical_key() == d.reflect().canonical_key()
        assert d.reflect().validate() == []

    def test_relabel_same_key(self):
        d = k4_one_crossing()
        theta = {1: 2, 2: 3, 3: 4, 4: 1}
        relabeled = d.relabel(theta)
        assert relabeled.validate() == []
        assert d.canonical_key([theta]) == relabeled.canonical_key([theta])

    def test_different_crossing_counts_differ(self):
        assert planar_k4().canonical_key() != k4_one_crossing().canonical_key()

    def test_input_order_insensitive(self):
        d = k4_one_crossing()
        rot_shuffled = {}
        for n, rot in reversed(d.rotations):
            rot_shuffled[n] = rot[2:] + rot[:2] if len(rot) > 2 else rot
        rebuilt = Drawing.build(
            d.graph, set(d.crossings), dict(d.orders), rot_shuffled,
            [list(reg) for reg in reversed(d.regions)],
        )
        assert rebuilt == d
        assert rebuilt.canonical_key() == d.canonical_key()

    def test_non_stabilizing_map_rejected(self):
        d = triangle_drawing(1, 2, 3)
        with pytest.raises(DomainError):
            d.canonical_key([{1: 1, 2: 2, 3: 9}])


class TestSerialization:
    def drawings(self):
        out = [
            triangle_drawing(1, 2, 3),
            planar_k4(),
            k4_one_crossing(),
        ]
        from crossbound.enumeration import enumerate_drawings
        from crossbound.graphs import Graph

        g2 = Graph.from_edges([(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)])
        out += enumerate_drawings(g2, 2)[:5]
        return out

    def test_round_trip_structural(self):
        for d in self.drawings():
            assert parse_drawing(serialize_drawing(d)) == d

    def test_round_trip_byte_exact(self):
        for d in self.drawings():
            text = serialize_drawing(d)
            assert serialize_drawing(parse_drawing(text)) == text


class TestRestrict:
    def test_restrict_is_valid_and_monotone(self, k4_drawings):
        random.seed(3)
        for d in k4_drawings:
            edges = sorted(d.graph.edges)
            keep = frozenset(random.sample(edges, 4))
            sub = d.restrict(keep)
            assert sub.validate() == []
            window = frozenset(edges[:2])
            assert (
                sub.f_charge(window).twice <= d.f_charge(window).twice
            )

    def test_restrict_to_nothing(self):
        d = planar_k4()
        assert d.restrict([]) == Drawing.empty()
