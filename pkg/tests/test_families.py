import pytest

from crossbound.errors import CrossboundError
from crossbound.families import (
    Tile,
    complete_odd,
    cycle_family,
    edge_tile,
    parse_tile,
    petersen,
    petersen_deletion_sets,
    serialize_tile,
    single_vertex_tile,
    tile_power_close,
)
from crossbound.graphs import Graph, isomorphism, verify_transitive_decomposition

from conftest import complete, cycle


class TestPetersen:
    def test_p14_6_paired_shape(self):
        g, dec = petersen(14, 6, "paired")
        assert g.num_vertices == 28
        assert g.num_edges == 42
        assert dec.t == 7
        assert all(len(p) == 6 for p in dec.parts)

    def test_rotation_decomposition_sizes(self):
        for n, k in [(5, 2), (6, 2), (7, 2), (8, 3), (9, 2)]:
            g, dec = petersen(n, k)
            assert g.num_vertices == 2 * n
            assert g.num_edges == 3 * n
            assert dec.t == n
            assert all(len(p) == 3 for p in dec.parts)

    def test_p62_is_planar(self):
        import networkx as nx

        g, _ = petersen(6, 2)
        assert nx.check_planarity(nx.Graph(list(g.edges)))[0]

    def test_p52_is_petersen(self):
        import networkx as nx

        g, _ = petersen(5, 2)
        assert nx.is_isomorphic(nx.Graph(list(g.edges)), nx.petersen_graph())

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            petersen(2, 1)
        with pytest.raises(ValueError):
            petersen(6, 3)  # 2k = n collapses inner edges
        with pytest.raises(ValueError):
            petersen(5, 2, "paired")  # not of the 4h+2 shape
        with pytest.raises(ValueError):
            petersen(5, 5)

    def test_deletion_set_counts(self):
        assert len(petersen_deletion_sets(10, 4)) == 15
        assert len(petersen_deletion_sets(14, 6)) == 21
        with pytest.raises(ValueError):
            petersen_deletion_sets(10, 3)


class TestCompleteOdd:
    def test_k5(self):
        g, dec = complete_odd(2)
        assert g == complete(5)
        assert dec.t == 5
        assert all(len(p) == 2 for p in dec.parts)

    def test_k3(self):
        g, dec = complete_odd(1)
        assert g == complete(3)
        assert dec.t == 3

    def test_k7(self):
        g, dec = complete_odd(3)
        assert g == complete(7)
        assert dec.t == 7
        assert all(len(p) == 3 for p in dec.parts)


class TestCycleFamily:
    @pytest.mark.parametrize("n", [3, 4, 6])
    def test_structure(self, n):
        g, dec = cycle_family(n)
        assert g == cycle(n)
        assert dec.t == n

    def test_k3_matches_complete_odd(self):
        g1, _ = cycle_family(3)
        g2, _ = complete_odd(1)
        assert g1.edges == g2.edges


class TestTiles:
    def test_closure_counts(self):
        q = edge_tile()
        for t in (3, 4, 5):
            g, _ = tile_power_close(q, t)
            assert g.num_vertices == t * q.graph.num_vertices
            assert g.num_edges == t * (q.graph.num_edges + q.width)

    def test_parts_split_into_internal_and_external(self):
        q = edge_tile()
        g, dec = tile_power_close(q, 4)
        nv = q.graph.num_vertices
        for idx, part in enumerate(dec.parts):
            copy_range = set(range(idx * nv + 1, (idx + 1) * nv + 1))
            internal = {e for e in part if set(e) <= copy_range}
            external = part - internal
            assert len(internal) == q.graph.num_edges
            assert len(external) == q.width

    def test_single_vertex_tile_gives_cycles(self):
        g, dec = tile_power_close(single_vertex_tile(), 5)
        assert g.edges == cycle(5).edges
        assert dec.t == 5

    def test_t2_closure_allowed_but_decomposition_refused(self):
        # width-1 path tile: its square closes to C4 without parallels
        path_tile = Tile(Graph.build([1, 2], [(1, 2)]), (1,), (2,))
        g, dec = tile_power_close(path_tile, 2, want_decomposition=False)
        assert dec is None
        assert g.edges == cycle(4).edges
        with pytest.raises(CrossboundError):
            tile_power_close(path_tile, 2)

    def test_t2_parallel_closure_rejected(self):
        # the width-2 edge tile at t=2 would double its junction edges
        with pytest.raises(CrossboundError):
            tile_power_close(edge_tile(), 2, want_decomposition=False)

    def test_twisted_t3_is_k33(self):
        g, dec = tile_power_close(edge_tile(twisted=True), 3)
        k33 = Graph.from_edges([(i, j) for i in (1, 2, 3) for j in (4, 5, 6)])
        assert isomorphism(g, k33) is not None
        assert dec.t == 3

    def test_parallel_closure_rejected(self):
        doubled = Tile(Graph.build([1], []), (1, 1), (1, 1))
        with pytest.raises(CrossboundError):
            tile_power_close(doubled, 4)

    def test_width_mismatch_rejected(self):
        with pytest.raises(ValueError):
            Tile(Graph.build([1, 2], [(1, 2)]), (1,), (1, 2))

    def test_tile_round_trip(self):
        q = edge_tile(twisted=True)
        assert parse_tile(serialize_tile(q)) == q


def test_every_generator_output_reverifies():
    outputs = [
        petersen(5, 2),
        petersen(6, 2),
        petersen(10, 4, "paired"),
        complete_odd(2),
        cycle_family(5),
        tile_power_close(edge_tile(), 3),
        tile_power_close(edge_tile(twisted=True), 5),
        tile_power_close(single_vertex_tile(), 4),
    ]
    for g, dec in outputs:
        redone = verify_transitive_decomposition(g, dec.parts)
        assert redone.t == dec.t
