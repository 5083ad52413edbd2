import pytest

from crossbound.drawing import Drawing, cross_node
from crossbound.enumeration import enumerate_drawings
from crossbound.graphs import Graph


def complete(n):
    return Graph.from_edges(
        [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    )


def cycle(n):
    return Graph.from_edges([(i, i % n + 1) for i in range(1, n + 1)])


def complete_bipartite(a, b):
    left = range(1, a + 1)
    right = range(a + 1, a + b + 1)
    return Graph.from_edges([(i, j) for i in left for j in right])


def petersen_graph(n, k):
    es = []
    for i in range(n):
        es.append((i + 1, (i + 1) % n + 1))
        es.append((i + 1, n + i + 1))
        es.append((n + i + 1, n + (i + k) % n + 1))
    return Graph.from_edges(es)


def planar_k4():
    """Hand-built plane drawing of K4: vertex 1 inside triangle 2,3,4."""
    g = complete(4)
    rot = {
        1: (((1, 4), 0, 1), ((1, 2), 0, 1), ((1, 3), 0, 1)),
        2: (((2, 3), 0, 1), ((1, 2), 0, -1), ((2, 4), 0, 1)),
        3: (((3, 4), 0, 1), ((1, 3), 0, -1), ((2, 3), 0, -1)),
        4: (((2, 4), 0, -1), ((1, 4), 0, -1), ((3, 4), 0, -1)),
    }
    probe = Drawing.build(g, [], {}, rot, [])
    regions = [[orb[0]] for orb in probe.faces_raw()]
    return Drawing.build(g, [], {}, rot, regions)


def k4_one_crossing():
    """Hand-built drawing of K4 as a square with crossing diagonals."""
    g = complete(4)
    x = cross_node((1, 3), (2, 4))
    orders = {(1, 3): (x,), (2, 4): (x,)}
    rot = {
        1: (((1, 2), 0, 1), ((1, 3), 0, 1), ((1, 4), 0, 1)),
        2: (((2, 3), 0, 1), ((2, 4), 0, 1), ((1, 2), 0, -1)),
        3: (((3, 4), 0, 1), ((1, 3), 1, -1), ((2, 3), 0, -1)),
        4: (((3, 4), 0, -1), ((1, 4), 0, -1), ((2, 4), 1, -1)),
        x: (((1, 3), 1, 1), ((2, 4), 1, 1), ((1, 3), 0, -1), ((2, 4), 0, -1)),
    }
    probe = Drawing.build(g, [x], orders, rot, [])
    regions = [[orb[0]] for orb in probe.faces_raw()]
    return Drawing.build(g, [x], orders, rot, regions)


def triangle_drawing(a, b, c):
    """The plane drawing of one labeled triangle."""
    g = Graph.from_edges([(a, b), (a, c), (b, c)])
    e1, e2, e3 = sorted(g.edges)
    rot = {}
    for v in (a, b, c):
        darts = []
        for e in (e1, e2, e3):
            if v == e[0]:
                darts.append((e, 0, 1))
            elif v == e[1]:
                darts.append((e, 0, -1))
        rot[v] = tuple(darts)
    probe = Drawing.build(g, [], {}, rot, [])
    regions = [[orb[0]] for orb in probe.faces_raw()]
    return Drawing.build(g, [], {}, rot, regions)


@pytest.fixture(scope="session")
def two_triangle_drawings():
    g = Graph.from_edges([(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)])
    return enumerate_drawings(g, 2)


@pytest.fixture(scope="session")
def prism_drawings():
    return enumerate_drawings(petersen_graph(3, 1), 2)


@pytest.fixture(scope="session")
def k4_drawings():
    return enumerate_drawings(complete(4), 2)
