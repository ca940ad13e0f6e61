import random

import pytest

from ddgraph.construct import hypercube4, lattice4
from ddgraph.graphs import (
    Graph,
    VertexPartition,
    common_neighbors,
    connected_components,
    degree_sequence,
    induced_subgraph,
    is_regular,
    make_graph,
    partition_from_classes,
)


def test_make_graph_triangle():
    g = make_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert g.num_edges() == 3
    assert degree_sequence(g) == [2, 2, 2]


def test_make_graph_empty_and_duplicates():
    assert make_graph(2, []).num_edges() == 0
    assert degree_sequence(make_graph(2, [])) == [0, 0]
    g = make_graph(4, [(0, 1), (0, 1), (1, 0)])
    assert g.num_edges() == 1


def test_make_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        make_graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        make_graph(3, [(1, 1)])


def test_graph_validates_symmetry_and_diagonal():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))  # asymmetric
    with pytest.raises(ValueError):
        Graph(2, (0b01, 0b10))  # self loops
    with pytest.raises(ValueError):
        Graph(300, tuple([0] * 300))  # above the order cap


def test_common_neighbors_lattice_rows_and_columns():
    g, part = lattice4(3)
    # same row: lambda1 = n - 2 = 1; same column: lambda2 = 2
    assert common_neighbors(g, 0, 1) == 1
    assert common_neighbors(g, 0, 3) == 2
    with pytest.raises(ValueError):
        common_neighbors(g, 5, 5)


def test_common_neighbors_edgeless():
    g = make_graph(4, [])
    assert common_neighbors(g, 0, 3) == 0


def test_common_neighbor_double_counting_identity():
    # sum over y != x of |N(x) n N(y)| == sum over z in N(x) of (deg z - 1)
    rng = random.Random(1)
    for _ in range(25):
        n = rng.randrange(2, 16)
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.4
        ]
        g = make_graph(n, edges)
        for x in range(n):
            lhs = sum(common_neighbors(g, x, y) for y in range(n) if y != x)
            rhs = sum(g.degree(z) - 1 for z in g.neighbors(x))
            assert lhs == rhs


def test_degree_sequence_and_regularity():
    g, _ = lattice4(5)
    assert is_regular(g) == 7
    path = make_graph(3, [(0, 1), (1, 2)])
    assert degree_sequence(path) == [1, 1, 2]
    assert is_regular(path) is None
    assert is_regular(hypercube4()) == 4


def test_connected_components():
    two_triangles = make_graph(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
    )
    assert connected_components(two_triangles) == [[0, 1, 2], [3, 4, 5]]
    assert connected_components(make_graph(4, [])) == [[0], [1], [2], [3]]
    # BFS oracle on the lattice
    g, _ = lattice4(6)
    comps = connected_components(g)
    assert len(comps) == 1 and len(comps[0]) == 24
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for u in g.neighbors(v):
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    assert sorted(seen) == comps[0]


def test_induced_subgraph_two_lattice_rows():
    g, _ = lattice4(6)
    sub, relab = induced_subgraph(g, range(12))
    # the 2 x 6 lattice: (n-1) + 1 = 6-regular on 12 vertices
    assert sub.order == 12
    assert is_regular(sub) == 6
    for u in range(12):
        for v in range(u + 1, 12):
            assert sub.has_edge(relab[u], relab[v]) == g.has_edge(u, v)


def test_induced_subgraph_small_cases():
    tri = make_graph(3, [(0, 1), (1, 2), (0, 2)])
    single, _ = induced_subgraph(tri, [1])
    assert single.order == 1 and single.num_edges() == 0
    edge, _ = induced_subgraph(tri, [0, 2])
    assert edge.num_edges() == 1
    with pytest.raises(ValueError):
        induced_subgraph(tri, [])


def test_partition_validation():
    p = VertexPartition((0, 0, 1, 1), 2)
    assert p.class_sizes == [2, 2]
    assert p.classes() == [[0, 1], [2, 3]]
    with pytest.raises(ValueError):
        VertexPartition((0, 0, 0), 2)  # class 1 empty
    with pytest.raises(ValueError):
        partition_from_classes([[0, 1], [1, 2]])


def test_reorder_classes_matches_quotient_convention():
    p = VertexPartition((0, 0, 1, 1, 2, 2), 3)
    q = p.reorder_classes((2, 0, 1))
    # class i of q must be class perm[i] of p
    assert q.classes() == [p.classes()[2], p.classes()[0], p.classes()[1]]


def test_complement_and_relabel():
    g = make_graph(4, [(0, 1), (2, 3)])
    h = g.complement()
    assert h.num_edges() == 4
    perm = (3, 2, 1, 0)
    rg = g.relabel(perm)
    assert rg.has_edge(3, 2) and rg.has_edge(1, 0)
