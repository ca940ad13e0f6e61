import random

import networkx as nx
import pytest

from ddgraph.construct import lattice4
from ddgraph.g6 import Graph6Error, graph6_decode, graph6_encode
from ddgraph.graphs import make_graph


def test_triangle_is_Bw():
    tri = make_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert graph6_encode(tri) == "Bw"


def test_edgeless_pair_is_A_question():
    assert graph6_encode(make_graph(2, [])) == "A?"


def test_lattice_round_trip():
    g, _ = lattice4(6)
    assert graph6_decode(graph6_encode(g)) == g


def test_cross_check_against_networkx():
    # networkx is the independent reference for the bit layout
    rng = random.Random(42)
    for _ in range(60):
        n = rng.randrange(1, 40)
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.3
        ]
        g = make_graph(n, edges)
        mine = graph6_encode(g)
        theirs = nx.to_graph6_bytes(
            nx.from_edgelist(edges, nx.Graph()) if edges else nx.empty_graph(n),
            header=False,
        ).decode().strip()
        if edges:
            # networkx drops isolated trailing vertices from edgelists
            gg = nx.Graph()
            gg.add_nodes_from(range(n))
            gg.add_edges_from(edges)
            theirs = nx.to_graph6_bytes(gg, header=False).decode().strip()
        assert mine == theirs
        back = nx.from_graph6_bytes(mine.encode())
        assert sorted(map(tuple, map(sorted, back.edges()))) == sorted(edges)


def test_long_form_order():
    g = make_graph(70, [(0, 69)])
    enc = graph6_encode(g)
    assert enc.startswith("~")
    assert graph6_decode(enc) == g


def test_header_tolerated():
    assert graph6_decode(">>graph6<<Bw").num_edges() == 3


def test_decode_errors_carry_offsets():
    with pytest.raises(Graph6Error) as err:
        graph6_decode("B")  # truncated body
    assert err.value.offset == 1
    with pytest.raises(Graph6Error):
        graph6_decode("")
    with pytest.raises(Graph6Error) as err:
        graph6_decode("Bw\x01")
    assert "byte offset" in str(err.value)


def test_decode_rejects_nonzero_padding():
    # triangle body with padding bits forced on
    bad = "B" + chr(63 + 0b111111)
    with pytest.raises(Graph6Error):
        graph6_decode(bad)
