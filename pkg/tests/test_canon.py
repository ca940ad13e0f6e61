import itertools
import random

from ddgraph.canon import (
    are_isomorphic,
    automorphism_group,
    automorphisms,
    canonical_form,
    seidel_automorphisms,
)
from ddgraph.construct import hadamard_ddg, hadamard_seed, hypercube4, lattice4
from ddgraph.graphs import Graph, induced_subgraph, make_graph

import pytest


def brute_force_isomorphic(g: Graph, h: Graph) -> bool:
    if g.order != h.order:
        return False
    for perm in itertools.permutations(range(g.order)):
        if g.relabel(perm) == h:
            return True
    return False


def test_canonical_form_idempotent():
    g = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)])
    c1, _ = canonical_form(g)
    c2, _ = canonical_form(c1)
    assert c1 == c2


def test_all_relabelings_of_p3_agree():
    p3 = make_graph(3, [(0, 1), (1, 2)])
    forms = {
        canonical_form(p3.relabel(perm))[0]
        for perm in itertools.permutations(range(3))
    }
    assert len(forms) == 1


def test_p4_and_star_distinct():
    p4 = make_graph(4, [(0, 1), (1, 2), (2, 3)])
    star = make_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert not brute_force_isomorphic(p4, star)
    assert canonical_form(p4)[0] != canonical_form(star)[0]


def test_canonical_perm_witnesses_the_form():
    g = make_graph(6, [(0, 2), (2, 4), (4, 0), (1, 3), (3, 5)])
    canon, perm = canonical_form(g)
    assert g.relabel(perm) == canon


def test_invariance_under_random_relabelings():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randrange(2, 25)
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < rng.choice([0.2, 0.5, 0.8])
        ]
        g = make_graph(n, edges)
        canon = canonical_form(g)[0]
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_form(g.relabel(tuple(perm)))[0] == canon


def test_are_isomorphic_basics():
    g = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert are_isomorphic(g, g.relabel((4, 2, 0, 1, 3)))
    assert not are_isomorphic(g, make_graph(4, [(0, 1), (1, 2), (2, 3)]))


def test_hadamard_first_seed_is_the_lattice():
    g, _ = hadamard_ddg(hadamard_seed("first"), 5)
    assert are_isomorphic(g, lattice4(5)[0])


def test_automorphism_group_orders():
    assert len(automorphism_group(hypercube4())) == 384
    k4 = make_graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert len(automorphism_group(k4)) == 24
    # Aut(L(K_{4,3})) = S4 x S3
    assert len(automorphism_group(lattice4(3)[0])) == 144
    path = make_graph(3, [(0, 1), (1, 2)])
    assert len(automorphism_group(path)) == 2


def test_automorphisms_are_automorphisms():
    g, _ = lattice4(4)
    for gamma in automorphisms(g):
        assert g.relabel(gamma) == g


def test_seidel_automorphisms_of_sublattice():
    g, _ = lattice4(6)
    sub, _ = induced_subgraph(g, range(12))
    autos = seidel_automorphisms(sub)
    # row swap with any fixed-point-free column involution: 5!! = 15
    assert len(autos) == 15
    central = tuple((1 - v // 6) * 6 + (5 - v % 6) for v in range(12))
    assert central in autos
    for phi in autos:
        assert all(phi[phi[v]] == v for v in range(12))
        for v in range(12):
            if phi[v] != v:
                assert not sub.has_edge(v, phi[v])


def test_seidel_automorphisms_trivial_cases():
    k4 = make_graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert seidel_automorphisms(k4) == []
    assert seidel_automorphisms(make_graph(2, [])) == [(1, 0)]


def test_seidel_automorphisms_size_cap():
    with pytest.raises(ValueError):
        seidel_automorphisms(make_graph(70, []))
