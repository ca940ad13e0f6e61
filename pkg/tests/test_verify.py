import itertools

import pytest

from ddgraph.construct import (
    CocktailCycle,
    FourCube,
    g_prime,
    hadamard_ddg,
    hadamard_seed,
    lattice4,
    reverse_switch_construct,
    valid_component_multisets,
)
from ddgraph.graphs import (
    VertexPartition,
    common_neighbors,
    is_regular,
    make_graph,
    partition_from_classes,
)
from ddgraph.params import classify_quotient, family_A, family_B, matrix_m
from ddgraph.verify import (
    ddg_check,
    ddg_check_with_partition,
    ddg_partition,
    ddg_structures,
    deza_check,
    gstar_pair_type,
    quotient_matrix,
    seidel_switch,
    star_switch_partitioned,
    walk_regular_check,
)


def test_deza_check_lattice():
    v = deza_check(lattice4(6)[0])
    assert v.is_deza and v.params.astuple() == (24, 8, 4, 2)


def test_deza_check_non_regular():
    v = deza_check(make_graph(3, [(0, 1), (1, 2)]))
    assert not v.is_deza and v.witness is not None


def test_deza_check_complete_graph():
    k4 = make_graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    v = deza_check(k4)
    assert v.is_deza and v.params.astuple() == (4, 3, 2, 2)


def test_ddg_partition_recovers_rows():
    g, part = lattice4(6)
    rec = ddg_partition(g, family_A(6))
    assert rec is not None
    assert rec.classes() == part.classes()


def test_ddg_partition_wrong_family_absent():
    assert ddg_partition(lattice4(6)[0], family_B(6)) is None


def test_ddg_partition_improper_rejected():
    with pytest.raises(ValueError):
        ddg_partition(lattice4(4)[0], family_A(4))


def test_gprime_partition_exists():
    g, _ = g_prime(6)
    assert ddg_partition(g, family_A(6)) is not None


def test_quotient_matrix_lattice_is_m3():
    g, part = lattice4(6)
    q = quotient_matrix(g, part)
    assert q is not None and q.entries == matrix_m("M3", 6).entries


def test_quotient_matrix_gprime_is_m4_up_to_relabeling():
    g, _ = g_prime(6)
    v = ddg_check(g, family_A(6))
    assert v.canonical_class == "M4"


def test_quotient_matrix_absent_for_inequitable():
    path = make_graph(4, [(0, 1), (1, 2), (2, 3)])
    part = partition_from_classes([[0, 1], [2, 3]])
    assert quotient_matrix(path, part) is None


def test_star_switch_involution_and_quotient():
    g, part = lattice4(6)
    sw = star_switch_partitioned(g, part)
    assert star_switch_partitioned(sw, part) == g
    # row cliques stay, the two switched blocks become J-I: 5+5+1+1
    assert is_regular(sw) == 12
    # an M5 DDG switches to quotient J4 and valency 4
    rs, rpart = reverse_switch_construct([CocktailCycle(12, "E12")], 6)
    v = ddg_check(rs, family_A(6))
    part5 = v.partition.reorder_classes(
        classify_quotient(v.quotient, family_A(6))[1]
    )
    gstar = star_switch_partitioned(rs, part5)
    assert is_regular(gstar) == 4
    q = quotient_matrix(gstar, part5)
    assert q.entries == ((1, 1, 1, 1),) * 4


def test_seidel_switch_basics():
    g, _ = lattice4(3)
    assert seidel_switch(g, []) == g
    assert seidel_switch(g, range(12)) == g
    assert seidel_switch(seidel_switch(g, [0, 5, 7]), [0, 5, 7]) == g


def test_gstar_pair_type_cases():
    rs, _ = reverse_switch_construct([FourCube(1), CocktailCycle(4, "E12")], 6)
    v = ddg_check(rs, family_A(6))
    part = v.partition.reorder_classes(
        classify_quotient(v.quotient, family_A(6))[1]
    )
    classes = part.classes()
    case, predicted = gstar_pair_type(rs, part, classes[0][0], classes[0][1])
    assert case == "1" and predicted == 0
    with pytest.raises(ValueError):
        gstar_pair_type(rs, part, 0, 0)


def test_gstar_pair_type_matches_actual_counts_exhaustively():
    # the common-neighbour counts predicted from the unswitched graph must
    # equal the actual counts in the switched graph, for every vertex pair
    for specs in valid_component_multisets(6):
        rs, _ = reverse_switch_construct(specs, 6)
        v = ddg_check(rs, family_A(6))
        part = v.partition.reorder_classes(
            classify_quotient(v.quotient, family_A(6))[1]
        )
        gstar = star_switch_partitioned(rs, part)
        for x in range(24):
            for y in range(x + 1, 24):
                _, predicted = gstar_pair_type(rs, part, x, y)
                assert predicted == common_neighbors(gstar, x, y)


def test_walk_regularity():
    hb, _ = hadamard_ddg(hadamard_seed("second"), 6)
    assert walk_regular_check(hb, 6)
    star = make_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert not walk_regular_check(star, 2)
    assert walk_regular_check(lattice4(6)[0], 6)
    with pytest.raises(ValueError):
        walk_regular_check(star, 1)


def test_ddg_check_with_partition_improper():
    g, part = lattice4(4)
    v = ddg_check_with_partition(g, family_A(4), part)
    assert v.is_ddg


def test_ddg_structures_found_for_lattice():
    structures = ddg_structures(lattice4(6)[0])
    assert any(p.astuple() == (24, 8, 4, 2, 4, 6) for p, _ in structures)


def test_ddg_structures_empty_for_plain_graph():
    assert ddg_structures(make_graph(5, [(0, 1), (2, 3)])) == []
