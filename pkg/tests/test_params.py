import itertools

import pytest

from ddgraph.params import (
    DdgParams,
    DezaParams,
    QuotientMatrix,
    classify_quotient,
    ddg_eigenvalues,
    diag_parity_filter,
    family_A,
    family_B,
    matrix_m,
    multiplicity_solutions,
    non_ddg_bound,
    quotient_matrix_candidates,
    quotient_row_solutions,
    spectrum_table,
)


def test_families():
    assert family_A(3).astuple() == (12, 5, 1, 2, 4, 3)
    assert family_B(3).astuple() == (12, 7, 3, 4, 4, 3)
    assert family_A(4).astuple() == (16, 6, 2, 2, 4, 4)
    assert not family_A(4).proper
    assert family_A(5).proper
    with pytest.raises(ValueError):
        family_A(1)
    with pytest.raises(ValueError):
        family_B(1)


def test_params_validation():
    with pytest.raises(ValueError):
        DdgParams(12, 5, 1, 2, 4, 2)  # v != m*n
    with pytest.raises(ValueError):
        DdgParams(24, 8, 2, 4, 4, 6)  # k^2 - lambda2 v < 0
    with pytest.raises(ValueError):
        DezaParams(10, 3, 1, 2)  # b < a


def test_eigenvalues_families():
    # {n+2, +-2, +-(n-2)} and {3n-2, +-2, +-(n-2)} for every n in 3..16
    for n in range(3, 17):
        for p, k in ((family_A(n), n + 2), (family_B(n), 3 * n - 2)):
            evs = ddg_eigenvalues(p)
            assert evs[0].value == k
            assert {evs[1].value, evs[2].value} == {2, -2}
            assert {evs[3].value, evs[4].value} == {n - 2, -(n - 2)}


def test_eigenvalue_zero_collapse():
    p = DdgParams(8, 2, 2, 0, 2, 4)  # lambda1 = k: sqrt(0) both signs
    evs = ddg_eigenvalues(p)
    assert evs[1].value == evs[2].value == 0


def test_multiplicities_family_A10():
    sols = multiplicity_solutions(family_A(10))
    assert [(s.g1, s.g2, s.trace_r) for s in sols] == [
        (3, 0, 36),
        (2, 1, 20),
        (1, 2, 4),
    ]
    assert (sols[0].f1, sols[0].f2) == (9, 27)


def test_multiplicities_family_B10():
    sols = multiplicity_solutions(family_B(10))
    assert [(s.g1, s.g2, s.trace_r) for s in sols] == [
        (2, 1, 36),
        (1, 2, 20),
        (0, 3, 4),
    ]


def test_trace_tables_for_symbolic_n():
    # table rows (4n-4, 2n, 4, 8-2n) and (6n-8, 4n-4, 2n, 4); the trace
    # window kills (0,3) in family A and (3,0) in family B for n > 8, and
    # the middle rows additionally need even n for integral multiplicities
    for n in range(9, 17):
        even = n % 2 == 0
        rows_a = spectrum_table(family_A(n))
        assert [r["trace"] for r in rows_a] == [
            4 * n - 4,
            2 * n,
            4,
            8 - 2 * n,
        ]
        assert [r["feasible"] for r in rows_a] == [True, even, True, False]
        rows_b = spectrum_table(family_B(n))
        assert [r["trace"] for r in rows_b] == [
            6 * n - 8,
            4 * n - 4,
            2 * n,
            4,
        ]
        assert [r["feasible"] for r in rows_b] == [False, True, even, True]


def test_every_solution_satisfies_the_trace_identity():
    for n in range(3, 17):
        for p in (family_A(n), family_B(n)):
            if not p.proper:
                continue
            for s in multiplicity_solutions(p):
                total = (
                    p.k
                    + (s.f1 - s.f2) * 2
                    + (s.g1 - s.g2) * (n - 2)
                )
                assert total == 0
                assert s.f1 + s.f2 == p.m * (p.n - 1)
                assert s.g1 + s.g2 == p.m - 1


def test_non_ddg_bound():
    assert non_ddg_bound(DezaParams(36, 11, 7, 2)) is False  # n = 9
    assert non_ddg_bound(DezaParams(24, 8, 4, 2)) is True  # n = 6
    assert non_ddg_bound(DezaParams(10, 5, 3, 3)) is True  # a = b
    # families agree with n <= 8 exactly
    for n in range(3, 17):
        assert non_ddg_bound(family_A(n).deza_shadow()) == (n <= 8)
        assert non_ddg_bound(family_B(n).deza_shadow()) == (n <= 8)


def brute_force_rows(p):
    target_sq = (p.k * p.k - p.lambda2 * p.v) + p.lambda2 * p.n
    found = set()
    for quad in itertools.product(range(p.n + 1), repeat=4):
        if sum(quad) == p.k and sum(x * x for x in quad) == target_sq:
            found.add(tuple(sorted(quad)))
    return sorted(found)


def test_row_solutions_against_brute_force():
    for n in range(3, 17):
        for p in (family_A(n), family_B(n)):
            assert quotient_row_solutions(p) == brute_force_rows(p)


def test_row_solutions_large_n():
    assert quotient_row_solutions(family_A(10)) == [(1, 1, 1, 9)]
    assert quotient_row_solutions(family_B(10)) == [(1, 9, 9, 9)]
    assert (1, 1, 1, 5) in quotient_row_solutions(family_A(6))


def test_quotient_candidates_are_the_three_matrices():
    for n in (9, 10, 12, 16):
        ca = quotient_matrix_candidates(family_A(n))
        tags = sorted(classify_quotient(q, family_A(n))[0] for q in ca)
        assert tags == ["M3", "M4", "M5"]
        cb = quotient_matrix_candidates(family_B(n))
        tags = sorted(classify_quotient(q, family_B(n))[0] for q in cb)
        assert tags == ["M10", "M8", "M9"]
        for q in ca:
            assert q.satisfies_identity(family_A(n))
            assert q.column_sums() == [n + 2] * 4
        for q in cb:
            assert q.satisfies_identity(family_B(n))
            assert q.column_sums() == [3 * n - 2] * 4


def test_diag_parity_filter():
    assert diag_parity_filter(matrix_m("M4", 9), 9) is False
    assert diag_parity_filter(matrix_m("M3", 9), 9) is True
    assert diag_parity_filter(matrix_m("M5", 10), 10) is True
    # odd n leaves only the lattice matrix
    survivors = [
        classify_quotient(q, family_A(9))[0]
        for q in quotient_matrix_candidates(family_A(9))
        if diag_parity_filter(q, 9)
    ]
    assert survivors == ["M3"]


def test_classify_quotient_permutation_invariance():
    m5 = matrix_m("M5", 10)
    swapped = m5.permuted((2, 3, 0, 1))
    tag, perm = classify_quotient(swapped, family_A(10))
    assert tag == "M5"
    assert swapped.permuted(perm).entries == m5.entries
    j4 = QuotientMatrix(((4,) * 4,) * 4, 10)
    assert classify_quotient(j4, family_A(10))[0] == "other"


def test_matrix_m_shapes():
    assert matrix_m("M3", 6).entries[0] == (5, 1, 1, 1)
    assert matrix_m("M8", 6).trace() == 4 * 5
    with pytest.raises(ValueError):
        matrix_m("M7", 6)
