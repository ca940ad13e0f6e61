"""Divisible design graphs with the 4xn-lattice parameter families.

Constructions, verification, classification and isomorph-free exhaustive
search for DDGs with parameters (4n, n+2, n-2, 2, 4, n) and
(4n, 3n-2, 3n-6, 2n-2, 4, n).
"""

from .canon import are_isomorphic, automorphisms, canonical_form, seidel_automorphisms
from .census import cross_validate, family_A_census, family_B_census
from .classify import classify_family_A, classify_family_B, decompose_gstar
from .construct import (
    CocktailCycle,
    ComponentSpec,
    FourCube,
    assemble_gstar,
    class_pair_switch,
    cocktail_cycle,
    complete_bipartite,
    dual_seidel,
    g_prime,
    gdss2,
    hadamard_ddg,
    hadamard_seed,
    hypercube4,
    lattice4,
    line_graph,
    q4_equitable_partitions,
    q4_perfect_matching_classes,
    reverse_switch_construct,
)
from .corpus import fetch_corpus, parse_matrix_text
from .g6 import graph6_decode, graph6_encode
from .graphs import (
    Graph,
    VertexPartition,
    common_neighbors,
    connected_components,
    degree_sequence,
    induced_subgraph,
    is_regular,
    make_graph,
)
from .params import (
    DdgParams,
    DezaParams,
    QuotientMatrix,
    classify_quotient,
    ddg_eigenvalues,
    diag_parity_filter,
    family_A,
    family_B,
    multiplicity_solutions,
    non_ddg_bound,
    quotient_matrix_candidates,
    quotient_row_solutions,
    spectrum_table,
)
from .report import graph_verdict, report_json
from .search import SearchResult, SearchTask, enumerate_ddg, enumerate_deza, filter_ddg
from .verify import (
    ddg_check,
    ddg_partition,
    deza_check,
    gstar_pair_type,
    quotient_matrix,
    seidel_switch,
    star_switch_partitioned,
    walk_regular_check,
)

__version__ = "0.1.0"
