"""Construction census per parameter family, cross-checked against search.

The family-A census is lattice + switched-sublattice + every reverse
switch; the family-B census is the class-pair-switch image of the family-A
census (checked to coincide with the Hadamard construction where it
should).  For small orders the same sets are recomputed by exhaustive
search and compared canonically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .canon import canonical_form
from .classify import decompose_gstar
from .construct import (
    class_pair_switch,
    g_prime,
    hadamard_ddg,
    hadamard_seed,
    lattice4,
    reverse_switch_construct,
    star_switch_partitioned,
    valid_component_multisets,
)
from .g6 import graph6_encode
from .graphs import Graph, VertexPartition
from .params import classify_quotient, family_A, family_B
from .search import SearchTask, enumerate_ddg
from .verify import ddg_check, ddg_check_with_partition, quotient_matrix


def _canon6(g: Graph) -> str:
    return graph6_encode(canonical_form(g)[0])


@dataclass
class CensusEntry:
    name: str
    graph: Graph
    partition: VertexPartition
    tag: str


@dataclass
class CrossValidationReport:
    n: int
    family_a: dict[str, list[str]] = field(default_factory=dict)
    family_b: dict[str, list[str]] = field(default_factory=dict)
    searched: bool = False
    search_a: tuple[str, ...] | None = None
    search_b: tuple[str, ...] | None = None
    discrepancies: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def family_A_census(n: int) -> list[CensusEntry]:
    """Every family-A construction at this order, verified, with its tag."""
    p = family_A(n)
    out: list[CensusEntry] = []

    def add(name, g, part, want_tag):
        if p.proper:
            verdict = ddg_check(g, p)
            tag = verdict.canonical_class
        else:
            verdict = ddg_check_with_partition(g, p, part)
            quot = quotient_matrix(g, part)
            tag = classify_quotient(quot, p)[0] if quot else None
        if not verdict.is_ddg:
            raise AssertionError(f"{name} failed its DDG check at n={n}")
        if want_tag and tag != want_tag:
            raise AssertionError(
                f"{name} has tag {tag}, expected {want_tag} at n={n}"
            )
        out.append(CensusEntry(name, g, part, tag))

    g, part = lattice4(n)
    add(f"lattice4({n})", g, part, "M3")
    if n % 2 == 0 and n >= 6:
        g, part = g_prime(n)
        add(f"g_prime({n})", g, part, "M4")
    for specs in valid_component_multisets(n):
        g, part = reverse_switch_construct(specs, n)
        label = "+".join(
            f"Q4({s.partition_id})"
            if s.kind == "four_cube"
            else f"CC({s.pair_count},{s.embedding})"
            for s in specs
        )
        add(f"reverse_switch[{label}]", g, part, "M5")
    return out


_A_TO_B_TAG = {"M3": "M8", "M4": "M9", "M5": "M10"}


def family_B_census(n: int) -> list[CensusEntry]:
    """Class-pair-switch image of the family-A census, verified as family B."""
    p = family_B(n)
    pa = family_A(n)
    out: list[CensusEntry] = []
    for entry in family_A_census(n):
        if pa.proper:
            quot = ddg_check(entry.graph, pa).quotient
        else:
            quot = quotient_matrix(entry.graph, entry.partition)
        _, perm = classify_quotient(quot, pa)
        part = entry.partition.reorder_classes(perm)
        g = class_pair_switch(entry.graph, part)
        want_tag = _A_TO_B_TAG[entry.tag]
        if p.proper:
            verdict = ddg_check(g, p)
            tag = verdict.canonical_class
            ok = verdict.is_ddg
        else:
            verdict = ddg_check_with_partition(g, p, part)
            quot2 = quotient_matrix(g, part)
            tag = classify_quotient(quot2, p)[0] if quot2 else None
            ok = verdict.is_ddg
        if not ok or tag != want_tag:
            raise AssertionError(
                f"switch of {entry.name} is not a family-B DDG with tag "
                f"{want_tag} (got {tag})"
            )
        out.append(CensusEntry(f"class_pair_switch[{entry.name}]", g, part, tag))
    return out


def cross_validate(
    n: int,
    search: str = "auto",
    workers: int = 1,
    node_budget: int | None = None,
    time_budget: float | None = None,
) -> CrossValidationReport:
    """Verify all constructions at order 4n and compare with search output.

    search: "auto" runs the exhaustive searches when 4n <= 20, "always"
    forces them (the v=24 pair is an hours-long job), "never" skips them.
    """
    if search not in ("auto", "always", "never"):
        raise ValueError("search must be auto, always or never")
    report = CrossValidationReport(n)

    for entry in family_A_census(n):
        report.family_a.setdefault(_canon6(entry.graph), []).append(entry.name)
    for entry in family_B_census(n):
        report.family_b.setdefault(_canon6(entry.graph), []).append(entry.name)

    # the Hadamard construction must land inside the family-B census
    hb = _canon6(hadamard_ddg(hadamard_seed("second"), n)[0])
    if hb not in report.family_b:
        report.discrepancies.append(
            "hadamard_ddg(second) missing from the switch census"
        )

    # reverse switches must decompose back to their component multisets
    pa = family_A(n)
    if pa.proper:
        for entry in family_A_census(n):
            if entry.tag != "M5":
                continue
            quot = ddg_check(entry.graph, pa).quotient
            _, perm = classify_quotient(quot, pa)
            part = entry.partition.reorder_classes(perm)
            gstar = star_switch_partitioned(entry.graph, part)
            decompose_gstar(gstar, part)

    do_search = search == "always" or (search == "auto" and 4 * n <= 20)
    if do_search:
        report.searched = True
        res_a = enumerate_ddg(
            SearchTask(
                family_A(n),
                workers=workers,
                node_budget=node_budget,
                time_budget=time_budget,
            )
        )
        report.search_a = res_a.graphs
        if not res_a.exhausted:
            report.discrepancies.append("family-A search hit its budget")
        elif set(res_a.graphs) != set(report.family_a):
            report.discrepancies.append(
                f"family-A: search found {len(res_a.graphs)} classes, "
                f"constructions give {len(report.family_a)}"
            )
        res_b = enumerate_ddg(
            SearchTask(
                family_B(n),
                workers=workers,
                node_budget=node_budget,
                time_budget=time_budget,
            )
        )
        report.search_b = res_b.graphs
        if not res_b.exhausted:
            report.discrepancies.append("family-B search hit its budget")
        elif set(res_b.graphs) != set(report.family_b):
            report.discrepancies.append(
                f"family-B: search found {len(res_b.graphs)} classes, "
                f"constructions give {len(report.family_b)}"
            )
    return report
