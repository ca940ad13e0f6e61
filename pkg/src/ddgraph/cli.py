"""Command-line front end.

Subcommands: construct, verify, classify, enumerate, tables, switch,
fetch, cross-validate.  Graphs travel as graph6, one per line; verdicts
are JSON (schema v1).  Exit codes: 0 success, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import census as census_mod
from .canon import canonical_form
from .classify import classify_family_A, classify_family_B
from .construct import (
    CocktailCycle,
    FourCube,
    class_pair_switch,
    cocktail_cycle,
    g_prime,
    hadamard_ddg,
    hadamard_seed,
    hypercube4,
    lattice4,
    q4_equitable_partitions,
    reverse_switch_construct,
)
from .corpus import FetchError, fetch_corpus
from .g6 import graph6_decode, graph6_encode, read_graph6_lines
from .params import (
    DezaParams,
    classify_quotient,
    ddg_eigenvalues,
    diag_parity_filter,
    family_A,
    family_B,
    quotient_matrix_candidates,
    spectrum_table,
)
from .report import graph_verdict, report_json
from .search import SearchTask, enumerate_ddg, enumerate_deza
from .verify import ddg_check, seidel_switch, star_switch_partitioned


def _family(name: str, n: int):
    if name == "A":
        return family_A(n)
    if name == "B":
        return family_B(n)
    raise SystemExit(2)


def _read_graphs(path: str | None):
    if path is None or path == "-":
        return read_graph6_lines(sys.stdin)
    with open(path) as fh:
        return read_graph6_lines(fh)


def _emit_graphs(graphs, out: str | None, sidecar: dict | None = None):
    text = "".join(graph6_encode(g) + "\n" for g in graphs)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)
        if sidecar is not None:
            with open(out + ".json", "w") as fh:
                json.dump(sidecar, fh, indent=1)
                fh.write("\n")


def _parse_specs(text: str):
    """cube:1+cc:4:E12 -> component list."""
    specs = []
    for part in text.split("+"):
        fields = part.strip().split(":")
        if fields[0] in ("cube", "q4", "four_cube"):
            specs.append(FourCube(int(fields[1])))
        elif fields[0] in ("cc", "cocktail"):
            specs.append(CocktailCycle(int(fields[1]), fields[2]))
        else:
            raise SystemExit(f"unknown component {part!r}")
    return specs


def _cmd_construct(args) -> int:
    kind = args.kind
    if kind == "lattice":
        g, _ = lattice4(args.n)
        meta = {"construction": "lattice", "n": args.n}
        graphs = [g]
    elif kind == "hadamard":
        g, _ = hadamard_ddg(hadamard_seed(args.seed), args.n)
        meta = {"construction": "hadamard", "seed": args.seed, "n": args.n}
        graphs = [g]
    elif kind == "gprime":
        g, _ = g_prime(args.n)
        meta = {"construction": "gprime", "n": args.n}
        graphs = [g]
    elif kind == "reverse-switch":
        specs = _parse_specs(args.specs)
        g, _ = reverse_switch_construct(specs, args.n)
        meta = {
            "construction": "reverse-switch",
            "n": args.n,
            "components": args.specs,
        }
        graphs = [g]
    elif kind == "cocktail":
        g, _ = cocktail_cycle(args.pairs, args.embedding)
        meta = {
            "construction": "cocktail",
            "pairs": args.pairs,
            "embedding": args.embedding,
        }
        graphs = [g]
    elif kind == "q4":
        graphs = [hypercube4()]
        meta = {
            "construction": "q4",
            "equitable_partitions": [
                p.classes() for p in q4_equitable_partitions()
            ],
        }
    else:
        return 2
    _emit_graphs(graphs, args.output, meta)
    return 0


def _cmd_verify(args) -> int:
    p = _family(args.family, args.n)
    verdicts = []
    ok = True
    for g in _read_graphs(args.input):
        v = ddg_check(g, p)
        verdicts.append(
            {
                "input_graph6": graph6_encode(g),
                "is_ddg": v.is_ddg,
                "params": list(p.astuple()),
                "quotient_tag": v.canonical_class,
                "components": None,
                "isomorphic_to": None,
            }
        )
        ok &= v.is_ddg
    print(report_json(verdicts))
    return 0 if ok else 1


def _cmd_classify(args) -> int:
    verdicts = [graph_verdict(g) for g in _read_graphs(args.input)]
    print(report_json(verdicts))
    return 0 if all(v["is_ddg"] for v in verdicts) else 1


def _cmd_enumerate(args) -> int:
    mode = {"all": "all_deza", "ddg": "ddg_only", "non-ddg": "non_ddg_only"}[
        args.mode
    ]
    if args.deza:
        v, k, b, a = (int(x) for x in args.deza.split(","))
        task = SearchTask(
            DezaParams(v, k, b, a),
            mode,
            args.budget_nodes,
            args.budget_secs,
            args.threads,
            args.checkpoint,
        )
        res = enumerate_deza(task)
    else:
        p = _family(args.family, args.n)
        task = SearchTask(
            p,
            "all_deza",
            args.budget_nodes,
            args.budget_secs,
            args.threads,
            args.checkpoint,
        )
        res = enumerate_ddg(task)
    for line in res.graphs:
        print(line)
    print(
        f"# {len(res.graphs)} graphs, {res.node_count} nodes, "
        f"exhausted={res.exhausted}",
        file=sys.stderr,
    )
    return 0 if res.exhausted else 1


def _cmd_tables(args) -> int:
    p = _family(args.family, args.n)
    evs = ddg_eigenvalues(p)
    cands = quotient_matrix_candidates(p)
    doc = {
        "params": list(p.astuple()),
        "proper": p.proper,
        "eigenvalues": [
            {"sign": e.sign, "radicand": e.radicand,
             "value": e.value if e.is_integral else None}
            for e in evs
        ],
        "multiplicities": spectrum_table(p),
        "quotient_candidates": [
            {
                "matrix": [list(row) for row in q.entries],
                "tag": classify_quotient(q, p)[0],
                "odd_n_parity_ok": diag_parity_filter(q, p.n),
            }
            for q in cands
        ],
        "paper_scope": "n > 8" if p.n <= 8 else "in scope",
    }
    print(json.dumps(doc, indent=1))
    return 0


def _cmd_switch(args) -> int:
    graphs = _read_graphs(args.input)
    out = []
    for g in graphs:
        if args.kind == "seidel":
            subset = [int(x) for x in args.set.split(",")]
            out.append(seidel_switch(g, subset))
            continue
        cls = classify_family_A(g)
        verdict = cls.verdict
        fam = family_A(cls.n) if verdict else None
        if verdict is None:
            clsb = classify_family_B(g)
            verdict = clsb.verdict
            fam = family_B(clsb.n) if verdict else None
        if verdict is None:
            print("input is not a classified DDG", file=sys.stderr)
            return 1
        _, perm = classify_quotient(verdict.quotient, fam)
        part = verdict.partition.reorder_classes(perm)
        if args.kind == "star":
            out.append(star_switch_partitioned(g, part))
        else:
            out.append(class_pair_switch(g, part))
    _emit_graphs(out, args.output)
    return 0


def _cmd_fetch(args) -> int:
    try:
        entries = fetch_corpus(args.source)
    except FetchError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    bad = 0
    for e in entries:
        if e.error:
            bad += 1
            print(f"{e.source}:{e.line}: {e.error}", file=sys.stderr)
        else:
            print(e.canonical_g6)
    print(f"# {len(entries) - bad} graphs, {bad} errors", file=sys.stderr)
    return 0 if bad == 0 else 1


def _cmd_cross_validate(args) -> int:
    rep = census_mod.cross_validate(
        args.n,
        search=args.search,
        workers=args.threads,
        node_budget=args.budget_nodes,
        time_budget=args.budget_secs,
    )
    print(
        json.dumps(
            {
                "n": rep.n,
                "family_a_classes": len(rep.family_a),
                "family_b_classes": len(rep.family_b),
                "searched": rep.searched,
                "search_a_classes": len(rep.search_a) if rep.search_a else None,
                "search_b_classes": len(rep.search_b) if rep.search_b else None,
                "discrepancies": rep.discrepancies,
            },
            indent=1,
        )
    )
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ddgraph",
        description="divisible design graphs with lattice-type parameters",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build one of the graph families")
    c.add_argument(
        "kind",
        choices=["lattice", "hadamard", "gprime", "reverse-switch", "cocktail", "q4"],
    )
    c.add_argument("--n", type=int, default=6)
    c.add_argument("--seed", choices=["first", "second"], default="second")
    c.add_argument("--specs", default="cube:1+cc:4:E12",
                   help="components, e.g. cube:1+cc:4:E12")
    c.add_argument("--pairs", type=int, default=4)
    c.add_argument("--embedding", choices=["E12", "E13"], default="E12")
    c.add_argument("-o", "--output")
    c.set_defaults(func=_cmd_construct)

    v = sub.add_parser("verify", help="check the DDG condition for a family")
    v.add_argument("input", nargs="?")
    v.add_argument("--family", choices=["A", "B"], required=True)
    v.add_argument("--n", type=int, required=True)
    v.set_defaults(func=_cmd_verify)

    cl = sub.add_parser("classify", help="full classification of input graphs")
    cl.add_argument("input", nargs="?")
    cl.set_defaults(func=_cmd_classify)

    e = sub.add_parser("enumerate", help="exhaustive isomorph-free search")
    e.add_argument("--deza", help="v,k,b,a")
    e.add_argument("--family", choices=["A", "B"])
    e.add_argument("--n", type=int)
    e.add_argument("--mode", choices=["all", "ddg", "non-ddg"], default="all")
    e.add_argument("--threads", type=int, default=1)
    e.add_argument("--budget-nodes", type=int)
    e.add_argument("--budget-secs", type=float)
    e.add_argument("--checkpoint")
    e.set_defaults(func=_cmd_enumerate)

    t = sub.add_parser("tables", help="spectra, multiplicities, quotients")
    t.add_argument("--family", choices=["A", "B"], required=True)
    t.add_argument("--n", type=int, required=True)
    t.set_defaults(func=_cmd_tables)

    s = sub.add_parser("switch", help="apply a switching operation")
    s.add_argument("kind", choices=["star", "class-pair", "seidel"])
    s.add_argument("input", nargs="?")
    s.add_argument("--set", help="comma-separated vertex set (seidel)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=_cmd_switch)

    f = sub.add_parser("fetch", help="fetch/parse published adjacency lists")
    f.add_argument("source", help="URL or local file")
    f.set_defaults(func=_cmd_fetch)

    x = sub.add_parser("cross-validate", help="constructions vs search census")
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--search", choices=["auto", "always", "never"], default="auto")
    x.add_argument("--threads", type=int, default=1)
    x.add_argument("--budget-nodes", type=int)
    x.add_argument("--budget-secs", type=float)
    x.set_defaults(func=_cmd_cross_validate)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
