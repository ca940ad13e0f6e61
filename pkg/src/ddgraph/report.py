"""JSON verdict reports with a stable, versioned schema."""

from __future__ import annotations

import json

from .classify import (
    ClassificationContradiction,
    classify_family_A,
    classify_family_B,
)
from .g6 import graph6_encode
from .graphs import Graph

SCHEMA_VERSION = 1


def _spec_dict(spec) -> dict:
    if spec.kind == "four_cube":
        return {"kind": "four_cube", "size": 16, "partition_id": spec.partition_id}
    return {
        "kind": "cocktail_cycle",
        "size": spec.size,
        "pair_count": spec.pair_count,
        "embedding": spec.embedding,
    }


def graph_verdict(g: Graph) -> dict:
    """Classify one graph against both parameter families."""
    out: dict = {
        "input_graph6": graph6_encode(g),
        "is_ddg": False,
        "params": None,
        "quotient_tag": None,
        "components": None,
        "isomorphic_to": None,
    }
    a = classify_family_A(g)
    if a.kind != "not_family_a" and a.verdict is not None:
        out["is_ddg"] = True
        out["params"] = list(a.verdict.params.astuple())
        out["quotient_tag"] = a.verdict.canonical_class
        if a.kind == "lattice":
            out["isomorphic_to"] = f"lattice4({a.n})"
        elif a.kind == "g_prime":
            out["isomorphic_to"] = f"g_prime({a.n})"
        else:
            out["components"] = [_spec_dict(s) for s in a.components]
        return out
    b = classify_family_B(g)
    if b.kind != "not_family_b" and b.verdict is not None:
        out["is_ddg"] = True
        out["params"] = list(b.verdict.params.astuple())
        out["quotient_tag"] = b.verdict.canonical_class
        names = {
            "hadamard": f"hadamard_ddg(second, {b.n})",
            "switched_g_prime": f"class_pair_switch(g_prime({b.n}))",
            "switched_reverse": "class_pair_switch(reverse_switch)",
        }
        out["isomorphic_to"] = names[b.kind]
        if b.switched_to is not None and b.switched_to.components:
            out["components"] = [
                _spec_dict(s) for s in b.switched_to.components
            ]
        return out
    return out


def report_json(verdicts: list[dict]) -> str:
    return json.dumps({"version": SCHEMA_VERSION, "results": verdicts})


__all__ = [
    "SCHEMA_VERSION",
    "ClassificationContradiction",
    "graph_verdict",
    "report_json",
]
