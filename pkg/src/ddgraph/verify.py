"""Deza/DDG verdicts on concrete graphs: partitions, quotients, switches."""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, VertexPartition, common_neighbors, is_regular
from .params import DdgParams, DezaParams, QuotientMatrix, classify_quotient


@dataclass(frozen=True)
class DezaVerdict:
    is_deza: bool
    params: DezaParams | None = None
    witness: tuple[int, int] | None = None


def deza_check(g: Graph) -> DezaVerdict:
    """Regular + at most two distinct common-neighbour counts."""
    k = is_regular(g)
    if k is None:
        degs = [g.rows[v].bit_count() for v in range(g.order)]
        x = degs.index(min(degs))
        y = degs.index(max(degs))
        return DezaVerdict(False, witness=(x, y))
    values: set[int] = set()
    for x in range(g.order):
        rx = g.rows[x]
        for y in range(x + 1, g.order):
            values.add((rx & g.rows[y]).bit_count())
            if len(values) > 2:
                return DezaVerdict(False, witness=(x, y))
    if not values:  # single vertex
        values = {0}
    b, a = max(values), min(values)
    return DezaVerdict(True, params=DezaParams(g.order, k, b, a))


def ddg_partition(g: Graph, p: DdgParams) -> VertexPartition | None:
    """Recover the canonical partition from the lambda1 relation, or None.

    Vertices are grouped by "has exactly lambda1 common neighbours with";
    the grouping must be an equivalence with m classes of size n and all
    cross-class pairs must have lambda2 common neighbours.
    """
    if not p.proper:
        raise ValueError(
            "improper parameters: partition not recoverable from counts"
        )
    if g.order != p.v or is_regular(g) != p.k:
        return None
    class_of = [-1] * g.order
    classes: list[list[int]] = []
    for v in range(g.order):
        if class_of[v] != -1:
            continue
        cls = [v]
        class_of[v] = len(classes)
        for u in range(v + 1, g.order):
            if class_of[u] == -1 and common_neighbors(g, v, u) == p.lambda1:
                cls.append(u)
                class_of[u] = class_of[v]
        if len(cls) != p.n:
            return None
        classes.append(cls)
    if len(classes) != p.m:
        return None
    # the relation must be a genuine equivalence and cross pairs must be l2
    for x in range(g.order):
        for y in range(x + 1, g.order):
            c = common_neighbors(g, x, y)
            if class_of[x] == class_of[y]:
                if c != p.lambda1:
                    return None
            elif c != p.lambda2:
                return None
    return VertexPartition(tuple(class_of), p.m)


def quotient_matrix(g: Graph, part: VertexPartition) -> QuotientMatrix | None:
    """Neighbour counts class-to-class; None unless the partition is equitable."""
    masks = part.class_masks()
    classes = part.classes()
    m = part.m
    entries = []
    for i in range(m):
        row = []
        for j in range(m):
            counts = {(g.rows[v] & masks[j]).bit_count() for v in classes[i]}
            if len(counts) != 1:
                return None
            row.append(counts.pop())
        entries.append(tuple(row))
    sizes = part.class_sizes
    n = sizes[0] if len(set(sizes)) == 1 else 0
    return QuotientMatrix(tuple(entries), n)


def star_switch_partitioned(g: Graph, part: VertexPartition) -> Graph:
    """Complement the blocks between classes (1,2) and between (3,4)."""
    if part.m != 4:
        raise ValueError("star switch needs exactly 4 classes")
    masks = part.class_masks()
    return _switch_blocks(g, [(masks[0], masks[1]), (masks[2], masks[3])])


def _switch_blocks(g: Graph, block_pairs: list[tuple[int, int]]) -> Graph:
    rows = list(g.rows)
    for v in range(g.order):
        row = rows[v]
        for ma, mb in block_pairs:
            if ma >> v & 1:
                row = row ^ mb
            elif mb >> v & 1:
                row = row ^ ma
        rows[v] = row
    return Graph(g.order, tuple(rows))


def seidel_switch(g: Graph, subset) -> Graph:
    """Complement all edges between ``subset`` and its complement."""
    mask = 0
    for v in subset:
        if not 0 <= v < g.order:
            raise ValueError(f"vertex {v} out of range")
        mask |= 1 << v
    comp = ((1 << g.order) - 1) ^ mask
    rows = list(g.rows)
    for v in range(g.order):
        if mask >> v & 1:
            rows[v] ^= comp
        else:
            rows[v] ^= mask
    return Graph(g.order, tuple(rows))


def gstar_pair_type(
    g: Graph, part: VertexPartition, x: int, y: int
) -> tuple[str, int]:
    """Pair case tag plus the predicted common-neighbour count after the switch.

    ``g`` is a family-A DDG whose classes are ordered so its quotient is the
    M5 matrix; the switch complements the (1,2) and (3,4) blocks.  Cases are
    1 (same class), 2a-2c (partner classes) and 3a-3c (cross classes), keyed
    by the number of common neighbours inside class(x) ∪ class(y).
    """
    if x == y:
        raise ValueError("need two distinct vertices")
    if part.m != 4:
        raise ValueError("pair typing needs exactly 4 classes")
    cx, cy = part.class_of[x], part.class_of[y]
    if cx == cy:
        return "1", 0
    masks = part.class_masks()
    t = (g.rows[x] & g.rows[y] & (masks[cx] | masks[cy])).bit_count()
    partner = {0: 1, 1: 0, 2: 3, 3: 2}
    if cy == partner[cx]:
        case = {2: "2a", 1: "2b", 0: "2c"}
        predicted = {2: 0, 1: 2, 0: 4}
    else:
        case = {2: "3a", 1: "3b", 0: "3c"}
        predicted = {2: 4, 1: 2, 0: 0}
    if t not in case:
        raise ValueError(
            f"pair ({x},{y}) has {t} common neighbours in its class pair; "
            "input is not an M5-quotient family-A DDG"
        )
    return case[t], predicted[t]


def walk_regular_check(g: Graph, max_power: int | None = None) -> bool:
    """True iff diag(A^l) is constant for every 2 <= l <= max_power."""
    n = g.order
    if max_power is None:
        max_power = n
    if max_power < 2:
        raise ValueError("max_power must be at least 2")
    a = [[1 if g.rows[i] >> j & 1 else 0 for j in range(n)] for i in range(n)]
    power = a
    for _ in range(2, max_power + 1):
        power = [
            [sum(power[i][t] * a[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        diag = {power[i][i] for i in range(n)}
        if len(diag) != 1:
            return False
    return True


@dataclass(frozen=True)
class DdgVerdict:
    is_ddg: bool
    params: DdgParams | None = None
    partition: VertexPartition | None = None
    quotient: QuotientMatrix | None = None
    canonical_class: str | None = None


def ddg_check(g: Graph, p: DdgParams) -> DdgVerdict:
    """Full verdict for one parameter tuple: partition, quotient, tag."""
    if not p.proper:
        raise ValueError("use ddg_check_with_partition for improper parameters")
    part = ddg_partition(g, p)
    if part is None:
        return DdgVerdict(False)
    quot = quotient_matrix(g, part)
    if quot is None:  # cannot happen for a proper DDG, but stay honest
        return DdgVerdict(False)
    tag, _ = classify_quotient(quot, p)
    return DdgVerdict(True, p, part, quot, tag)


def ddg_check_with_partition(
    g: Graph, p: DdgParams, part: VertexPartition
) -> DdgVerdict:
    """Check the DDG condition against an explicitly supplied partition."""
    if g.order != p.v or is_regular(g) != p.k:
        return DdgVerdict(False)
    if sorted(part.class_sizes) != [p.n] * p.m:
        return DdgVerdict(False)
    for x in range(g.order):
        for y in range(x + 1, g.order):
            c = common_neighbors(g, x, y)
            want = (
                p.lambda1
                if part.class_of[x] == part.class_of[y]
                else p.lambda2
            )
            if c != want:
                return DdgVerdict(False)
    quot = quotient_matrix(g, part)
    tag = classify_quotient(quot, p)[0] if quot is not None else None
    return DdgVerdict(True, p, part, quot, tag)


def ddg_structures(g: Graph) -> list[tuple[DdgParams, VertexPartition]]:
    """Every proper DDG structure the graph admits (any m,n >= 2).

    A proper structure is forced by its lambda1 relation, so it is found by
    trying both orientations of the observed common-neighbour value pair.
    """
    verdict = deza_check(g)
    if not verdict.is_deza:
        return []
    dz = verdict.params
    out = []
    seen = set()
    for lam1, lam2 in ((dz.b, dz.a), (dz.a, dz.b)):
        if lam1 == lam2:
            continue
        if dz.k * dz.k - lam2 * dz.v < 0:
            continue
        # group by the lambda1 relation without presuming n
        class_of = [-1] * g.order
        classes: list[list[int]] = []
        ok = True
        for v in range(g.order):
            if class_of[v] != -1:
                continue
            cls = [v]
            class_of[v] = len(classes)
            for u in range(v + 1, g.order):
                if class_of[u] == -1 and common_neighbors(g, v, u) == lam1:
                    cls.append(u)
                    class_of[u] = class_of[v]
            classes.append(cls)
        sizes = {len(c) for c in classes}
        if len(sizes) != 1:
            continue
        n = sizes.pop()
        m = len(classes)
        if n < 2 or m < 2:
            continue
        for x in range(g.order):
            if not ok:
                break
            for y in range(x + 1, g.order):
                c = common_neighbors(g, x, y)
                want = lam1 if class_of[x] == class_of[y] else lam2
                if c != want:
                    ok = False
                    break
        if not ok:
            continue
        key = (lam1, lam2, m, n)
        if key in seen:
            continue
        seen.add(key)
        p = DdgParams(dz.v, dz.k, lam1, lam2, m, n)
        out.append((p, VertexPartition(tuple(class_of), m)))
    return out
