"""Dense undirected simple graphs on up to 256 vertices, adjacency as bit rows.

Vertices are integers 0..order-1.  Row ``rows[v]`` is a Python int whose bit
``u`` is set iff ``u`` and ``v`` are adjacent, which makes common-neighbour
counting a single ``&`` plus popcount.  Graphs are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_ORDER = 256


class Graph:
    __slots__ = ("order", "rows")

    def __init__(self, order: int, rows: tuple[int, ...]):
        if not 1 <= order <= MAX_ORDER:
            raise ValueError(f"order must be in 1..{MAX_ORDER}, got {order}")
        if len(rows) != order:
            raise ValueError("row count does not match order")
        full = (1 << order) - 1
        for v, row in enumerate(rows):
            if row & ~full:
                raise ValueError(f"row {v} has bits outside 0..{order - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for v in range(order):
            for u in _bits(rows[v]):
                if not rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({u},{v})")
        self.order = order
        self.rows = tuple(rows)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.rows[v])

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.order):
            row = self.rows[v] >> (v + 1)
            u = v + 1
            while row:
                if row & 1:
                    out.append((v, u))
                row >>= 1
                u += 1
        return out

    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def complement(self) -> "Graph":
        full = (1 << self.order) - 1
        return Graph(
            self.order,
            tuple((full ^ r) & ~(1 << v) for v, r in enumerate(self.rows)),
        )

    def relabel(self, perm: tuple[int, ...]) -> "Graph":
        """Relabelled copy where vertex v becomes perm[v]."""
        rows = [0] * self.order
        for v in range(self.order):
            rv = self.rows[v]
            nv = 0
            for u in _bits(rv):
                nv |= 1 << perm[u]
            rows[perm[v]] = nv
        return Graph(self.order, tuple(rows))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.order == other.order
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.order, self.rows))

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.num_edges()})"


def _bits(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def make_graph(order: int, edges) -> Graph:
    """Build a graph from an edge list; duplicate edges collapse."""
    rows = [0] * order
    for u, v in edges:
        if not (0 <= u < order and 0 <= v < order):
            raise ValueError(f"vertex out of range in edge ({u},{v})")
        if u == v:
            raise ValueError(f"self-loop ({u},{v}) not allowed")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(order, tuple(rows))


def common_neighbors(g: Graph, x: int, y: int) -> int:
    if x == y:
        raise ValueError("common_neighbors needs two distinct vertices")
    return (g.rows[x] & g.rows[y]).bit_count()


def degree_sequence(g: Graph) -> list[int]:
    return sorted(r.bit_count() for r in g.rows)


def is_regular(g: Graph) -> int | None:
    """Valency if the graph is regular, else None."""
    k = g.rows[0].bit_count()
    for r in g.rows:
        if r.bit_count() != k:
            return None
    return k


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex sets of the components, sorted by their minimum vertex."""
    seen = 0
    comps = []
    for s in range(g.order):
        if seen >> s & 1:
            continue
        frontier = 1 << s
        comp = frontier
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.rows[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(_bits(comp))
    return comps


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced on ``vertices`` plus the old->new relabeling map."""
    vs = sorted(set(vertices))
    if not vs:
        raise ValueError("cannot induce on the empty vertex set")
    relabel = {v: i for i, v in enumerate(vs)}
    rows = [0] * len(vs)
    for i, v in enumerate(vs):
        for u in _bits(g.rows[v]):
            j = relabel.get(u)
            if j is not None:
                rows[i] |= 1 << j
    return Graph(len(vs), tuple(rows)), relabel


@dataclass(frozen=True)
class VertexPartition:
    """Assignment of each vertex to one of m classes."""

    class_of: tuple[int, ...]
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one class")
        hit = [0] * self.m
        for c in self.class_of:
            if not 0 <= c < self.m:
                raise ValueError(f"class index {c} out of range")
            hit[c] += 1
        if 0 in hit:
            raise ValueError("every class must be nonempty")

    @property
    def class_sizes(self) -> list[int]:
        sizes = [0] * self.m
        for c in self.class_of:
            sizes[c] += 1
        return sizes

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.m)]
        for v, c in enumerate(self.class_of):
            out[c].append(v)
        return out

    def class_masks(self) -> list[int]:
        masks = [0] * self.m
        for v, c in enumerate(self.class_of):
            masks[c] |= 1 << v
        return masks

    def reorder_classes(self, perm: tuple[int, ...]) -> "VertexPartition":
        """New partition whose class i is class perm[i] of the original.

        Matches the convention of QuotientMatrix.permuted, so the witness
        permutation from the quotient classifier applies directly.
        """
        inv = [0] * self.m
        for i, c in enumerate(perm):
            inv[c] = i
        return VertexPartition(tuple(inv[c] for c in self.class_of), self.m)


def partition_from_classes(classes) -> VertexPartition:
    order = sum(len(c) for c in classes)
    class_of = [-1] * order
    for i, cls in enumerate(classes):
        for v in cls:
            if class_of[v] != -1:
                raise ValueError(f"vertex {v} assigned twice")
            class_of[v] = i
    if -1 in class_of:
        raise ValueError("partition does not cover all vertices")
    return VertexPartition(tuple(class_of), len(classes))
