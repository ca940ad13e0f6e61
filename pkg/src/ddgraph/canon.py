"""Canonical labeling, isomorphism testing and automorphism enumeration.

Canonical form: colour refinement seeded by degree, then backtracking over
individualized vertices, keeping the lexicographically least adjacency
encoding (upper triangle, column-major).  Automorphisms discovered from
coinciding leaves prune sibling branches, so the search stays feasible on
the vertex-transitive graphs this package deals with (v <= ~64).
"""

from __future__ import annotations

from .graphs import Graph, _bits


def _refine(rows: tuple[int, ...], n: int, colors: list[int]) -> list[int]:
    """Run colour refinement to a stable partition, ids normalized 0..c-1."""
    while True:
        ncol = max(colors) + 1
        masks = [0] * ncol
        for v, c in enumerate(colors):
            masks[c] |= 1 << v
        sigs = [
            (colors[v], tuple((rows[v] & m).bit_count() for m in masks))
            for v in range(n)
        ]
        distinct = sorted(set(sigs))
        if len(distinct) == ncol:
            return colors
        rank = {s: i for i, s in enumerate(distinct)}
        colors = [rank[s] for s in sigs]


def _initial_colors(rows: tuple[int, ...], n: int) -> list[int]:
    degs = sorted({r.bit_count() for r in rows})
    rank = {d: i for i, d in enumerate(degs)}
    return _refine(rows, n, [rank[rows[v].bit_count()] for v in range(n)])


def _cell_sizes(colors: list[int]) -> list[int]:
    sizes = [0] * (max(colors) + 1)
    for c in colors:
        sizes[c] += 1
    return sizes


class _CanonSearch:
    def __init__(self, g: Graph):
        self.rows = g.rows
        self.n = g.order
        self.best_cols: tuple[int, ...] | None = None
        self.best_pos: tuple[int, ...] | None = None
        self.first_cols: tuple[int, ...] | None = None
        self.first_pos: tuple[int, ...] | None = None
        self.autos: list[tuple[int, ...]] = []

    def run(self):
        colors = _initial_colors(self.rows, self.n)
        self._dfs(colors, [])
        return self.best_pos, self.autos

    def _encode(self, pos: list[int] | tuple[int, ...], upto: int) -> tuple[int, ...]:
        """Column ints for columns 1..upto-1 of the reordered adjacency."""
        rows = self.rows
        cols = []
        for j in range(1, upto):
            rj = rows[pos[j]]
            c = 0
            for i in range(j):
                c = c << 1 | (rj >> pos[i] & 1)
            cols.append(c)
        return tuple(cols)

    def _record_auto(self, pos1, pos2):
        gamma = [0] * self.n
        for i in range(self.n):
            gamma[pos1[i]] = pos2[i]
        gamma = tuple(gamma)
        ident = tuple(range(self.n))
        if gamma != ident and gamma not in set(self.autos):
            self.autos.append(gamma)
            inv = [0] * self.n
            for v, w in enumerate(gamma):
                inv[w] = v
            inv = tuple(inv)
            if inv != gamma:
                self.autos.append(inv)

    def _dfs(self, colors: list[int], path: list[int]):
        n = self.n
        sizes = _cell_sizes(colors)
        if len(sizes) == n:
            pos = [0] * n
            for v, c in enumerate(colors):
                pos[c] = v
            pos = tuple(pos)
            cols = self._encode(pos, n)
            if self.first_cols is None:
                self.first_cols, self.first_pos = cols, pos
            elif cols == self.first_cols and pos != self.first_pos:
                self._record_auto(self.first_pos, pos)
            if self.best_cols is None or cols < self.best_cols:
                self.best_cols, self.best_pos = cols, pos
            elif cols == self.best_cols and pos != self.best_pos:
                self._record_auto(self.best_pos, pos)
            return

        if self.best_cols is not None:
            lead = 0
            while lead < len(sizes) and sizes[lead] == 1:
                lead += 1
            if lead >= 2:
                pos = [0] * lead
                for v, c in enumerate(colors):
                    if c < lead:
                        pos[c] = v
                pcols = self._encode(pos, lead)
                if pcols > self.best_cols[: lead - 1] and (
                    self.first_cols is None
                    or pcols != self.first_cols[: lead - 1]
                ):
                    return

        tc = min(
            (c for c, s in enumerate(sizes) if s > 1),
            key=lambda c: (sizes[c], c),
        )
        cell = [v for v in range(n) if colors[v] == tc]

        # Orbit pruning: skip cell members equivalent to an already tried one
        # under automorphisms that fix the individualization path pointwise.
        parent = {v: v for v in cell}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        seen_autos = 0
        tried_roots: set[int] = set()
        for v in cell:
            while seen_autos < len(self.autos):
                gamma = self.autos[seen_autos]
                seen_autos += 1
                if all(gamma[x] == x for x in path):
                    for x in cell:
                        y = gamma[x]
                        if y in parent:
                            rx, ry = find(x), find(y)
                            if rx != ry:
                                parent[rx] = ry
            if find(v) in {find(w) for w in tried_roots}:
                continue
            tried_roots.add(v)
            child = list(colors)
            for u in range(n):
                if child[u] > tc or (child[u] == tc and u != v):
                    child[u] += 1
            child[v] = tc
            self._dfs(_refine(self.rows, n, child), path + [v])


def canonical_form(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Canonical representative plus the relabeling old-vertex -> new-label."""
    if g.order == 1:
        return g, (0,)
    search = _CanonSearch(g)
    best_pos, _ = search.run()
    lab = [0] * g.order
    for i, v in enumerate(best_pos):
        lab[v] = i
    lab = tuple(lab)
    return g.relabel(lab), lab


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.order != h.order or g.num_edges() != h.num_edges():
        return False
    return canonical_form(g)[0] == canonical_form(h)[0]


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """Generators of the automorphism group (identity omitted)."""
    if g.order == 1:
        return []
    search = _CanonSearch(g)
    _, autos = search.run()
    return autos


def automorphism_group(g: Graph, limit: int = 10_000_000) -> list[tuple[int, ...]]:
    """All automorphisms, by closure of the generators; error above limit."""
    n = g.order
    ident = tuple(range(n))
    gens = automorphisms(g)
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for gen in gens:
                q = tuple(gen[p[i]] for i in range(n))
                if q not in group:
                    group.add(q)
                    nxt.append(q)
                    if len(group) > limit:
                        raise ValueError(
                            f"automorphism group exceeds limit {limit}"
                        )
        frontier = nxt
    return sorted(group)


def seidel_automorphisms(g: Graph, max_order: int = 64) -> list[tuple[int, ...]]:
    """All involutive automorphisms interchanging only non-adjacent vertices.

    The identity is excluded.  Enumeration is by backtracking over the
    pairing, so it is only intended for graphs of order <= max_order.
    """
    n = g.order
    if n > max_order:
        raise ValueError(f"order {n} exceeds Seidel enumeration cap {max_order}")
    rows = g.rows
    degs = [r.bit_count() for r in rows]
    out: list[tuple[int, ...]] = []
    phi = [-1] * n

    def consistent(v: int, w: int) -> bool:
        # check adjacency is preserved against all already assigned vertices
        for x in range(n):
            fx = phi[x]
            if fx == -1 or x == v:
                continue
            if (rows[v] >> x & 1) != (rows[w] >> fx & 1):
                return False
        return True

    def extend(v: int):
        while v < n and phi[v] != -1:
            v += 1
        if v == n:
            if any(phi[x] != x for x in range(n)):
                out.append(tuple(phi))
            return
        # v stays fixed
        phi[v] = v
        if consistent(v, v):
            extend(v + 1)
        phi[v] = -1
        # or v is swapped with a later non-adjacent vertex of equal degree
        for w in range(v + 1, n):
            if phi[w] != -1 or rows[v] >> w & 1 or degs[v] != degs[w]:
                continue
            phi[v], phi[w] = w, v
            if consistent(v, w) and consistent(w, v):
                extend(v + 1)
            phi[v] = phi[w] = -1

    extend(0)
    return out


def apply_perm_to_mask(perm: tuple[int, ...], mask: int) -> int:
    out = 0
    for v in _bits(mask):
        out |= 1 << perm[v]
    return out
