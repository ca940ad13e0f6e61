"""Isomorph-free exhaustive generation of Deza graphs and DDGs.

Orderly row-committing search: vertices are committed one at a time, and a
commit fixes the vertex's entire row, adjacency to future vertices
included.  Every pair of committed vertices therefore has its final
common-neighbour count the moment the later one commits, which is where
almost all of the pruning power comes from.  Future vertices are
anonymous: only their adjacency columns into the committed block matter,
so equal-column vertices are interchangeable and commits pick prefixes of
each column class.  The committed block must stay maximal (column-major)
over relabelings, which is the isomorph rejection; survivors at full size
are deduplicated by canonical form.

Dense targets (k > (v-1)/2) are searched through their complements with
exactly translated pair constraints and complemented back on output.

The pure-Python explorer below is the reference implementation; an
identical compiled twin lives in _kernel.py and is used when numba is
available (set DDGRAPH_PURE_PYTHON=1 to force the fallback).  Node budgets
are exact in both engines; under the compiled engine a time budget is
checked between frontier subtrees, not inside them.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass

from .canon import canonical_form
from .g6 import graph6_encode
from .graphs import Graph
from .params import DdgParams, DezaParams
from .verify import ddg_partition, ddg_structures

MAX_SEARCH_ORDER = 32


@dataclass(frozen=True)
class SearchTask:
    target: DezaParams | DdgParams
    mode: str = "all_deza"  # all_deza | ddg_only | non_ddg_only
    node_budget: int | None = None
    time_budget: float | None = None
    workers: int = 1
    checkpoint: str | None = None
    frontier_depth: int | None = None

    def __post_init__(self):
        if self.mode not in ("all_deza", "ddg_only", "non_ddg_only"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.target.v > MAX_SEARCH_ORDER:
            raise ValueError(
                f"search capped at {MAX_SEARCH_ORDER} vertices, "
                f"got v={self.target.v}"
            )
        if self.node_budget is not None and self.node_budget < 0:
            raise ValueError("node budget must be nonnegative")
        if self.time_budget is not None and self.time_budget < 0:
            raise ValueError("time budget must be nonnegative")


@dataclass(frozen=True)
class SearchResult:
    graphs: tuple[str, ...]
    node_count: int
    exhausted: bool


@dataclass(frozen=True)
class _Target:
    v: int
    k: int
    adj_allowed: tuple[int, ...]
    nonadj_allowed: tuple[int, ...]
    complemented: bool
    regular: bool = True  # False drops degree constraints (oracle searches)


def _make_target(p: DezaParams) -> _Target:
    allowed = sorted({p.a, p.b})
    if p.v - 1 - p.k < p.k:
        kk = p.v - 1 - p.k
        adj = sorted(
            c + p.v - 2 - 2 * p.k for c in allowed if c + p.v - 2 - 2 * p.k >= 0
        )
        nonadj = sorted(
            c + p.v - 2 * p.k for c in allowed if c + p.v - 2 * p.k >= 0
        )
        return _Target(p.v, kk, tuple(adj), tuple(nonadj), True)
    return _Target(p.v, p.k, tuple(allowed), tuple(allowed), False)


# ---------------------------------------------------------------------------
# canonicity of the committed block (maximal column-major encoding)


def _ref_columns(rows: list[int], t: int) -> list[int]:
    cols = []
    for j in range(1, t):
        rj = rows[j]
        c = 0
        for i in range(j):
            c = c << 1 | (rj >> i & 1)
        cols.append(c)
    return cols


def _is_canonical(rows: list[int], t: int) -> bool:
    """Is the identity ordering maximal among all orderings of the block?

    ``rows`` must be restricted to bits < t.  Orderings that tie the
    reference are automorphisms; composing two that share a node gives an
    element fixing that node's prefix pointwise, and orbits under those
    elements prune the remaining siblings.
    """
    if t <= 1:
        return True
    ref = _ref_columns(rows, t)
    autos: list[tuple[int, ...]] = []
    chosen = [0] * t

    def rec(lvl: int, used: int, acc: list[int]) -> bool:
        if lvl == t:
            if chosen != list(range(t)):
                autos.append(tuple(chosen))
            return True
        parent = list(range(t))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        base: tuple[int, ...] | None = None
        base_inv = [0] * t
        nseen = 0
        tried_roots: list[int] = []
        target = ref[lvl - 1] if lvl else 0
        for w in range(t):
            if used >> w & 1:
                continue
            while nseen < len(autos):
                gamma = autos[nseen]
                nseen += 1
                if any(gamma[i] != chosen[i] for i in range(lvl)):
                    continue
                if base is None:
                    base = gamma
                    for i, x in enumerate(gamma):
                        base_inv[x] = i
                else:
                    # gamma o base^-1 fixes the prefix pointwise
                    for x in range(t):
                        gx = gamma[base_inv[x]]
                        rx, rg = find(x), find(gx)
                        if rx != rg:
                            parent[rx] = rg
            root = find(w)
            if any(find(x) == root for x in tried_roots):
                continue
            cand = acc[w]
            if lvl and cand < target:
                continue
            if lvl and cand > target:
                return False
            tried_roots.append(w)
            chosen[lvl] = w
            rw = rows[w]
            acc2 = [acc[u] << 1 | (rw >> u & 1) for u in range(t)]
            if not rec(lvl + 1, used | 1 << w, acc2):
                return False
        return True

    return rec(0, 0, [0] * t)


# ---------------------------------------------------------------------------
# commit-step machinery (pure-Python reference engine)


class _Budget:
    __slots__ = ("node_cap", "deadline", "nodes", "tripped")

    def __init__(self, node_cap: int | None, deadline: float | None):
        self.node_cap = node_cap
        self.deadline = deadline
        self.nodes = 0
        self.tripped = False

    def spend(self) -> bool:
        self.nodes += 1
        if self.node_cap is not None and self.nodes >= self.node_cap:
            self.tripped = True
        elif self.deadline is not None and self.nodes % 256 == 0:
            if time.monotonic() > self.deadline:
                self.tripped = True
        return not self.tripped


def _window_ok(c: int, room: int, allowed: tuple[int, ...]) -> bool:
    for a in allowed:
        if c <= a <= c + room:
            return True
    return False


def _future_columns(rows: list[int], r: int, v: int) -> list[int]:
    cols = [0] * v
    for i in range(r):
        ri = rows[i]
        for y in range(r, v):
            cols[y] |= (ri >> y & 1) << i
    return cols


def _state_feasible(rows: list[int], r: int, tgt: _Target) -> bool:
    """Window checks for a state with r committed rows."""
    v, k = tgt.v, tgt.k
    f = v - r
    cols = _future_columns(rows, r, v)
    degk = [cols[y].bit_count() for y in range(v)]
    if tgt.regular:
        total_deficit = 0
        for y in range(r, v):
            d = k - degk[y]
            if d < 0 or d > f - 1:
                return False
            total_deficit += d
        if total_deficit % 2:
            return False
        if total_deficit // 2 > f * (f - 1) // 2:
            return False
    both = tuple(sorted(set(tgt.adj_allowed) | set(tgt.nonadj_allowed)))
    full_future = 0
    for y in range(r, v):
        full_future |= 1 << y
    for x in range(r):
        rx = rows[x]
        nfut = (rx & full_future).bit_count()
        needed = 0  # common neighbours x's future pairs still must gain
        supply = 0  # future-internal degree available next to x
        if tgt.regular:
            for y in range(r, v):
                if rx >> y & 1:
                    supply += k - degk[y]
        for y in range(r, v):
            adj = rx >> y & 1
            allowed = tgt.adj_allowed if adj else tgt.nonadj_allowed
            # committed common neighbours of (x, y): z < r adjacent to both
            c = 0
            cy = cols[y]
            cc = rx & ((1 << r) - 1)
            while cc:
                low = cc & -cc
                z = low.bit_length() - 1
                if cy >> z & 1:
                    c += 1
                cc ^= low
            room = nfut - adj
            if tgt.regular and k - degk[y] < room:
                room = k - degk[y]
            if not _window_ok(c, room, allowed):
                return False
            if tgt.regular:
                lack = min((a - c for a in allowed if a >= c), default=0)
                needed += lack
        if tgt.regular and needed > supply:
            return False
    for y in range(r, v):
        cy = cols[y]
        for z in range(y + 1, v):
            c = (cy & cols[z]).bit_count()
            room = f - 2
            if tgt.regular:
                room = min(room, k - degk[y], k - degk[z])
            if not _window_ok(c, room, both):
                return False
    return True


def _commit_choices(rows: list[int], r: int, tgt: _Target) -> list[int]:
    """Future-adjacency masks available for committing vertex r.

    Class structure: future vertices with equal columns into the committed
    block are interchangeable, so within a class the chosen members are a
    prefix (by label).  Pair counts against every committed vertex depend
    only on per-class counts and are checked exactly here.
    """
    v, k = tgt.v, tgt.k
    col_r = 0
    for i in range(r):
        col_r |= (rows[i] >> r & 1) << i
    base_deg = col_r.bit_count()
    classes: dict[int, list[int]] = {}
    for y in range(r + 1, v):
        cy = 0
        for i in range(r):
            cy |= (rows[i] >> y & 1) << i
        classes.setdefault(cy, []).append(y)
    keys = sorted(classes)
    members = [classes[key] for key in keys]
    ncls = len(keys)
    if tgt.regular:
        need_lo = need_hi = k - base_deg
        if need_lo < 0 or need_lo > v - 1 - r:
            return []
    else:
        need_lo, need_hi = 0, v - 1 - r
    # committed pair targets: c(x, r) = |row x & row r| must land in the
    # allowed set for the (x, r) adjacency, known from col_r
    base_common = []
    adj_to_x = []
    for x in range(r):
        rx = rows[x]
        c = 0
        cc = rx & ((1 << r) - 1)
        while cc:
            low = cc & -cc
            z = low.bit_length() - 1
            if col_r >> z & 1:
                c += 1
            cc ^= low
        base_common.append(c)
        adj_to_x.append(
            [1 if rx >> members[ci][0] & 1 else 0 for ci in range(ncls)]
        )
    out: list[int] = []
    counts = [0] * ncls

    def rec(ci: int, chosen: int):
        if chosen > need_hi:
            return
        if ci == ncls:
            if chosen < need_lo:
                return
            # exact pair checks against every committed vertex
            for x in range(r):
                c = base_common[x]
                for cj in range(ncls):
                    if adj_to_x[x][cj]:
                        c += counts[cj]
                allowed = (
                    tgt.adj_allowed
                    if col_r >> x & 1
                    else tgt.nonadj_allowed
                )
                if c not in allowed:
                    return
            mask = 0
            for cj in range(ncls):
                for y in members[cj][: counts[cj]]:
                    mask |= 1 << y
            out.append(mask)
            return
        remaining = sum(len(members[cj]) for cj in range(ci, ncls))
        if chosen + remaining < need_lo:
            return
        for take in range(len(members[ci]) + 1):
            counts[ci] = take
            # running upper/lower feasibility of the exact pair targets
            ok = True
            for x in range(r):
                c = base_common[x]
                rest = 0
                for cj in range(ncls):
                    if adj_to_x[x][cj]:
                        c += counts[cj] if cj <= ci else 0
                        rest += len(members[cj]) if cj > ci else 0
                allowed = (
                    tgt.adj_allowed
                    if col_r >> x & 1
                    else tgt.nonadj_allowed
                )
                if not _window_ok(c, rest, allowed):
                    ok = False
                    break
            if ok:
                rec(ci + 1, chosen + take)
        counts[ci] = 0

    rec(0, 0)
    return out


def _commit_max_ok(rows: list[int], r: int, v: int) -> int:
    """Index of the future vertex that must commit next (max column), or -1.

    Columns are compared as encoding columns (bit to vertex 0 is the most
    significant), matching the maximality convention of the block test.
    """
    best, best_val = -1, -1
    for y in range(r, v):
        val = 0
        for i in range(r):
            val = val << 1 | (rows[i] >> y & 1)
        if val > best_val:
            best, best_val = y, val
    return best


def _swap_labels(rows: list[int], r: int, a: int, b: int) -> list[int]:
    if a == b:
        return rows
    out = []
    for i in range(r):
        row = rows[i]
        ba, bb = row >> a & 1, row >> b & 1
        row &= ~(1 << a) & ~(1 << b)
        row |= ba << b | bb << a
        out.append(row)
    return out


def _explore(
    rows: list[int],
    r: int,
    tgt: _Target,
    budget: _Budget,
    out: list[tuple[int, ...]],
):
    """DFS over commit steps from a state with r committed rows."""
    if not budget.spend():
        return
    v = tgt.v
    if r == v:
        out.append(tuple(rows))
        return
    target_vertex = _commit_max_ok(rows, r, v)
    rows = _swap_labels(rows, r, r, target_vertex)
    for mask in _commit_choices(rows, r, tgt):
        col_r = 0
        for i in range(r):
            col_r |= (rows[i] >> r & 1) << i
        new_row = col_r | mask
        rows2 = [rw | ((new_row >> i & 1) << r) for i, rw in enumerate(rows)]
        rows2.append(new_row)
        if not _state_feasible(rows2, r + 1, tgt):
            continue
        trunc = [rows2[i] & ((1 << (r + 1)) - 1) for i in range(r + 1)]
        if not _is_canonical(trunc, r + 1):
            continue
        _explore(rows2, r + 1, tgt, budget, out)
        if budget.tripped:
            return


# ---------------------------------------------------------------------------
# frontier construction and orchestration


def _expand_one(
    level: list[tuple[int, ...]], r: int, tgt: _Target
) -> list[tuple[int, ...]]:
    nxt: list[tuple[int, ...]] = []
    for state in level:
        rows = list(state)
        target_vertex = _commit_max_ok(rows, r, tgt.v)
        rows = _swap_labels(rows, r, r, target_vertex)
        for mask in _commit_choices(rows, r, tgt):
            col_r = 0
            for i in range(r):
                col_r |= (rows[i] >> r & 1) << i
            new_row = col_r | mask
            rows2 = [rw | ((new_row >> i & 1) << r) for i, rw in enumerate(rows)]
            rows2.append(new_row)
            if not _state_feasible(rows2, r + 1, tgt):
                continue
            trunc = [rows2[i] & ((1 << (r + 1)) - 1) for i in range(r + 1)]
            if not _is_canonical(trunc, r + 1):
                continue
            nxt.append(tuple(rows2))
    return sorted(nxt, reverse=True)


def _frontier(tgt: _Target, depth: int) -> list[tuple[int, ...]]:
    """All surviving states with exactly ``depth`` committed rows."""
    level: list[tuple[int, ...]] = [()]
    for r in range(depth):
        level = _expand_one(level, r, tgt)
        if not level:
            break
    return level


def _kernel_enabled() -> bool:
    if os.environ.get("DDGRAPH_PURE_PYTHON"):
        return False
    try:
        from ._kernel import HAVE_NUMBA
    except Exception:  # pragma: no cover - broken optional dependency
        return False
    return HAVE_NUMBA


def _run_subtree(args) -> tuple[int, list[tuple[int, ...]], int, bool]:
    idx, rows, tgt, node_cap, deadline = args
    if deadline is not None and time.monotonic() > deadline:
        return idx, [], 0, False
    if _kernel_enabled():
        import numpy as np

        from ._kernel import OUT_CAP, explore_subtree

        rows0 = np.array(rows, dtype=np.int64)
        out = np.zeros((OUT_CAP, tgt.v), dtype=np.int64)
        nf, nodes, tripped, overflow = explore_subtree(
            rows0,
            len(rows),
            tgt.v,
            tgt.k,
            np.array(tgt.adj_allowed, dtype=np.int64),
            np.array(tgt.nonadj_allowed, dtype=np.int64),
            tgt.regular,
            -1 if node_cap is None else node_cap,
            out,
        )
        if overflow:
            raise RuntimeError(
                "search kernel buffer overflow; retry with DDGRAPH_PURE_PYTHON=1"
            )
        found = [tuple(int(x) for x in out[i, : tgt.v]) for i in range(nf)]
        return idx, found, int(nodes), not tripped
    budget = _Budget(node_cap, deadline)
    found: list[tuple[int, ...]] = []
    _explore(list(rows), len(rows), tgt, budget, found)
    return idx, found, budget.nodes, not budget.tripped


def _adaptive_frontier(tgt: _Target) -> tuple[list[tuple[int, ...]], int]:
    """Deepen until the frontier is wide enough to parallelize and budget.

    Deliberately independent of the worker count so results and budget
    splits cannot depend on it.
    """
    level: list[tuple[int, ...]] = [()]
    depth = 0
    while depth < tgt.v - 1 and level and len(level) < 64:
        level = _expand_one(level, depth, tgt)
        depth += 1
        if len(level) > 4000:
            break
    return level, depth


class CheckpointMismatch(RuntimeError):
    pass


def _checkpoint_header(task: SearchTask, tgt: _Target, depth: int) -> dict:
    return {
        "version": 1,
        "kind": "ddgraph-search",
        "target": list(task.target.astuple()),
        "mode": task.mode,
        "frontier_depth": depth,
    }


def _raw_search(task: SearchTask, p: DezaParams) -> tuple[list[Graph], int, bool]:
    """Isomorph-free list of all graphs matching the Deza constraints."""
    tgt = _make_target(p)
    if tgt.v == 1:
        return [Graph(1, (0,))], 1, True
    deadline = (
        time.monotonic() + task.time_budget
        if task.time_budget is not None
        else None
    )

    resuming = task.checkpoint and os.path.exists(task.checkpoint)
    done: dict[int, tuple[list[tuple[int, ...]], int]] = {}
    old_lines: list[dict] = []
    if resuming:
        with open(task.checkpoint) as fh:
            old_lines = [json.loads(s) for s in fh if s.strip()]
        if not old_lines or old_lines[0].get("kind") != "ddgraph-search":
            raise CheckpointMismatch(
                f"{task.checkpoint} is not a search checkpoint"
            )
        depth = old_lines[0]["frontier_depth"]
        frontier = _frontier(tgt, depth)
    elif task.frontier_depth:
        depth = max(1, min(task.frontier_depth, tgt.v - 1))
        frontier = _frontier(tgt, depth)
    else:
        frontier, depth = _adaptive_frontier(tgt)

    ckpt_fh = None
    if task.checkpoint:
        header = _checkpoint_header(task, tgt, depth)
        if resuming:
            if old_lines[0] != header:
                raise CheckpointMismatch(
                    f"checkpoint {task.checkpoint} belongs to a different task"
                )
            for rec in old_lines[1:]:
                if "done" in rec:
                    done[rec["done"]] = (
                        [tuple(r) for r in rec["rows"]],
                        rec["nodes"],
                    )
            ckpt_fh = open(task.checkpoint, "a")
        else:
            ckpt_fh = open(task.checkpoint, "w")
            ckpt_fh.write(json.dumps(header) + "\n")
            for i, rows in enumerate(frontier):
                ckpt_fh.write(
                    json.dumps({"frontier": i, "rows": list(rows)}) + "\n"
                )
            ckpt_fh.flush()

    todo = [i for i in range(len(frontier)) if i not in done]
    node_cap = None
    if task.node_budget is not None:
        node_cap = max(1, task.node_budget // max(1, len(frontier)))

    results: list[tuple[int, ...]] = []
    nodes = len(frontier)
    exhausted = True
    jobs = [(i, frontier[i], tgt, node_cap, deadline) for i in todo]

    def consume(idx, found, njobs, full):
        nonlocal nodes, exhausted
        nodes += njobs
        exhausted &= full
        results.extend(found)
        if ckpt_fh:
            ckpt_fh.write(
                json.dumps(
                    {"done": idx, "rows": [list(r) for r in found], "nodes": njobs}
                )
                + "\n"
            )
            ckpt_fh.flush()

    try:
        if task.workers <= 1 or len(jobs) <= 1:
            for job in jobs:
                consume(*_run_subtree(job))
        else:
            with ProcessPoolExecutor(max_workers=task.workers) as pool:
                futures = [pool.submit(_run_subtree, j) for j in jobs]
                for fut in as_completed(futures):
                    consume(*fut.result())
    finally:
        if ckpt_fh:
            ckpt_fh.close()
    for found, njobs in done.values():
        results.extend(found)
        nodes += njobs

    seen: dict[Graph, Graph] = {}
    for rows in results:
        g = Graph(tgt.v, rows)
        if tgt.complemented:
            g = g.complement()
        cg = canonical_form(g)[0]
        seen.setdefault(cg, cg)
    return list(seen), nodes, exhausted


def enumerate_deza(task: SearchTask) -> SearchResult:
    """One canonical representative per isomorphism class matching the target."""
    p = task.target
    if isinstance(p, DdgParams):
        raise TypeError("enumerate_deza expects DezaParams; see enumerate_ddg")
    graphs, nodes, exhausted = _raw_search(task, p)
    if task.mode == "ddg_only":
        graphs = [g for g in graphs if ddg_structures(g)]
    elif task.mode == "non_ddg_only":
        graphs = [g for g in graphs if not ddg_structures(g)]
    out = sorted(graph6_encode(g) for g in graphs)
    return SearchResult(tuple(out), nodes, exhausted)


def enumerate_ddg(task: SearchTask) -> SearchResult:
    """All DDGs with the given parameter tuple, up to isomorphism."""
    p = task.target
    if isinstance(p, DezaParams):
        raise TypeError("enumerate_ddg expects DdgParams")
    shadow = p.deza_shadow()
    sub = SearchTask(
        shadow,
        "all_deza",
        task.node_budget,
        task.time_budget,
        task.workers,
        task.checkpoint,
        task.frontier_depth,
    )
    graphs, nodes, exhausted = _raw_search(sub, shadow)
    if p.proper:
        graphs = [g for g in graphs if ddg_partition(g, p) is not None]
    # improper: lambda1 == lambda2 makes any m x n split work, so every
    # graph with the shadow parameters qualifies once v = m*n holds
    out = sorted(graph6_encode(g) for g in graphs)
    return SearchResult(tuple(out), nodes, exhausted)


def filter_ddg(
    graphs: list[Graph], p: DdgParams
) -> tuple[list[Graph], list[Graph]]:
    """Split graphs by whether they admit the DDG structure ``p``."""
    ddgs, non = [], []
    for g in graphs:
        if p.proper:
            hit = ddg_partition(g, p) is not None
        else:
            hit = g.order == p.v and all(
                (g.rows[x] & g.rows[y]).bit_count() == p.lambda1
                for x in range(g.order)
                for y in range(x + 1, g.order)
            )
        (ddgs if hit else non).append(g)
    return ddgs, non
