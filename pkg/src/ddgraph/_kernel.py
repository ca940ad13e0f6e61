"""Compiled twin of the row-committing subtree explorer.

Mirrors the pure-Python engine in search.py: per-class commit enumeration
with exact pair checks against every committed vertex, window feasibility,
and max-lex canonicity of the committed block with stabilizer-orbit
pruning.  Flat int64 arrays throughout so numba can compile it; the Python
engine stays authoritative and both are cross-checked in the tests.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional extra
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap if not (args and callable(args[0])) else args[0]


NMAX = 33
CAND_CAP = 1 << 17
AUTO_CAP = 384
OUT_CAP = 8192


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _window_ok(c, room, allowed):
    for i in range(allowed.shape[0]):
        a = allowed[i]
        if c <= a <= c + room:
            return True
    return False


@njit(cache=True)
def _uf_find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _is_canonical_kern(rows, t):
    """Max-lex maximality of the identity ordering of a t-vertex block."""
    if t <= 1:
        return True
    ref = np.empty(t, dtype=np.int64)
    for j in range(1, t):
        c = np.int64(0)
        rj = rows[j]
        for i in range(j):
            c = c << 1 | (rj >> i & 1)
        ref[j - 1] = c

    autos = np.zeros((AUTO_CAP, NMAX), dtype=np.int64)
    n_autos = 0
    chosen = np.zeros(t, dtype=np.int64)
    cursor = np.zeros(t + 1, dtype=np.int64)
    acc = np.zeros((t + 1, t), dtype=np.int64)
    parent = np.zeros((t + 1, t), dtype=np.int64)
    base_idx = np.full(t + 1, -1, dtype=np.int64)
    base_inv = np.zeros((t + 1, t), dtype=np.int64)
    seen = np.zeros(t + 1, dtype=np.int64)
    tried = np.zeros((t + 1, t), dtype=np.int64)
    ntried = np.zeros(t + 1, dtype=np.int64)
    used = np.int64(0)

    lvl = 0
    cursor[0] = 0
    seen[0] = 0
    ntried[0] = 0
    for x in range(t):
        parent[0, x] = x
    while lvl >= 0:
        if lvl == t:
            ident = True
            for i in range(t):
                if chosen[i] != i:
                    ident = False
                    break
            if not ident and n_autos < AUTO_CAP:
                for i in range(t):
                    autos[n_autos, i] = chosen[i]
                n_autos += 1
            lvl -= 1
            used &= ~(np.int64(1) << chosen[lvl])
            continue
        # absorb automorphisms discovered since the last visit here
        while seen[lvl] < n_autos:
            gi = seen[lvl]
            seen[lvl] += 1
            match = True
            for i in range(lvl):
                if autos[gi, i] != chosen[i]:
                    match = False
                    break
            if not match:
                continue
            if base_idx[lvl] < 0:
                base_idx[lvl] = gi
                for i in range(t):
                    base_inv[lvl, autos[gi, i]] = i
            else:
                for x in range(t):
                    gx = autos[gi, base_inv[lvl, x]]
                    rx = _uf_find(parent[lvl], x)
                    rg = _uf_find(parent[lvl], gx)
                    if rx != rg:
                        parent[lvl, rx] = rg
        w = cursor[lvl]
        advanced = False
        while w < t:
            if (used >> w & 1) == 0:
                root = _uf_find(parent[lvl], w)
                redundant = False
                for i in range(ntried[lvl]):
                    if _uf_find(parent[lvl], tried[lvl, i]) == root:
                        redundant = True
                        break
                if not redundant:
                    cand = acc[lvl, w]
                    if lvl == 0 or cand == ref[lvl - 1]:
                        tried[lvl, ntried[lvl]] = w
                        ntried[lvl] += 1
                        cursor[lvl] = w + 1
                        chosen[lvl] = w
                        used |= np.int64(1) << w
                        rw = rows[w]
                        for u in range(t):
                            acc[lvl + 1, u] = acc[lvl, u] << 1 | (rw >> u & 1)
                        lvl += 1
                        cursor[lvl] = 0
                        seen[lvl] = n_autos
                        ntried[lvl] = 0
                        base_idx[lvl] = -1
                        for x in range(t):
                            parent[lvl, x] = x
                        advanced = True
                        break
                    if lvl and cand > ref[lvl - 1]:
                        return False
            w += 1
        if advanced:
            continue
        lvl -= 1
        if lvl >= 0:
            used &= ~(np.int64(1) << chosen[lvl])
    return True


@njit(cache=True)
def _state_ok(rows, r, v, k, adj_allowed, nonadj_allowed, both_allowed, regular):
    """Window checks for a state with r committed full-width rows."""
    f = v - r
    cols = np.zeros(v, dtype=np.int64)
    for i in range(r):
        ri = rows[i]
        for y in range(r, v):
            cols[y] |= (ri >> y & 1) << i
    degk = np.zeros(v, dtype=np.int64)
    for y in range(r, v):
        degk[y] = _popcount(cols[y])
    if regular:
        total = 0
        for y in range(r, v):
            d = k - degk[y]
            if d < 0 or d > f - 1:
                return False
            total += d
        if total % 2 == 1:
            return False
        if total > f * (f - 1):
            return False
    full_future = np.int64(0)
    for y in range(r, v):
        full_future |= np.int64(1) << y
    committed_mask = (np.int64(1) << r) - np.int64(1)
    for x in range(r):
        rx = rows[x]
        nfut = _popcount(rx & full_future)
        needed = 0
        supply = 0
        if regular:
            for y in range(r, v):
                if rx >> y & 1:
                    supply += k - degk[y]
        for y in range(r, v):
            adj = rx >> y & 1
            c = _popcount(rx & committed_mask & cols[y])
            room = nfut - adj
            if regular and k - degk[y] < room:
                room = k - degk[y]
            if adj:
                if not _window_ok(c, room, adj_allowed):
                    return False
                if regular:
                    lack = 0
                    for i in range(adj_allowed.shape[0]):
                        if adj_allowed[i] >= c:
                            lack = adj_allowed[i] - c
                            break
                    needed += lack
            else:
                if not _window_ok(c, room, nonadj_allowed):
                    return False
                if regular:
                    lack = 0
                    for i in range(nonadj_allowed.shape[0]):
                        if nonadj_allowed[i] >= c:
                            lack = nonadj_allowed[i] - c
                            break
                    needed += lack
        if regular and needed > supply:
            return False
    for y in range(r, v):
        cy = cols[y]
        for z in range(y + 1, v):
            c = _popcount(cy & cols[z])
            room = f - 2
            if regular:
                if k - degk[y] < room:
                    room = k - degk[y]
                if k - degk[z] < room:
                    room = k - degk[z]
            if not _window_ok(c, room, both_allowed):
                return False
    return True


@njit(cache=True)
def _commit_choices_kern(
    rows, r, v, k, adj_allowed, nonadj_allowed, regular, cand, base
):
    """Fill cand[base:] with the future-adjacency masks for vertex r."""
    col_r = np.int64(0)
    for i in range(r):
        col_r |= (rows[i] >> r & 1) << i
    base_deg = _popcount(col_r)
    # classes of future vertices by column into the committed block
    nf = v - r - 1
    keys = np.zeros(nf, dtype=np.int64)
    ys = np.zeros(nf, dtype=np.int64)
    for idx in range(nf):
        y = r + 1 + idx
        cy = np.int64(0)
        for i in range(r):
            cy |= (rows[i] >> y & 1) << i
        keys[idx] = cy
        ys[idx] = y
    order = np.argsort(keys, kind="mergesort")
    cls_key = np.zeros(nf, dtype=np.int64)
    cls_start = np.zeros(nf + 1, dtype=np.int64)
    cls_size = np.zeros(nf, dtype=np.int64)
    members = np.zeros(nf, dtype=np.int64)
    ncls = 0
    for pos in range(nf):
        idx = order[pos]
        members[pos] = ys[idx]
        if pos == 0 or keys[idx] != cls_key[ncls - 1]:
            cls_key[ncls] = keys[idx]
            cls_start[ncls] = pos
            cls_size[ncls] = 1
            ncls += 1
        else:
            cls_size[ncls - 1] += 1
    cls_start[ncls] = nf
    # members within a class keep ascending labels: mergesort over keys
    # preserves label order because ys is ascending.

    if regular:
        need_lo = k - base_deg
        need_hi = need_lo
        if need_lo < 0 or need_lo > nf:
            return 0
    else:
        need_lo = 0
        need_hi = nf
    if ncls == 0:
        if need_lo <= 0:
            if base >= cand.shape[0]:
                return -1
            cand[base] = 0
            return 1
        return 0

    # adjacency of each committed x to each class, and base common counts
    adj_x_cls = np.zeros((r, nf), dtype=np.int64)
    base_common = np.zeros(r, dtype=np.int64)
    committed_mask = (np.int64(1) << r) - np.int64(1)
    for x in range(r):
        rx = rows[x]
        base_common[x] = _popcount(rx & committed_mask & col_r)
        for ci in range(ncls):
            y0 = members[cls_start[ci]]
            adj_x_cls[x, ci] = rx >> y0 & 1

    counts = np.zeros(ncls + 1, dtype=np.int64)
    suffix_members = np.zeros(ncls + 1, dtype=np.int64)
    for ci in range(ncls - 1, -1, -1):
        suffix_members[ci] = suffix_members[ci + 1] + cls_size[ci]
    # per-x common counts accumulated over decided classes
    acc_common = np.zeros((ncls + 1, r), dtype=np.int64)
    for x in range(r):
        acc_common[0, x] = base_common[x]
    suffix_adj = np.zeros((ncls + 1, r), dtype=np.int64)
    for x in range(r):
        s = 0
        for ci in range(ncls - 1, -1, -1):
            if adj_x_cls[x, ci] == 1:
                s += cls_size[ci]
            suffix_adj[ci, x] = s
        # suffix_adj[ci, x] = adjacent future members in classes >= ci

    count = 0
    ci = 0
    chosen = 0
    counts[0] = -1  # counts[ci] is the take under consideration at level ci
    while ci >= 0:
        counts[ci] += 1
        take = counts[ci]
        if take > cls_size[ci] or chosen + take > need_hi:
            ci -= 1
            if ci >= 0:
                chosen -= counts[ci]
            continue
        # feasibility of the exact pair targets given this partial choice
        ok = True
        if chosen + take + suffix_members[ci + 1] < need_lo:
            ok = False
        if ok:
            for x in range(r):
                c = acc_common[ci, x] + (take if adj_x_cls[x, ci] == 1 else 0)
                rest = suffix_adj[ci + 1, x] if ci + 1 < ncls else 0
                if col_r >> x & 1:
                    if not _window_ok(c, rest, adj_allowed):
                        ok = False
                        break
                else:
                    if not _window_ok(c, rest, nonadj_allowed):
                        ok = False
                        break
        if not ok:
            continue
        if ci == ncls - 1:
            if chosen + take >= need_lo:
                # the window checks above had rest = 0: pair targets exact
                mask = np.int64(0)
                for cj in range(ncls):
                    for pos in range(cls_start[cj], cls_start[cj] + counts[cj]):
                        mask |= np.int64(1) << members[pos]
                if base + count >= cand.shape[0]:
                    return -1
                cand[base + count] = mask
                count += 1
            continue
        # descend to next class
        for x in range(r):
            acc_common[ci + 1, x] = acc_common[ci, x] + (
                take if adj_x_cls[x, ci] == 1 else 0
            )
        chosen += take
        ci += 1
        counts[ci] = -1
    return count


@njit(cache=True)
def explore_subtree(
    rows0,
    r0,
    v,
    k,
    adj_allowed,
    nonadj_allowed,
    regular,
    node_cap,
    out,
):
    """DFS over commit steps below one state; returns (found, nodes, tripped, overflow)."""
    both_list = np.zeros(adj_allowed.shape[0] + nonadj_allowed.shape[0], dtype=np.int64)
    nb = 0
    for i in range(adj_allowed.shape[0]):
        both_list[nb] = adj_allowed[i]
        nb += 1
    for i in range(nonadj_allowed.shape[0]):
        present = False
        for j in range(nb):
            if both_list[j] == nonadj_allowed[i]:
                present = True
                break
        if not present:
            both_list[nb] = nonadj_allowed[i]
            nb += 1
    both_allowed = np.sort(both_list[:nb])

    rows = np.zeros((v + 1, NMAX), dtype=np.int64)
    trunc = np.zeros(NMAX, dtype=np.int64)
    for i in range(r0):
        rows[r0, i] = rows0[i]
    cand = np.zeros(CAND_CAP, dtype=np.int64)
    cand_base = np.zeros(v + 2, dtype=np.int64)
    cand_n = np.zeros(v + 2, dtype=np.int64)
    cand_i = np.zeros(v + 2, dtype=np.int64)

    n_found = 0
    nodes = 1
    tripped = 0

    r = r0
    if r == v:
        for x in range(v):
            out[0, x] = rows[r0, x]
        return 1, nodes, tripped, 0

    # arrange the max-column future vertex at position r, then enumerate
    _swap_max_into_place(rows[r], r, v)
    cand_base[r] = 0
    cnt = _commit_choices_kern(
        rows[r], r, v, k, adj_allowed, nonadj_allowed, regular, cand, 0
    )
    if cnt < 0:
        return n_found, nodes, tripped, 1
    cand_n[r] = cnt
    cand_i[r] = 0

    while r >= r0:
        if node_cap >= 0 and nodes >= node_cap:
            tripped = 1
            break
        if cand_i[r] >= cand_n[r]:
            r -= 1
            continue
        mask = cand[cand_base[r] + cand_i[r]]
        cand_i[r] += 1
        nodes += 1
        col_r = np.int64(0)
        for i in range(r):
            col_r |= (rows[r, i] >> r & 1) << i
        new_row = col_r | mask
        for i in range(r):
            rows[r + 1, i] = rows[r, i] | ((new_row >> i & 1) << r)
        rows[r + 1, r] = new_row
        if not _state_ok(
            rows[r + 1], r + 1, v, k, adj_allowed, nonadj_allowed,
            both_allowed, regular,
        ):
            continue
        tmask = (np.int64(1) << (r + 1)) - np.int64(1)
        for i in range(r + 1):
            trunc[i] = rows[r + 1, i] & tmask
        if not _is_canonical_kern(trunc, r + 1):
            continue
        if r + 1 == v:
            if n_found >= out.shape[0]:
                return n_found, nodes, tripped, 1
            for x in range(v):
                out[n_found, x] = rows[r + 1, x]
            n_found += 1
            continue
        r += 1
        _swap_max_into_place(rows[r], r, v)
        cand_base[r] = cand_base[r - 1] + cand_n[r - 1]
        cnt = _commit_choices_kern(
            rows[r], r, v, k, adj_allowed, nonadj_allowed, regular,
            cand, cand_base[r],
        )
        if cnt < 0:
            return n_found, nodes, tripped, 1
        cand_n[r] = cnt
        cand_i[r] = 0
    return n_found, nodes, tripped, 0


@njit(cache=True)
def _swap_max_into_place(rows_r, r, v):
    """Swap the max-column future vertex into label r (in place)."""
    best = -1
    best_val = np.int64(-1)
    for y in range(r, v):
        val = np.int64(0)
        for i in range(r):
            val = val << 1 | (rows_r[i] >> y & 1)
        if val > best_val:
            best = y
            best_val = val
    if best != r:
        a, b = r, best
        for i in range(r):
            row = rows_r[i]
            ba = row >> a & 1
            bb = row >> b & 1
            row &= ~(np.int64(1) << a)
            row &= ~(np.int64(1) << b)
            row |= ba << b
            row |= bb << a
            rows_r[i] = row
