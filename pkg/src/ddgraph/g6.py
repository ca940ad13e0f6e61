"""graph6 text codec (one graph per line, upper triangle column-major)."""

from __future__ import annotations

from .graphs import Graph, MAX_ORDER


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def graph6_encode(g: Graph) -> str:
    n = g.order
    if n > MAX_ORDER:
        raise ValueError(f"graph6 encoder capped at {MAX_ORDER} vertices")
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + "".join(chr(((n >> s) & 0x3F) + 63) for s in (12, 6, 0))
    bits = []
    for col in range(1, n):
        colrow = g.rows[col]
        for row in range(col):
            bits.append(colrow >> row & 1)
    while len(bits) % 6:
        bits.append(0)
    body = "".join(
        chr((b0 << 5 | b1 << 4 | b2 << 3 | b3 << 2 | b4 << 1 | b5) + 63)
        for b0, b1, b2, b3, b4, b5 in zip(*[iter(bits)] * 6)
    )
    return head + body


def graph6_decode(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    pos = 0
    c = ord(s[0])
    if c == 126:  # '~': long form
        if len(s) >= 2 and ord(s[1]) == 126:
            raise Graph6Error("graphs beyond 258047 vertices unsupported", 1)
        if len(s) < 4:
            raise Graph6Error("truncated long-form order", len(s))
        n = 0
        for pos in range(1, 4):
            c = ord(s[pos])
            if not 63 <= c <= 126:
                raise Graph6Error(f"invalid order byte {s[pos]!r}", pos)
            n = n << 6 | (c - 63)
        pos = 4
    else:
        if not 63 <= c <= 126:
            raise Graph6Error(f"invalid order byte {s[0]!r}", 0)
        n = c - 63
        pos = 1
    if n == 0:
        raise Graph6Error("zero-vertex graph not representable", 0)
    if n > MAX_ORDER:
        raise Graph6Error(f"order {n} exceeds cap {MAX_ORDER}", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(s) - pos != nbytes:
        raise Graph6Error(
            f"expected {nbytes} body bytes for order {n}, got {len(s) - pos}",
            pos,
        )
    rows = [0] * n
    bit = 0
    row, col = 0, 1
    for i in range(pos, len(s)):
        c = ord(s[i])
        if not 63 <= c <= 126:
            raise Graph6Error(f"invalid body byte {s[i]!r}", i)
        chunk = c - 63
        for shift in (5, 4, 3, 2, 1, 0):
            if bit >= nbits:
                if chunk >> shift & 1:
                    raise Graph6Error("nonzero padding bits", i)
                continue
            if chunk >> shift & 1:
                rows[row] |= 1 << col
                rows[col] |= 1 << row
            bit += 1
            row += 1
            if row == col:
                row, col = 0, col + 1
    return Graph(n, tuple(rows))


def write_graph6_lines(graphs, fh) -> None:
    for g in graphs:
        fh.write(graph6_encode(g) + "\n")


def read_graph6_lines(fh) -> list[Graph]:
    out = []
    for line in fh:
        line = line.strip()
        if line:
            out.append(graph6_decode(line))
    return out
