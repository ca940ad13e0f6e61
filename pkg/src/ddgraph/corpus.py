"""Fetch and parse published adjacency-matrix listings.

The hosted pages are HTML with adjacency matrices as blocks of 0/1 rows;
the format is not formally specified, so the parser is deliberately
tolerant: tags are stripped, rows may carry whitespace, and blocks are
separated by anything that is not a 0/1 row.  Entries that fail validation
are reported individually without dropping the rest.
"""

from __future__ import annotations

import hashlib
import os
import re
from dataclasses import dataclass

from .canon import canonical_form
from .g6 import graph6_encode
from .graphs import Graph

_TAG_RE = re.compile(r"<[^>]*>")
_ROW_RE = re.compile(r"^[01](?:[\s,]*[01])*$")


@dataclass(frozen=True)
class CorpusEntry:
    source: str
    line: int  # 1-based line number where the matrix block starts
    graph: Graph | None
    canonical_g6: str | None
    error: str | None


def _strip_markup(text: str) -> str:
    text = re.sub(r"<br\s*/?>", "\n", text, flags=re.I)
    return _TAG_RE.sub("", text)


def parse_matrix_text(text: str, source: str = "<memory>") -> list[CorpusEntry]:
    """Extract every 0/1 matrix block from a document."""
    entries: list[CorpusEntry] = []
    block: list[list[int]] = []
    block_start = 0

    def flush():
        if not block:
            return
        rows = [r[:] for r in block]
        start = block_start
        n = len(rows)
        err = None
        if any(len(r) != n for r in rows):
            err = f"block is {n} rows but not square"
        else:
            for i in range(n):
                if rows[i][i] != 0:
                    err = f"nonzero diagonal at row {i + 1}"
                    break
                for j in range(i + 1, n):
                    if rows[i][j] != rows[j][i]:
                        err = f"asymmetric at ({i + 1},{j + 1})"
                        break
                if err:
                    break
        if err is None:
            g = Graph(
                n,
                tuple(
                    sum(bit << j for j, bit in enumerate(row)) for row in rows
                ),
            )
            entries.append(
                CorpusEntry(
                    source,
                    start,
                    g,
                    graph6_encode(canonical_form(g)[0]),
                    None,
                )
            )
        else:
            entries.append(
                CorpusEntry(source, start, None, None, err)
            )

    for lineno, raw in enumerate(_strip_markup(text).splitlines(), 1):
        line = raw.strip()
        if line and _ROW_RE.match(line):
            digits = [int(ch) for ch in re.findall(r"[01]", line)]
            if not block:
                block_start = lineno
            elif len(digits) != len(block[0]):
                flush()
                block = []
                block_start = lineno
            block.append(digits)
        else:
            flush()
            block = []
    flush()
    return entries


def _cache_path(url: str) -> str | None:
    cache_dir = os.environ.get("DDGRAPH_CACHE_DIR")
    if not cache_dir:
        return None
    os.makedirs(cache_dir, exist_ok=True)
    return os.path.join(
        cache_dir, hashlib.sha256(url.encode()).hexdigest() + ".html"
    )


class FetchError(RuntimeError):
    """Network failure while fetching a corpus page; retriable."""


def fetch_corpus(url_or_path: str) -> list[CorpusEntry]:
    """Entries for every matrix found at a URL or local file."""
    if url_or_path.startswith(("http://", "https://")):
        cache = _cache_path(url_or_path)
        if cache and os.path.exists(cache):
            with open(cache) as fh:
                text = fh.read()
        else:
            try:
                import requests

                resp = requests.get(url_or_path, timeout=30)
                resp.raise_for_status()
                text = resp.text
            except Exception as exc:  # noqa: BLE001 - network errors vary
                raise FetchError(f"fetching {url_or_path}: {exc}") from exc
            if cache:
                with open(cache, "w") as fh:
                    fh.write(text)
    else:
        with open(url_or_path) as fh:
            text = fh.read()
    return parse_matrix_text(text, source=url_or_path)
