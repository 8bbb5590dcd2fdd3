"""Text formats: edge lists (`u v` per line) and colorings (`u v c` per line).

Vertex labels are arbitrary whitespace-free tokens, mapped to dense ids in
first-seen order; `#` starts a comment.  In coloring files, c = 0 marks an
uncolored or flagged edge.
"""

from __future__ import annotations

import io

from .errors import MalformedInput
from .graph import Graph, build_graph


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_edge_list(text: str) -> tuple[Graph, list[str]]:
    """Parse edge-list text; returns the graph and the id -> label table."""
    labels: list[str] = []
    index: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []

    def vid(token: str) -> int:
        i = index.get(token)
        if i is None:
            i = len(labels)
            index[token] = i
            labels.append(token)
        return i

    for lineno, parts in _data_lines(text):
        if len(parts) != 2:
            raise MalformedInput(f"line {lineno}: expected 'u v', got {parts!r}")
        pairs.append((vid(parts[0]), vid(parts[1])))
    return build_graph(pairs, len(labels)), labels


def read_edge_list(path) -> tuple[Graph, list[str]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph, labels: list[str] | None = None) -> str:
    labels = labels if labels is not None else [str(i) for i in range(g.n)]
    out = io.StringIO()
    for u, v in g.edges:
        out.write(f"{labels[u]} {labels[v]}\n")
    return out.getvalue()


def write_edge_list(path, g: Graph, labels: list[str] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g, labels))


def format_coloring(g: Graph, colors, labels: list[str] | None = None) -> str:
    """One `u v c` line per edge in edge-id order; blank/flagged slots emit 0."""
    labels = labels if labels is not None else [str(i) for i in range(g.n)]
    out = io.StringIO()
    for e, (u, v) in enumerate(g.edges):
        c = colors[e]
        out.write(f"{labels[u]} {labels[v]} {c if c > 0 else 0}\n")
    return out.getvalue()


def write_coloring(path, g: Graph, colors, labels: list[str] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_coloring(g, colors, labels))


def parse_coloring(text: str, g: Graph, labels: list[str]) -> list[int]:
    """Read a coloring file back against a known graph.

    Labels must resolve through the graph's own table; every graph edge must
    appear exactly once.  Returns colors indexed by edge id.
    """
    index = {lab: i for i, lab in enumerate(labels)}
    edge_id = {}
    for e, (u, v) in enumerate(g.edges):
        edge_id[(u, v)] = e
    colors = [None] * len(g.edges)
    for lineno, parts in _data_lines(text):
        if len(parts) != 3:
            raise MalformedInput(f"line {lineno}: expected 'u v c', got {parts!r}")
        tu, tv, tc = parts
        if tu not in index or tv not in index:
            raise MalformedInput(f"line {lineno}: unknown vertex label")
        u, v = index[tu], index[tv]
        if u > v:
            u, v = v, u
        e = edge_id.get((u, v))
        if e is None:
            raise MalformedInput(f"line {lineno}: edge {tu} {tv} is not in the graph")
        if colors[e] is not None:
            raise MalformedInput(f"line {lineno}: duplicate entry for edge {tu} {tv}")
        try:
            c = int(tc)
        except ValueError:
            raise MalformedInput(f"line {lineno}: bad color {tc!r}") from None
        if c < 0:
            raise MalformedInput(f"line {lineno}: negative color {c}")
        colors[e] = c
    missing = [e for e, c in enumerate(colors) if c is None]
    if missing:
        u, v = g.edges[missing[0]]
        raise MalformedInput(
            f"{len(missing)} graph edges missing from the coloring, first: {labels[u]} {labels[v]}"
        )
    return colors


def read_coloring(path, g: Graph, labels: list[str]) -> list[int]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_coloring(fh.read(), g, labels)
