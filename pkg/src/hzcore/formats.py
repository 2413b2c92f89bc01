"""Graph and coloring serialization.

Two graph formats are supported:

* graph6 (McKay): header-less 6-bit encoding of the upper triangle in
  column-major order.  Only the short form (n <= 62 single byte, otherwise
  the 4-byte length prefix) is needed at desk scale.
* plain edge lists: one ``u v`` pair per line, ``#`` comments and blank
  lines ignored, optional leading ``n=<k>`` line fixing the vertex count.

Colorings round-trip through a small JSON object
``{"k": ..., "edges": [[u, v, color], ...], "uncolored": [u, v] | null}``.
"""

from __future__ import annotations

import json
from typing import Optional

from .graphs import Graph


def to_graph6(g: Graph) -> str:
    """Encode a graph as a graph6 string."""
    n = g.n
    if n <= 62:
        out = [n + 63]
    elif n <= 258047:
        out = [126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    else:
        raise ValueError("graph too large for graph6 encoding")
    bits = []
    for col in range(1, n):
        for row in range(col):
            bits.append(1 if g.has_edge(row, col) else 0)
    while len(bits) % 6:
        bits.append(0)
    for i in range(0, len(bits), 6):
        value = 0
        for b in bits[i : i + 6]:
            value = value << 1 | b
        out.append(value + 63)
    return "".join(chr(c) for c in out)


def from_graph6(text: str) -> Graph:
    """Decode a graph6 string (a stray '>>graph6<<' header is tolerated)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    data = [ord(c) - 63 for c in s]
    if any(b < 0 or b > 63 for b in data):
        raise ValueError("invalid graph6 character")
    if not data:
        raise ValueError("empty graph6 string")
    if data[0] == 63:
        if len(data) < 4:
            raise ValueError("truncated graph6 length")
        n = data[1] << 12 | data[2] << 6 | data[3]
        data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    need = n * (n - 1) // 2
    bits = []
    for value in data:
        for shift in range(5, -1, -1):
            bits.append(value >> shift & 1)
    if len(bits) < need:
        raise ValueError("graph6 string too short")
    edges = []
    i = 0
    for col in range(1, n):
        for row in range(col):
            if bits[i]:
                edges.append((row, col))
            i += 1
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    """Encode as a plain edge list, with an explicit vertex count line."""
    lines = [f"n={g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    """Parse a plain edge list.

    Vertex count is max id + 1 unless a leading ``n=<k>`` line is present.
    """
    n: Optional[int] = None
    edges = []
    first = True
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if first and line.startswith("n="):
            n = int(line[2:])
            first = False
            continue
        first = False
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line: {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        n = max((max(u, v) for u, v in edges), default=-1) + 1
    return Graph.from_edges(n, edges)


def load_graph(path: str, fmt: Optional[str] = None) -> Graph:
    """Read a graph file, auto-detecting the format by extension."""
    if fmt is None:
        fmt = "g6" if path.endswith(".g6") else "el"
    with open(path, encoding="ascii") as fh:
        text = fh.read()
    if fmt == "g6":
        return from_graph6(text)
    if fmt == "el":
        return from_edge_list(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def coloring_to_json(
    k: int, assignment: dict, uncolored: Optional[tuple[int, int]] = None
) -> str:
    """Serialize an (optionally partial) edge coloring."""
    payload = {
        "k": k,
        "edges": sorted([u, v, c] for (u, v), c in assignment.items()),
        "uncolored": list(uncolored) if uncolored is not None else None,
    }
    return json.dumps(payload, sort_keys=True)


def coloring_from_json(text: str) -> tuple[int, dict, Optional[tuple[int, int]]]:
    payload = json.loads(text)
    assignment = {(u, v): c for u, v, c in payload["edges"]}
    uncolored = tuple(payload["uncolored"]) if payload["uncolored"] else None
    return payload["k"], assignment, uncolored
