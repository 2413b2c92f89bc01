"""Canonical forms for small graphs.

Iterated degree refinement narrows the candidate vertex orderings, then a
backtracking search picks the ordering whose upper-triangle adjacency
bitstring is lexicographically largest.  Intended for graphs up to roughly
ten vertices; everything in this package that needs isomorphism (dedup in
enumeration, fixture recognition) lives at that scale.
"""

from __future__ import annotations

from functools import lru_cache

from .graphs import Graph


def _refine(g: Graph) -> list[int]:
    """Stable vertex classes from iterated neighbor-class refinement."""
    colors = [g.degree(v) for v in range(g.n)]
    while True:
        keys = [
            (colors[v], tuple(sorted(colors[w] for w in g.neighbors(v))))
            for v in range(g.n)
        ]
        order = {key: i for i, key in enumerate(sorted(set(keys)))}
        new = [order[key] for key in keys]
        if new == colors:
            return colors
        colors = new


def canonical_order(g: Graph) -> tuple[int, ...]:
    """A canonical vertex ordering (maximizing the adjacency bitstring)."""
    n = g.n
    if n == 0:
        return ()
    classes = _refine(g)
    best_bits: list[int] | None = None
    best_order: list[int] | None = None
    order: list[int] = []
    pos = {}

    def rec(bits: list[int]):
        nonlocal best_bits, best_order
        depth = len(order)
        if depth == n:
            if best_bits is None or bits > best_bits:
                best_bits = list(bits)
                best_order = list(order)
            return
        # candidates: members of the least available class, refined order
        remaining = [v for v in range(n) if v not in pos]
        target = min(classes[v] for v in remaining)
        for v in remaining:
            if classes[v] != target:
                continue
            row = [1 if g.has_edge(v, u) else 0 for u in order]
            cand = bits + row
            if best_bits is not None:
                prefix = best_bits[: len(cand)]
                if cand < prefix:
                    continue
            order.append(v)
            pos[v] = depth
            rec(cand)
            order.pop()
            del pos[v]

    rec([])
    assert best_order is not None
    return tuple(best_order)


@lru_cache(maxsize=65536)
def _certificate_cached(n: int, edges: tuple) -> bytes:
    g = Graph.from_edges(n, edges)
    perm = canonical_order(g)
    inv = {v: i for i, v in enumerate(perm)}
    bits = 0
    for u, v in g.edges:
        i, j = sorted((inv[u], inv[v]))
        bits |= 1 << (j * (j - 1) // 2 + i)
    return bytes([n]) + bits.to_bytes((n * (n - 1) // 2 + 7) // 8 or 1, "little")


def certificate(g: Graph) -> bytes:
    """Canonical-form certificate; equal iff the graphs are isomorphic."""
    return _certificate_cached(g.n, g.edges)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and certificate(g) == certificate(h)


def canonical_graph(g: Graph) -> Graph:
    """The canonically labeled copy of g."""
    perm = canonical_order(g)
    inv = {v: i for i, v in enumerate(perm)}
    return Graph.from_edges(g.n, ((inv[u], inv[v]) for u, v in g.edges))
