"""Immutable simple graphs with bit-set adjacency, plus density machinery.

Vertices are always the dense range [0, n).  Edges are stored as sorted
(u, v) tuples with u < v.  Density and the fractional chromatic index are
computed exactly over rationals by subset enumeration, which is the point:
overfull and density comparisons are strict inequalities and must never go
through floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from .errors import InstanceTooLarge

#: Largest vertex count for which subset enumeration is attempted.
DENSITY_LIMIT = 24


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """An immutable simple undirected graph on vertices [0, n)."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[int, ...]  # adj[v] = bit-set of neighbors of v

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph, validating simplicity and the vertex range."""
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        seen = set()
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside vertex range [0, {n})")
            e = _normalize_edge(u, v)
            if e in seen:
                raise ValueError(f"parallel edge {e}")
            seen.add(e)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(n, tuple(sorted(seen)), tuple(adj))

    # -- basic accessors -------------------------------------------------

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> Iterator[int]:
        mask = self.adj[v]
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degree(v) for v in range(self.n)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def remove_edge(self, u: int, v: int) -> "Graph":
        e = _normalize_edge(u, v)
        if e not in self.edges:
            raise ValueError(f"no edge {e}")
        return Graph.from_edges(self.n, (f for f in self.edges if f != e))

    def remove_vertex(self, v: int) -> "Graph":
        """Delete v and relabel the remaining vertices densely."""
        keep = [u for u in range(self.n) if u != v]
        remap = {u: i for i, u in enumerate(keep)}
        return Graph.from_edges(
            self.n - 1,
            ((remap[a], remap[b]) for a, b in self.edges if v not in (a, b)),
        )

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph; returns (subgraph, id map new->old)."""
        vs = sorted(set(vertices))
        remap = {u: i for i, u in enumerate(vs)}
        sub = Graph.from_edges(
            len(vs), ((remap[a], remap[b]) for a, b in self.edges if a in remap and b in remap)
        )
        return sub, tuple(vs)


# -- spec operations -----------------------------------------------------


def max_degree(g: Graph) -> int:
    """Maximum vertex degree; 0 for edgeless graphs."""
    return max((g.degree(v) for v in range(g.n)), default=0)


def core(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by the maximum-degree vertices, with an id map.

    The id map sends new vertex ids back to the original ids.
    """
    d = max_degree(g)
    return g.induced(v for v in range(g.n) if g.degree(v) == d)


def is_connected(g: Graph) -> bool:
    """Reachability of all vertices from vertex 0; true for n <= 1."""
    if g.n <= 1:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= g.adj[low.bit_length() - 1]
            m ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


@dataclass(frozen=True)
class DensityResult:
    """Exact density with a maximizing vertex subset."""

    omega: Fraction
    witness: tuple[int, ...]


def _edges_within(g: Graph, mask: int) -> int:
    count = 0
    m = mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        count += (g.adj[v] & mask).bit_count()
        m ^= low
    return count // 2


def density(g: Graph, limit: int = DENSITY_LIMIT) -> DensityResult:
    """Exact maximum of |E(G[X])| / floor(|X|/2) over subsets with |X| >= 3.

    Zero by convention when n <= 2.  When the maximum exceeds the maximum
    degree, the returned witness has odd cardinality; ties otherwise break
    toward odd cardinality, then the lexicographically least subset.
    """
    if g.n > limit:
        raise InstanceTooLarge(f"density enumeration limited to {limit} vertices")
    if g.n <= 2:
        return DensityResult(Fraction(0), ())
    delta = max_degree(g)
    best = Fraction(-1)
    best_witness: tuple[int, ...] = ()
    best_odd = False
    for size in range(g.n, 2, -1):
        half = size // 2
        # upper bound on the ratio attainable at this size
        cap = Fraction(min(size * (size - 1) // 2, g.m), half)
        if cap < best or (cap == best and best_odd):
            continue
        for subset in combinations(range(g.n), size):
            mask = 0
            for v in subset:
                mask |= 1 << v
            value = Fraction(_edges_within(g, mask), half)
            odd = size % 2 == 1
            if value > best:
                best, best_witness, best_odd = value, subset, odd
            elif value == best and best > delta and odd and not best_odd:
                best_witness, best_odd = subset, odd
    return DensityResult(best, best_witness)


def is_overfull(g: Graph) -> bool:
    """Whether |E| > Delta * floor(|V|/2) (strict)."""
    return g.m > max_degree(g) * (g.n // 2)


def fractional_chromatic_index(g: Graph, limit: int = DENSITY_LIMIT) -> Fraction:
    """Exact max of the maximum degree and the density."""
    return max(Fraction(max_degree(g)), density(g, limit=limit).omega)
