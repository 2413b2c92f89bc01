"""Ground-truth chromatic index by exhaustive backtracking.

Vizing pins the chromatic index to {Delta, Delta+1}, so after the density
lower bound only the question "is there an edge Delta-coloring?" remains.
The search fixes the colors on a maximum-degree vertex's star (any proper
coloring can be permuted into that shape), then branches on the most
constrained edge first with new-color symmetry breaking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, Optional

from . import canon
from .errors import OracleTimeout
from .graphs import Graph, density, is_connected, max_degree

DEFAULT_BUDGET = 5_000_000


@dataclass
class OracleResult:
    chromatic_index: Optional[int]
    witness: Optional[dict]
    nodes_explored: int
    timed_out: bool
    lower_bound: int
    upper_bound: int


def find_edge_coloring(
    g: Graph, k: int, budget: int = DEFAULT_BUDGET
) -> tuple[Optional[dict], int, bool]:
    """Search for a proper edge k-coloring.

    Returns (coloring | None, nodes explored, timed_out).  A None coloring
    with timed_out False is a certificate of non-existence.
    """
    if not g.edges:
        return {}, 0, False
    if k < max_degree(g):
        return None, 0, False
    full = (1 << (k + 1)) - 2  # bits 1..k
    free = [full] * g.n
    edges = list(g.edges)
    color = {}

    # symmetry breaking: fix the star of a maximum-degree vertex
    v0 = max(range(g.n), key=g.degree)
    star = sorted(w for w in g.neighbors(v0))
    for i, w in enumerate(star):
        c = i + 1
        color[(min(v0, w), max(v0, w))] = c
        free[v0] &= ~(1 << c)
        free[w] &= ~(1 << c)
    max_used = len(star)
    remaining = [e for e in edges if e not in color]
    nodes = 0
    exhausted_budget = False

    def rec(todo: list, max_used: int) -> bool:
        nonlocal nodes, exhausted_budget
        if not todo:
            return True
        nodes += 1
        if nodes > budget:
            exhausted_budget = True
            return False
        # most constrained edge first, ties by edge id
        best_i = -1
        best_count = k + 1
        for i, (u, v) in enumerate(todo):
            count = (free[u] & free[v]).bit_count()
            if count == 0:
                return False
            if count < best_count:
                best_count, best_i = count, i
                if count == 1:
                    break
        u, v = todo[best_i]
        rest = todo[:best_i] + todo[best_i + 1 :]
        avail = free[u] & free[v]
        cap = min(k, max_used + 1)  # colors beyond max_used+1 are symmetric
        m = avail & ((1 << (cap + 1)) - 1)
        while m:
            low = m & -m
            c = low.bit_length() - 1
            m ^= low
            color[(u, v)] = c
            free[u] &= ~low
            free[v] &= ~low
            if rec(rest, max(max_used, c)):
                return True
            free[u] |= low
            free[v] |= low
            del color[(u, v)]
            if exhausted_budget:
                return False
        return False

    if rec(remaining, max_used):
        return dict(color), nodes, False
    return None, nodes, exhausted_budget


def chromatic_index_exact(g: Graph, budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Exact chromatic index with a witness coloring."""
    if not g.edges:
        return OracleResult(0, {}, 0, False, 0, 0)
    delta = max_degree(g)
    lb = delta
    if g.n <= 16:  # density bound is cheap at this size
        lb = max(lb, math.ceil(density(g).omega))
    ub = delta + 1
    if lb >= ub:
        witness = _vizing_witness(g)
        return OracleResult(ub, witness, 0, False, lb, ub)
    coloring, nodes, timed_out = find_edge_coloring(g, delta, budget)
    if coloring is not None:
        return OracleResult(delta, coloring, nodes, False, lb, delta)
    if timed_out:
        return OracleResult(None, None, nodes, True, lb, ub)
    return OracleResult(ub, _vizing_witness(g), nodes, False, ub, ub)


def _vizing_witness(g: Graph) -> dict:
    from .vizing import color_delta_plus_one

    return color_delta_plus_one(g).coloring


def is_critical_edge(g: Graph, e: tuple, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether removing e drops the chromatic index."""
    before = chromatic_index_exact(g, budget)
    if before.timed_out:
        raise OracleTimeout(before.lower_bound, before.upper_bound, before.nodes_explored)
    after = chromatic_index_exact(g.remove_edge(*e), budget)
    if after.timed_out:
        raise OracleTimeout(after.lower_bound, after.upper_bound, after.nodes_explored)
    return after.chromatic_index < before.chromatic_index


def is_delta_critical(g: Graph, budget: int = DEFAULT_BUDGET) -> bool:
    """Connected, Class 2, and every edge critical."""
    if not is_connected(g) or not g.edges:
        return False
    result = chromatic_index_exact(g, budget)
    if result.timed_out:
        raise OracleTimeout(result.lower_bound, result.upper_bound, result.nodes_explored)
    if result.chromatic_index != max_degree(g) + 1:
        return False
    return all(is_critical_edge(g, e, budget) for e in g.edges)


# -- small-graph enumeration ---------------------------------------------

_EXHAUSTIVE_LIMIT = 7
_rep_cache: dict[int, list[Graph]] = {}


def _representatives(n: int) -> list[Graph]:
    """One canonically labeled graph per isomorphism class on n vertices."""
    if n in _rep_cache:
        return _rep_cache[n]
    if n == 0:
        reps = [Graph.from_edges(0, [])]
    elif n == 1:
        reps = [Graph.from_edges(1, [])]
    else:
        seen = set()
        reps = []
        for base in _representatives(n - 1):
            for mask in range(1 << (n - 1)):
                edges = list(base.edges)
                m = mask
                while m:
                    low = m & -m
                    edges.append((low.bit_length() - 1, n - 1))
                    m ^= low
                g = Graph.from_edges(n, edges)
                cert = canon.certificate(g)
                if cert not in seen:
                    seen.add(cert)
                    reps.append(canon.canonical_graph(g))
    _rep_cache[n] = reps
    return reps


def enumerate_small_graphs(
    n: int,
    predicate: Optional[Callable[[Graph], bool]] = None,
    samples: int = 2000,
    seed: int = 0,
) -> Iterator[Graph]:
    """Graphs on n vertices passing the predicate, one per isomorphism class.

    Exhaustive for n <= 7; seeded random sampling (deduplicated) beyond
    that.  Predicates are assumed isomorphism-invariant, so they are
    evaluated on class representatives.
    """
    if n <= _EXHAUSTIVE_LIMIT:
        for g in _representatives(n):
            if predicate is None or predicate(g):
                yield g
        return
    import random

    rng = random.Random(seed)
    seen = set()
    pairs = list(combinations(range(n), 2))
    for _ in range(samples):
        edges = [e for e in pairs if rng.random() < 0.5]
        g = Graph.from_edges(n, edges)
        cert = canon.certificate(g)
        if cert in seen:
            continue
        seen.add(cert)
        if predicate is None or predicate(g):
            yield g
