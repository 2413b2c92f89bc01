"""Delta+1 edge coloring by iterative edge insertion.

Each insertion grows a fan at one endpoint of the uncolored edge, inverts
one two-colored chain through the center when needed, rotates a fan
prefix, and colors the final edge.  With a palette of Delta+1 colors the
step always succeeds; the same step is reused with a palette of Delta
colors by the Kempe descent, where it is allowed to fail.

Everything is deterministic: edges are inserted in ascending order and
all choices take the smallest color or vertex id first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .coloring import PartialEdgeColoring, chain_through, swap_chain
from .graphs import Graph, max_degree, _normalize_edge


@dataclass
class InsertTrace:
    edge: tuple
    fan_size: int = 0
    chains_swapped: int = 0
    direct: bool = False


@dataclass
class ColoringOutcome:
    coloring: dict
    colors_used: int
    steps: list[InsertTrace] = field(default_factory=list)


def _min_color(colors: set[int]) -> Optional[int]:
    return min(colors) if colors else None


def _grow_fan(pc: PartialEdgeColoring, u: int, v: int) -> list[int]:
    """Maximal fan of u starting at v: each next edge's color is free at
    the previous fan vertex."""
    fan = [v]
    in_fan = {v}
    while True:
        z = fan[-1]
        extended = False
        for d in sorted(pc.missing(z)):
            w = pc.neighbor_via(u, d)
            if w is not None and w not in in_fan:
                fan.append(w)
                in_fan.add(w)
                extended = True
                break
        if not extended:
            return fan


def _fan_valid_prefix(pc: PartialEdgeColoring, u: int, fan: list[int], i: int) -> bool:
    """Whether fan[:i+1] still satisfies the fan condition."""
    for j in range(1, i + 1):
        c = pc.color_of(u, fan[j])
        if c is None or c not in pc.missing(fan[j - 1]):
            return False
    return True


def _rotate_and_color(
    pc: PartialEdgeColoring, u: int, fan: list[int], i: int, d: int
) -> None:
    """Shift the uncolored edge down the fan prefix and finish with d."""
    for j in range(i):
        e = _normalize_edge(u, fan[j])
        nxt = pc.color_of(u, fan[j + 1])
        pc._unset(_normalize_edge(u, fan[j + 1]))
        pc._set(e, nxt)
    pc._set(_normalize_edge(u, fan[i]), d)
    pc.uncolored = None


def try_insert(
    pc: PartialEdgeColoring, e: tuple, trace: Optional[InsertTrace] = None
) -> bool:
    """Color the uncolored edge e within pc's palette, in place.

    Always succeeds when the palette has Delta+1 colors; may fail on a
    Delta-color palette, in which case pc is still a proper partial
    coloring with e uncolored (a chain swap may have been applied).
    """
    u, v = e
    if trace is None:
        trace = InsertTrace(edge=_normalize_edge(u, v))
    common = pc.missing(u) & pc.missing(v)
    if common:
        pc._set(_normalize_edge(u, v), min(common))
        pc.uncolored = None
        trace.direct = True
        trace.fan_size = 1
        return True

    fan = _grow_fan(pc, u, v)
    trace.fan_size = len(fan)
    c = _min_color(pc.missing(u))
    d = _min_color(pc.missing(fan[-1]))
    if c is None or d is None:
        return False  # only possible on a Delta palette

    if d in pc.missing(u):
        _rotate_and_color(pc, u, fan, len(fan) - 1, d)
        return True

    # invert the (c, d)-chain through u
    chain = chain_through(pc, u, c, d)
    swapped = swap_chain(pc, chain)
    pc.assignment = swapped.assignment
    pc._counts = swapped._counts
    trace.chains_swapped += 1

    # after inversion d is free at u; find a fan prefix ending at a vertex
    # where d is free
    for i in range(len(fan) - 1, -1, -1):
        w = fan[i]
        if d in pc.missing(w) and _fan_valid_prefix(pc, u, fan, i):
            _rotate_and_color(pc, u, fan, i, d)
            return True
    return False


def insert_edge(pc: PartialEdgeColoring, e: tuple) -> PartialEdgeColoring:
    """Functional single-step insertion over a Delta+1 palette."""
    out = pc.clone()
    if not try_insert(out, e):
        raise AssertionError("insertion cannot fail on a Delta+1 palette")
    return out


def color_delta_plus_one(g: Graph, order: Optional[list] = None) -> ColoringOutcome:
    """Proper edge coloring of any simple graph with at most Delta+1 colors."""
    k = max_degree(g) + 1
    pc = PartialEdgeColoring(Graph.from_edges(g.n, []), k)
    steps: list[InsertTrace] = []
    inserted: list = []
    for e in order if order is not None else list(g.edges):
        inserted.append(e)
        sub = Graph.from_edges(g.n, inserted)
        cur = PartialEdgeColoring(sub, k, pc.assignment, uncolored=e)
        trace = InsertTrace(edge=e)
        ok = try_insert(cur, e, trace)
        assert ok, "Delta+1 insertion failed"
        steps.append(trace)
        pc = cur
    final = PartialEdgeColoring(g, k, pc.assignment)
    final.check()
    return ColoringOutcome(dict(final.assignment), final.colors_used(), steps)
