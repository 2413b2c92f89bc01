"""Partial edge colorings and Kempe-chain operations.

A :class:`PartialEdgeColoring` holds a proper edge coloring over the
palette [1, k] with at most one designated uncolored edge, and maintains
per-vertex color multiplicity counts.  Counts rather than plain bit-sets
are used because subchain swaps and shifts pass through transient states
where a vertex carries a repeated color; the structure keeps working
there and reports the conflicting vertices explicitly.

All chain operations recompute components on demand; there is no
incremental chain maintenance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    AmbiguousSegment,
    ImproperInput,
    NoSegment,
    ShiftConflict,
    StaleChain,
    VerticesNotOnChain,
)
from .graphs import Graph, _normalize_edge

Edge = tuple[int, int]


class PartialEdgeColoring:
    """Edge coloring over [1, k] with at most one uncolored edge."""

    __slots__ = ("graph", "k", "assignment", "uncolored", "_counts")

    def __init__(
        self,
        graph: Graph,
        k: int,
        assignment: Optional[dict] = None,
        uncolored: Optional[Edge] = None,
    ):
        self.graph = graph
        self.k = k
        self.assignment: dict[Edge, int] = {}
        self.uncolored: Optional[Edge] = (
            _normalize_edge(*uncolored) if uncolored is not None else None
        )
        self._counts = [[0] * (k + 1) for _ in range(graph.n)]
        if assignment:
            for (u, v), c in assignment.items():
                self._set(_normalize_edge(u, v), c)

    # -- internal state --------------------------------------------------

    def _set(self, e: Edge, c: int) -> None:
        if not 1 <= c <= self.k:
            raise ImproperInput(f"color {c} outside palette [1, {self.k}]")
        old = self.assignment.get(e)
        u, v = e
        if old is not None:
            self._counts[u][old] -= 1
            self._counts[v][old] -= 1
        self.assignment[e] = c
        self._counts[u][c] += 1
        self._counts[v][c] += 1

    def _unset(self, e: Edge) -> None:
        c = self.assignment.pop(e)
        u, v = e
        self._counts[u][c] -= 1
        self._counts[v][c] -= 1

    def clone(self) -> "PartialEdgeColoring":
        other = PartialEdgeColoring.__new__(PartialEdgeColoring)
        other.graph = self.graph
        other.k = self.k
        other.assignment = dict(self.assignment)
        other.uncolored = self.uncolored
        other._counts = [row[:] for row in self._counts]
        return other

    # -- queries ---------------------------------------------------------

    def color_of(self, u: int, v: int) -> Optional[int]:
        return self.assignment.get(_normalize_edge(u, v))

    def present(self, v: int) -> set[int]:
        return {c for c in range(1, self.k + 1) if self._counts[v][c]}

    def missing(self, v: int) -> set[int]:
        return {c for c in range(1, self.k + 1) if not self._counts[v][c]}

    def the_missing(self, v: int) -> int:
        """The unique missing color at v; raises if not unique."""
        miss = self.missing(v)
        if len(miss) != 1:
            raise ImproperInput(f"vertex {v} misses {sorted(miss)}, expected one")
        return next(iter(miss))

    def neighbor_via(self, v: int, c: int) -> Optional[int]:
        """The neighbor joined to v by an edge of color c, if any."""
        for w in self.graph.neighbors(v):
            if self.assignment.get(_normalize_edge(v, w)) == c:
                return w
        return None

    def conflicted_vertices(self) -> tuple[int, ...]:
        return tuple(
            v
            for v in range(self.graph.n)
            if any(count > 1 for count in self._counts[v][1:])
        )

    @property
    def proper(self) -> bool:
        return not self.conflicted_vertices()

    def colors_used(self) -> int:
        return len(set(self.assignment.values()))

    def check(self) -> None:
        """Full validation: colored edge set, palette, properness."""
        expected = set(self.graph.edges)
        if self.uncolored is not None:
            if self.uncolored not in expected:
                raise ImproperInput(f"uncolored edge {self.uncolored} not in graph")
            expected.discard(self.uncolored)
        if set(self.assignment) != expected:
            raise ImproperInput("assignment does not cover exactly the colored edges")
        if not self.proper:
            raise ImproperInput(f"conflicts at {self.conflicted_vertices()}")


def erase_edge(g: Graph, k: int, coloring: dict, e: Edge) -> PartialEdgeColoring:
    """Turn a full proper k-coloring into a partial one with e uncolored."""
    e = _normalize_edge(*e)
    assignment = {_normalize_edge(u, v): c for (u, v), c in coloring.items()}
    if e not in assignment:
        raise ImproperInput(f"edge {e} not colored")
    del assignment[e]
    pc = PartialEdgeColoring(g, k, assignment, uncolored=e)
    pc.check()
    return pc


@dataclass(frozen=True)
class KempeChain:
    """A maximal two-colored component: an alternating path or even cycle."""

    colors: frozenset
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    kind: str  # "path" | "cycle"


def _walk(pc: PartialEdgeColoring, start: int, first: int, colors: set[int]):
    """Follow the two-colored component from start, first edge colored first.

    Returns (vertices, edges, closed) where closed means we returned to
    start (a cycle).
    """
    vertices = [start]
    edges: list[Edge] = []
    prev, cur, want = start, start, first
    while True:
        nxt = pc.neighbor_via(cur, want)
        if nxt is None:
            return vertices, edges, False
        edges.append(_normalize_edge(cur, nxt))
        if nxt == start:
            return vertices, edges, True
        vertices.append(nxt)
        prev, cur = cur, nxt
        want = next(iter(colors - {want}))


def chain_through(pc: PartialEdgeColoring, v: int, alpha: int, beta: int) -> KempeChain:
    """The full (alpha, beta)-component containing v."""
    if alpha == beta:
        raise ValueError("chain colors must differ")
    colors = {alpha, beta}
    at_v = [c for c in (alpha, beta) if pc.neighbor_via(v, c) is not None]
    if not at_v:
        return KempeChain(frozenset(colors), (v,), (), "path")
    if len(at_v) == 1:
        verts, edges, closed = _walk(pc, v, at_v[0], colors)
        if closed:  # odd component through multi-edges cannot occur when proper
            return _canonical_cycle(colors, verts, edges)
        return _canonical_path(colors, verts, edges)
    # v is interior: walk both directions
    verts_a, edges_a, closed = _walk(pc, v, at_v[0], colors)
    if closed:
        return _canonical_cycle(colors, verts_a, edges_a)
    verts_b, edges_b, _ = _walk(pc, v, at_v[1], colors)
    vertices = tuple(reversed(verts_a)) + tuple(verts_b[1:])
    edges = tuple(reversed(edges_a)) + tuple(edges_b)
    return _canonical_path(colors, list(vertices), list(edges))


def _canonical_path(colors, vertices, edges) -> KempeChain:
    if len(vertices) > 1 and vertices[0] > vertices[-1]:
        vertices = list(reversed(vertices))
        edges = list(reversed(edges))
    return KempeChain(frozenset(colors), tuple(vertices), tuple(edges), "path")


def _canonical_cycle(colors, vertices, edges) -> KempeChain:
    # rotate so the smallest vertex comes first, then pick the direction
    # toward its smaller neighbor
    i = vertices.index(min(vertices))
    vertices = vertices[i:] + vertices[:i]
    edges = edges[i:] + edges[:i]
    if len(vertices) > 2 and vertices[1] > vertices[-1]:
        vertices = [vertices[0]] + list(reversed(vertices[1:]))
        edges = list(reversed(edges))
    return KempeChain(frozenset(colors), tuple(vertices), tuple(edges), "cycle")


def segment_from(
    pc: PartialEdgeColoring,
    x: int,
    alpha: int,
    beta: int,
    first_color: Optional[int] = None,
) -> KempeChain:
    """The chain segment starting at x and running to a component end.

    When x is interior to a path component the direction is ambiguous and
    must be fixed by first_color (the color of the segment's first edge).
    Cycle components have no such segment.
    """
    colors = {alpha, beta}
    chain = chain_through(pc, x, alpha, beta)
    if chain.kind == "cycle":
        raise NoSegment(f"({alpha},{beta})-component of {x} is an even cycle")
    if len(chain.vertices) == 1:
        return chain
    pos = chain.vertices.index(x)
    if pos in (0, len(chain.vertices) - 1):
        if pos:
            vertices = tuple(reversed(chain.vertices))
            edges = tuple(reversed(chain.edges))
        else:
            vertices, edges = chain.vertices, chain.edges
        return KempeChain(frozenset(colors), vertices, edges, "path")
    if first_color is None:
        raise AmbiguousSegment(f"{x} is interior to its ({alpha},{beta})-chain")
    down = pc.neighbor_via(x, first_color)
    if down is None:
        raise NoSegment(f"no edge of color {first_color} at {x}")
    if down == chain.vertices[pos + 1]:
        vertices = chain.vertices[pos:]
        edges = chain.edges[pos:]
    else:
        vertices = tuple(reversed(chain.vertices[: pos + 1]))
        edges = tuple(reversed(chain.edges[:pos]))
    return KempeChain(frozenset(colors), vertices, edges, "path")


def linked(pc: PartialEdgeColoring, x: int, y: int, alpha: int, beta: int) -> bool:
    """Whether x and y lie on the same (alpha, beta)-component."""
    if x == y:
        return True
    return y in chain_through(pc, x, alpha, beta).vertices


def _verify_component(pc: PartialEdgeColoring, chain: KempeChain) -> None:
    alpha, beta = sorted(chain.colors)
    current = chain_through(pc, chain.vertices[0], alpha, beta)
    if set(current.edges) != set(chain.edges) or current.kind != chain.kind:
        raise StaleChain("chain no longer matches the coloring")


def swap_chain(pc: PartialEdgeColoring, chain: KempeChain) -> PartialEdgeColoring:
    """Kempe change: interchange the two colors along a full component."""
    _verify_component(pc, chain)
    alpha, beta = sorted(chain.colors)
    out = pc.clone()
    for e in chain.edges:
        out._set(e, beta if pc.assignment[e] == alpha else alpha)
    return out


def swap_subchain(
    pc: PartialEdgeColoring, chain: KempeChain, x: int, y: int
) -> PartialEdgeColoring:
    """Swap colors only between x and y on a path component.

    Cutting at an interior vertex can leave that vertex conflicted; the
    caller re-establishes properness.  Inspect ``conflicted_vertices()``
    on the result.
    """
    if chain.kind != "path":
        raise VerticesNotOnChain("subchain swap requires a path component")
    _verify_component(pc, chain)
    if x not in chain.vertices or y not in chain.vertices:
        raise VerticesNotOnChain(f"{x} or {y} not on chain")
    i, j = sorted((chain.vertices.index(x), chain.vertices.index(y)))
    alpha, beta = sorted(chain.colors)
    out = pc.clone()
    for e in chain.edges[i:j]:
        out._set(e, beta if pc.assignment[e] == alpha else alpha)
    return out


def shift(
    pc: PartialEdgeColoring, r: int, leaves: Sequence[int]
) -> PartialEdgeColoring:
    """Replace each fan edge's color with its leaf's missing color, in order.

    Each leaf must be adjacent to r via a colored edge and miss exactly one
    color.  Conflicts at r may occur transiently (they always do when
    shifting a rotation); the final state must be proper at r, otherwise
    ShiftConflict is raised.  The empty sequence is the identity.
    """
    out = pc.clone()
    for s in leaves:
        e = _normalize_edge(r, s)
        if out.assignment.get(e) is None:
            raise ShiftConflict(f"edge {e} is not colored")
        target = out.missing(s)
        if len(target) != 1:
            raise ShiftConflict(f"leaf {s} misses {sorted(target)}, expected one")
        out._set(e, next(iter(target)))
    if any(count > 1 for count in out._counts[r][1:]):
        raise ShiftConflict(f"shift left a conflict at {r}")
    return out


# -- operation scripts ---------------------------------------------------


@dataclass(frozen=True)
class ScriptStep:
    """One recorded script step: the action applied and the edit summary."""

    index: int
    action: tuple
    proper_after: bool


@dataclass
class ScriptResult:
    coloring: PartialEdgeColoring
    trace: list[ScriptStep] = field(default_factory=list)


def apply_script(pc: PartialEdgeColoring, script: Iterable[tuple]) -> ScriptResult:
    """Apply a left-to-right sequence of recoloring actions.

    Actions are tuples:

    * ``("swap", x, alpha, beta)`` - Kempe change on the component of x
    * ``("swap_sub", x, y, alpha, beta)`` - subchain swap between x and y
    * ``("shift", r, (s, ...))`` - shift along the given leaves
    * ``("recolor", u, v, old, new)`` - single-edge recoloring
    * ``("uncolor", u, v)`` - designate the edge as the uncolored one
    * ``("color", u, v, c)`` - color the currently uncolored edge

    The first failing action aborts with its error, annotated with the
    step index.
    """
    cur = pc.clone()
    trace: list[ScriptStep] = []
    for index, action in enumerate(script):
        try:
            op = action[0]
            if op == "swap":
                _, x, alpha, beta = action
                cur = swap_chain(cur, chain_through(cur, x, alpha, beta))
            elif op == "swap_sub":
                _, x, y, alpha, beta = action
                cur = swap_subchain(cur, chain_through(cur, x, alpha, beta), x, y)
            elif op == "shift":
                _, r, leaves = action
                cur = shift(cur, r, leaves)
            elif op == "recolor":
                _, u, v, old, new = action
                e = _normalize_edge(u, v)
                if cur.assignment.get(e) != old:
                    raise ImproperInput(
                        f"edge {e} carries {cur.assignment.get(e)}, not {old}"
                    )
                cur = cur.clone()
                cur._set(e, new)
            elif op == "uncolor":
                _, u, v = action
                e = _normalize_edge(u, v)
                if cur.uncolored is not None:
                    raise ImproperInput("another edge is already uncolored")
                if e not in cur.assignment:
                    raise ImproperInput(f"edge {e} is not colored")
                cur = cur.clone()
                cur._unset(e)
                cur.uncolored = e
            elif op == "color":
                _, u, v, c = action
                e = _normalize_edge(u, v)
                if cur.uncolored != e:
                    raise ImproperInput(f"edge {e} is not the uncolored edge")
                cur = cur.clone()
                cur._set(e, c)
                cur.uncolored = None
            else:
                raise ValueError(f"unknown action {op!r}")
        except Exception as exc:
            exc.args = (f"step {index}: {exc}",)
            raise
        trace.append(ScriptStep(index, action, cur.proper))
    return ScriptResult(cur, trace)
