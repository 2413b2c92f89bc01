"""Class 1 / Class 2 decisions for graphs whose core has maximum degree
at most 2, plus the overfull witness family and optimal coloring.

The decision rule: for maximum degree at least 4 such a connected graph
is Class 2 exactly when it is overfull; for maximum degree 3 the single
extra exception is the Petersen graph with one vertex removed; maximum
degree 2 means a cycle decision, and maximum degree at most 1 is always
Class 1.  Every verdict ships a witness: an optimal coloring for Class 1,
an overfull vertex set or the known exception for Class 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from . import canon
from .coloring import PartialEdgeColoring
from .errors import (
    DescentBudgetExceeded,
    InvalidParams,
    NotCandidate,
    OracleTimeout,
)
from .graphs import (
    Graph,
    core,
    density,
    is_connected,
    is_overfull,
    max_degree,
)
from .oracle import DEFAULT_BUDGET, chromatic_index_exact
from .vizing import color_delta_plus_one, try_insert


# -- fixtures ------------------------------------------------------------


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def petersen_minus() -> Graph:
    """The Petersen graph with one vertex removed (vertex-transitive, so
    the choice does not matter)."""
    return petersen().remove_vertex(9)


def is_petersen_minus(g: Graph) -> bool:
    return g.n == 9 and g.m == 12 and canon.are_isomorphic(g, petersen_minus())


# -- candidate recognition -----------------------------------------------


@dataclass(frozen=True)
class CandidateDiagnostics:
    ok: bool
    connected: bool
    delta: int
    core_max_degree: Optional[int]
    reason: Optional[str]


def candidate_diagnostics(g: Graph) -> CandidateDiagnostics:
    """Whether the classification rule applies: connected, with a core of
    maximum degree at most 2."""
    conn = is_connected(g)
    delta = max_degree(g)
    if g.n == 0 or not g.edges:
        return CandidateDiagnostics(False, conn, delta, None, "no edges")
    core_g, _ = core(g)
    cd = max_degree(core_g)
    if not conn:
        return CandidateDiagnostics(False, False, delta, cd, "not connected")
    if cd > 2:
        return CandidateDiagnostics(
            False, True, delta, cd, f"core has maximum degree {cd}"
        )
    return CandidateDiagnostics(True, True, delta, cd, None)


def is_hz_candidate(g: Graph) -> bool:
    return candidate_diagnostics(g).ok


# -- classification ------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    delta: int
    core_max_degree: int
    chromatic_class: int  # 1 or 2
    chromatic_index: int
    witness: dict
    coloring: Optional[dict]

    def to_json_dict(self) -> dict:
        return {
            "delta": self.delta,
            "core_max_degree": self.core_max_degree,
            "class": self.chromatic_class,
            "chromatic_index": self.chromatic_index,
            "witness": self.witness,
            "coloring": (
                None
                if self.coloring is None
                else sorted([u, v, c] for (u, v), c in self.coloring.items())
            ),
        }


def classify(g: Graph, with_coloring: bool = True) -> ClassificationReport:
    """Decide Class 1 or Class 2 for a candidate graph, with a witness.

    Raises NotCandidate when the rule does not apply (disconnected, no
    edges, or core maximum degree above 2).
    """
    diag = candidate_diagnostics(g)
    if not diag.ok:
        raise NotCandidate(diag.reason or "not a candidate")
    delta = diag.delta
    cd = diag.core_max_degree

    def report(cls: int, witness: dict) -> ClassificationReport:
        chi = delta + (cls - 1)
        coloring = None
        if with_coloring:
            coloring = color_optimal(g, known_chromatic_index=chi).coloring
        return ClassificationReport(delta, cd, cls, chi, witness, coloring)

    if delta <= 1:
        return report(1, {"kind": "trivial"})
    if delta == 2:
        # connected with Delta = 2: a path or a cycle
        odd_cycle = g.m == g.n and g.n % 2 == 1
        if odd_cycle:
            return report(2, {"kind": "odd_cycle", "vertices": list(range(g.n))})
        return report(1, {"kind": "even_cycle_or_path"})
    if is_overfull(g):
        dens = density(g)
        return report(
            2,
            {
                "kind": "overfull",
                "edges": g.m,
                "bound": delta * (g.n // 2),
                "witness_set": list(dens.witness),
            },
        )
    if delta == 3 and is_petersen_minus(g):
        return report(2, {"kind": "petersen_minus"})
    return report(1, {"kind": "not_overfull"})


# -- the overfull family -------------------------------------------------


@dataclass(frozen=True)
class OdeltaParams:
    """Parameters of the bipartite-plus-regular overfull construction."""

    delta: int
    n1: int

    @property
    def n2(self) -> int:
        return self.delta - 2

    def validate(self) -> None:
        if self.delta < 4:
            raise InvalidParams("delta must be at least 4")
        if not 3 <= self.n1 <= self.delta - 1:
            raise InvalidParams(
                f"n1 must lie in [3, {self.delta - 1}], got {self.n1}"
            )
        if (self.n1 + self.n2) % 2 == 0:
            raise InvalidParams("n1 + n2 must be odd")


def valid_odelta_params(delta: int) -> list[OdeltaParams]:
    out = []
    for n1 in range(3, delta):
        p = OdeltaParams(delta, n1)
        try:
            p.validate()
        except InvalidParams:
            continue
        out.append(p)
    return out


def _circulant_edges(offset: int, n: int, connections: list) -> list:
    edges = set()
    for i in range(n):
        for d in connections:
            j = (i + d) % n
            if i != j:
                edges.add((offset + min(i, j), offset + max(i, j)))
    return sorted(edges)


def _regular_circulant(offset: int, n: int, degree: int) -> list:
    """Edge list of a degree-regular circulant on n vertices."""
    if degree >= n or degree < 0 or (degree * n) % 2:
        raise InvalidParams(f"no {degree}-regular graph on {n} vertices")
    connections = list(range(1, degree // 2 + 1))
    if degree % 2:
        connections.append(n // 2)  # n even here, the antipodal matching
    edges = _circulant_edges(offset, n, connections)
    if len(edges) != degree * n // 2:
        raise InvalidParams(f"circulant is not {degree}-regular on {n} vertices")
    return edges


def gen_odelta(delta: int, n1: int) -> Graph:
    """Overfull family member: complete bipartite K_{n1, delta-2} with a
    2-regular graph added on the first side and a (delta-1-n1)-regular
    circulant on the second.

    First-side vertices are 0..n1-1 (degree delta, the core), second-side
    vertices n1..n1+delta-3 (degree delta-1).
    """
    params = OdeltaParams(delta, n1)
    params.validate()
    n2 = params.n2
    edges = [(i, n1 + j) for i in range(n1) for j in range(n2)]
    edges += _regular_circulant(0, n1, 2)
    extra = delta - 1 - n1
    if extra:
        edges += _regular_circulant(n1, n2, extra)
    g = Graph.from_edges(n1 + n2, edges)

    # the construction promises all of this; verify rather than trust
    if not is_connected(g):
        raise InvalidParams("construction produced a disconnected graph")
    if max_degree(g) != delta:
        raise InvalidParams("construction has wrong maximum degree")
    for v in range(n1):
        if g.degree(v) != delta:
            raise InvalidParams("first side is not delta-regular")
    for v in range(n1, n1 + n2):
        if g.degree(v) != delta - 1:
            raise InvalidParams("second side is not (delta-1)-regular")
    core_g, _ = core(g)
    if max_degree(core_g) != 2 or any(core_g.degree(v) != 2 for v in range(core_g.n)):
        raise InvalidParams("core is not 2-regular")
    if (n1 + n2) % 2 == 0 or not is_overfull(g):
        raise InvalidParams("construction is not overfull of odd order")
    return g


# -- Kempe descent and optimal coloring ----------------------------------


@dataclass
class DescentStats:
    succeeded: bool
    restarts_used: int
    insertions: int
    budget: int
    residual_edges: list = field(default_factory=list)


@dataclass
class OptimalColoring:
    coloring: dict
    colors_used: int
    chromatic_index: int
    method: str  # "vizing" | "descent" | "oracle"
    descent: Optional[DescentStats] = None


def kempe_descent(
    g: Graph,
    coloring: dict,
    seed: int = 0,
    budget_factor: int = 200,
    restarts: int = 8,
) -> tuple[Optional[dict], DescentStats]:
    """Try to compress a Delta+1 coloring into Delta colors.

    Uncolors the smallest color class's edges, then reinserts each over
    the Delta palette with fan and chain steps; random Kempe kicks and
    restarts with permuted classes keep it from cycling.  Restart 0 is
    fully deterministic.  Returns (Delta-coloring | None, stats).
    """
    delta = max_degree(g)
    budget = budget_factor * max(1, g.m)
    stats = DescentStats(False, 0, 0, budget)
    classes: dict[int, list] = {}
    for e, c in coloring.items():
        classes.setdefault(c, []).append(e)
    if len(classes) <= delta:
        packed = _repack(coloring, delta)
        stats.succeeded = True
        return packed, stats

    for restart in range(restarts):
        stats.restarts_used = restart + 1
        rng = random.Random(seed * 7919 + restart)
        order = sorted(classes, key=lambda c: (len(classes[c]), c))
        if restart:
            order = list(classes)
            rng.shuffle(order)
        drop = order[0]
        keep_map = {c: i + 1 for i, c in enumerate(x for x in sorted(classes) if x != drop)}
        assignment = {
            e: keep_map[c] for e, c in coloring.items() if c != drop
        }
        pending = sorted(classes[drop])
        ops = 0
        progress = True
        while pending and ops < budget:
            e = pending.pop(0)
            sub = Graph.from_edges(g.n, set(list(assignment) + [e]))
            pc = PartialEdgeColoring(sub, delta, assignment, uncolored=e)
            ok = try_insert(pc, e)
            ops += 1
            stats.insertions += 1
            assignment = {k: v for k, v in pc.assignment.items()}
            if not ok:
                # random kick: swap a chain elsewhere and retry later
                from .coloring import chain_through, swap_chain

                a = rng.randrange(1, delta + 1)
                b = rng.randrange(1, delta)
                if b >= a:
                    b += 1
                v = rng.randrange(g.n)
                chain = chain_through(pc, v, a, b)
                if chain.edges:
                    pc2 = swap_chain(pc, chain)
                    assignment = dict(pc2.assignment)
                pending.append(e)
                ops += 1
                if ops >= budget:
                    break
        if not pending:
            full = PartialEdgeColoring(g, delta, assignment)
            full.check()
            stats.succeeded = True
            return dict(full.assignment), stats
        stats.residual_edges = list(pending)
    return None, stats


def _repack(coloring: dict, k: int) -> dict:
    used = sorted(set(coloring.values()))
    remap = {c: i + 1 for i, c in enumerate(used)}
    out = {e: remap[c] for e, c in coloring.items()}
    assert len(used) <= k
    return out


def color_optimal(
    g: Graph,
    seed: int = 0,
    known_chromatic_index: Optional[int] = None,
    allow_oracle: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> OptimalColoring:
    """Proper edge coloring with exactly chi' colors.

    Computes chi' (classification rule when known, exact search
    otherwise), colors with Delta+1 colors, and runs the Kempe descent
    when chi' = Delta.  Falls back to the exhaustive search when the
    descent stalls; with allow_oracle False the stall raises
    DescentBudgetExceeded instead.
    """
    delta = max_degree(g)
    if not g.edges:
        return OptimalColoring({}, 0, 0, "vizing")
    chi = known_chromatic_index
    if chi is None:
        result = chromatic_index_exact(g, budget)
        if result.timed_out:
            raise OracleTimeout(
                result.lower_bound, result.upper_bound, result.nodes_explored
            )
        chi = result.chromatic_index
    base = color_delta_plus_one(g)
    if chi == delta + 1:
        return OptimalColoring(base.coloring, base.colors_used, chi, "vizing")
    if base.colors_used <= delta:
        return OptimalColoring(_repack(base.coloring, delta), base.colors_used, chi, "vizing")
    compressed, stats = kempe_descent(g, base.coloring, seed=seed)
    if compressed is not None:
        return OptimalColoring(compressed, delta, chi, "descent", stats)
    if not allow_oracle:
        raise DescentBudgetExceeded(
            f"descent stalled with {len(stats.residual_edges)} residual edges"
        )
    from .oracle import find_edge_coloring

    coloring, _, timed_out = find_edge_coloring(g, delta, budget)
    if coloring is None:
        raise OracleTimeout(delta, delta + 1, 0) if timed_out else AssertionError(
            "chi' says a Delta-coloring exists but the search found none"
        )
    return OptimalColoring(dict(coloring), delta, chi, "oracle", stats)
