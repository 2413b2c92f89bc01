"""Property checks binding the structural lemmas to concrete instances.

Each check takes a graph, gates on the lemma's hypotheses via the exact
oracle (NotApplicable is a distinct verdict from pass, never a silent
green), and tests the statement over base colorings plus seeded Kempe
perturbations.  Failures carry a replayable payload: the serialized
graph, palette, uncolored edge, and full coloring.

Since all checked statements are proven theorems, any failure is an
implementation bug somewhere in this package.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import fans
from .classify import is_hz_candidate
from .coloring import PartialEdgeColoring, chain_through, linked, segment_from
from .errors import CertificateUnavailable, NoSegment
from .formats import to_graph6
from .graphs import Graph, max_degree, _normalize_edge
from .oracle import (
    DEFAULT_BUDGET,
    chromatic_index_exact,
    is_critical_edge,
    is_delta_critical,
)


@dataclass(frozen=True)
class HarnessConfig:
    perturbations: int = 16
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    max_centers: int = 2  # centers examined per graph in the pseudo check
    stable_samples: int = 16  # sampled stable colorings behind elementarity


DEFAULT_CONFIG = HarnessConfig()


@dataclass
class CheckReport:
    check_id: str
    verdict: str  # "pass" | "fail" | "not_applicable"
    instances: int = 0
    failures: list = field(default_factory=list)
    detail: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.verdict != "fail"

    def to_json_dict(self) -> dict:
        return {
            "check": self.check_id,
            "verdict": self.verdict,
            "instances": self.instances,
            "failures": self.failures,
            "detail": self.detail,
        }


def _payload(pc: PartialEdgeColoring, **extra) -> dict:
    """Replayable counterexample payload."""
    out = {
        "graph6": to_graph6(pc.graph),
        "k": pc.k,
        "uncolored": list(pc.uncolored) if pc.uncolored else None,
        "coloring": sorted([u, v, c] for (u, v), c in pc.assignment.items()),
    }
    out.update(extra)
    return out


def _finish(report: CheckReport) -> CheckReport:
    if report.verdict == "":
        report.verdict = "fail" if report.failures else "pass"
    return report


def _colorings(g: Graph, e: tuple, cfg: HarnessConfig) -> Iterator[PartialEdgeColoring]:
    delta = max_degree(g)
    yield from fans.colorings_without_edge(
        g, delta, e, cfg.perturbations, cfg.seed, budget=cfg.budget
    )


# -- Vizing's adjacency count --------------------------------------------


def check_val(g: Graph, cfg: HarnessConfig = DEFAULT_CONFIG) -> CheckReport:
    """At a critical edge xy, x has at least Delta - d(y) + 1 neighbors of
    degree Delta besides y."""
    report = CheckReport("val", "")
    delta = max_degree(g)
    result = chromatic_index_exact(g, cfg.budget)
    if result.chromatic_index != delta + 1:
        return CheckReport("val", "not_applicable", detail="not Class 2")
    for e in g.edges:
        if not is_critical_edge(g, e, cfg.budget):
            continue
        for x, y in (e, tuple(reversed(e))):
            need = delta - g.degree(y) + 1
            have = sum(
                1 for w in g.neighbors(x) if w != y and g.degree(w) == delta
            )
            report.instances += 1
            if have < need:
                report.failures.append(
                    {
                        "graph6": to_graph6(g),
                        "edge": [x, y],
                        "delta_neighbors": have,
                        "required": need,
                    }
                )
    return _finish(report)


# -- multifan lemmas -----------------------------------------------------


def _check_one_multifan(
    pc: PartialEdgeColoring, r: int, s1: int, report: CheckReport
) -> None:
    fan = fans.grow_multifan(pc, r, s1)
    leaves = fan.leaves

    # elementarity of the fan vertex set
    report.instances += 1
    violation = fans.elementary_violation(pc, fan.vertices)
    if violation is not None:
        report.failures.append(
            _payload(pc, check="elementary", fan=list(fan.vertices), shared=list(violation))
        )
        return

    # center linked to every leaf through every missing pair
    for alpha in pc.missing(r):
        for s in leaves:
            for beta in pc.missing(s):
                report.instances += 1
                if not linked(pc, r, s, alpha, beta):
                    report.failures.append(
                        _payload(pc, check="linked", pair=[r, s], colors=[alpha, beta])
                    )

    dec = fans.inducing_structure(pc, fan)
    for i, si in enumerate(leaves):
        for j, sj in enumerate(leaves):
            if i == j:
                continue
            for delta_c in pc.missing(si):
                for lam in pc.missing(sj):
                    if delta_c == lam:
                        continue
                    same = dec.inducing[delta_c] == dec.inducing[lam]
                    if not same:
                        # different inducing colors: hosts must be linked
                        report.instances += 1
                        if not linked(pc, si, sj, delta_c, lam):
                            report.failures.append(
                                _payload(
                                    pc,
                                    check="cross_linked",
                                    pair=[si, sj],
                                    colors=[delta_c, lam],
                                )
                            )
                    elif dec.precedes(delta_c, lam) and not linked(
                        pc, si, sj, delta_c, lam
                    ):
                        # same inducing color, earlier-unlinked: the later
                        # host's chain must pass through the center
                        report.instances += 1
                        chain = chain_through(pc, sj, delta_c, lam)
                        if r not in chain.vertices:
                            report.failures.append(
                                _payload(
                                    pc,
                                    check="unlinked_through_center",
                                    pair=[si, sj],
                                    colors=[delta_c, lam],
                                )
                            )


def check_multifan_lemmas(
    g: Graph, cfg: HarnessConfig = DEFAULT_CONFIG
) -> CheckReport:
    """Fan elementarity, center linkage, and the two induced-color chain
    statements, over every edge, orientation, and coloring family."""
    report = CheckReport("multifan", "")
    if not is_delta_critical(g, cfg.budget):
        return CheckReport("multifan", "not_applicable", detail="not Delta-critical")
    for e in g.edges:
        for pc in _colorings(g, e, cfg):
            for r, s1 in (e, tuple(reversed(e))):
                _check_one_multifan(pc, r, s1, report)
    return _finish(report)


# -- Kierstead paths -----------------------------------------------------


def check_kierstead(g: Graph, cfg: HarnessConfig = DEFAULT_CONFIG) -> CheckReport:
    """Elementarity and end-linkage of 4-vertex Kierstead paths whose two
    far vertices have degree below Delta."""
    report = CheckReport("kierstead", "")
    if not is_delta_critical(g, cfg.budget):
        return CheckReport("kierstead", "not_applicable", detail="not Delta-critical")
    delta = max_degree(g)
    for e in g.edges:
        for pc in _colorings(g, e, cfg):
            for path in fans.kierstead_paths(pc, e):
                v0, v1, v2, v3 = path.vertices
                if max(g.degree(v2), g.degree(v3)) >= delta:
                    continue
                report.instances += 1
                if not fans.is_elementary(pc, path.vertices):
                    report.failures.append(
                        _payload(pc, check="elementary", path=list(path.vertices))
                    )
                    continue
                banned = {pc.color_of(v1, v2), pc.color_of(v2, v3)}
                for alpha in pc.missing(v0) - banned:
                    for delta_c in pc.missing(v3):
                        report.instances += 1
                        if not linked(pc, v3, v0, delta_c, alpha):
                            report.failures.append(
                                _payload(
                                    pc,
                                    check="linked",
                                    path=list(path.vertices),
                                    colors=[delta_c, alpha],
                                )
                            )
    return _finish(report)


# -- pseudo-multifan rotations -------------------------------------------


def _stable_under(
    base: PartialEdgeColoring, other: PartialEdgeColoring, fan: fans.Multifan
) -> bool:
    """F-stable: same colors on fan edges, same missing sets on fan vertices."""
    r = fan.center
    for s in fan.leaves:
        if other.color_of(r, s) != base.color_of(r, s):
            return False
    return all(other.missing(v) == base.missing(v) for v in fan.vertices)


def _certified_pseudo(
    g: Graph, r: int, cfg: HarnessConfig
) -> tuple[fans.PseudoMultifan, PartialEdgeColoring]:
    """Maximum multifan at r extended by the remaining small neighbors,
    with sampled evidence that elementarity survives stable recolorings."""
    delta = max_degree(g)
    small = sorted(s for s in g.neighbors(r) if g.degree(s) == delta - 1)
    base = None
    max_size = 0
    for s in small:
        for pc in fans.colorings_without_edge(
            g, delta, (r, s), cfg.perturbations, cfg.seed, budget=cfg.budget
        ):
            fan = fans.grow_multifan(pc, r, s, hz=True)
            max_size = max(max_size, len(fan.vertices))
            extras = tuple(x for x in small if x not in fan.leaves)
            pm = fans.PseudoMultifan(fan, extras)
            if fans.is_elementary(pc, pm.vertices):
                if base is None or len(fan.vertices) > len(base[0].fan.vertices):
                    base = (pm, pc)
    if base is None:
        raise CertificateUnavailable(f"no elementary pseudo-multifan found at {r}")
    if len(base[0].fan.vertices) < max_size:
        # a larger fan exists elsewhere, so this one is not maximum
        raise CertificateUnavailable(
            f"elementary extension only exists for a non-maximum fan at {r}"
        )
    pm, pc = base
    # elementarity must survive fan-stable recolorings; sample a few
    rng = random.Random(cfg.seed)
    cur = pc
    for _ in range(cfg.stable_samples):
        cur = fans.random_kempe_perturbation(cur, rng)
        if _stable_under(pc, cur, pm.fan) and not fans.is_elementary(
            cur, pm.vertices
        ):
            raise CertificateUnavailable(
                f"stability sample broke elementarity at {r}"
            )
    return pm, pc


def check_pseudo_rotations(
    g: Graph, cfg: HarnessConfig = DEFAULT_CONFIG
) -> CheckReport:
    """Rotation partition and the chain statements for pseudo-missing
    colors, at up to max_centers maximum-degree vertices."""
    report = CheckReport("pseudo_rotations", "")
    delta = max_degree(g)
    if not is_hz_candidate(g) or delta < 3:
        return CheckReport("pseudo_rotations", "not_applicable", detail="not a candidate")
    result = chromatic_index_exact(g, cfg.budget)
    if result.chromatic_index != delta + 1:
        return CheckReport("pseudo_rotations", "not_applicable", detail="Class 1")
    centers = [v for v in range(g.n) if g.degree(v) == delta]
    for r in centers[: cfg.max_centers]:
        pm, pc = _certified_pseudo(g, r, cfg)
        _check_pseudo_at(pc, pm, report)
    return _finish(report)


def _check_pseudo_at(
    pc: PartialEdgeColoring, pm: fans.PseudoMultifan, report: CheckReport
) -> None:
    r = pm.fan.center
    if not pm.extras:
        report.instances += 1  # vacuous pass
        return

    # (a) the extra leaves partition into rotations
    report.instances += 1
    try:
        fans.decompose_rotations(pm, pc)
    except Exception as exc:
        report.failures.append(
            _payload(pc, check="rotation_partition", extras=list(pm.extras), error=str(exc))
        )
        return

    c1 = pc.the_missing(r)
    fan_missing = {}  # color -> fan vertex missing it (center excluded)
    for v in pm.fan.leaves:
        for c in pc.missing(v):
            fan_missing[c] = v
    extra_missing = {}  # pseudo-missing color -> extra leaf
    for v in pm.extras:
        extra_missing[pc.the_missing(v)] = v

    for delta_c, sj in extra_missing.items():
        # (b) linked to the center through its missing color
        report.instances += 1
        if not linked(pc, sj, r, delta_c, c1):
            report.failures.append(
                _payload(pc, check="linked_center", leaf=sj, colors=[delta_c, c1])
            )

        # (c) chains to fan missing colors pass z, then r
        for gamma, y in fan_missing.items():
            if gamma == delta_c:
                continue
            report.instances += 1
            chain = chain_through(pc, y, delta_c, gamma)
            z = pc.neighbor_via(r, gamma)
            ok = r in chain.vertices and sj in chain.vertices
            if ok and z is not None:
                try:
                    seg = segment_from(pc, y, delta_c, gamma)
                    order = seg.vertices
                    ok = (
                        z in order
                        and r in order
                        and order.index(z) < order.index(r)
                    )
                except NoSegment:
                    ok = False
            if not ok:
                report.failures.append(
                    _payload(
                        pc,
                        check="fan_color_chain",
                        leaf=sj,
                        colors=[delta_c, gamma],
                        fan_vertex=y,
                    )
                )

        # (d) chains between pseudo-missing colors
        for delta_star, y in extra_missing.items():
            if delta_star == delta_c:
                continue
            report.instances += 1
            chain = chain_through(pc, y, delta_c, delta_star)
            same = sj in chain.vertices
            through_r = r in chain.vertices
            r_cycle = chain_through(pc, r, delta_c, delta_star).kind == "cycle"
            if not (same and (through_r or r_cycle)):
                report.failures.append(
                    _payload(
                        pc,
                        check="pseudo_color_chain",
                        leaf=sj,
                        colors=[delta_c, delta_star],
                        other=y,
                    )
                )


# -- adjacency theorems --------------------------------------------------


def check_adjacency_theorems(
    g: Graph, cfg: HarnessConfig = DEFAULT_CONFIG
) -> CheckReport:
    """Neighborhood identities of Class 2 graphs with a small core: equal
    small neighborhoods on adjacent max-degree vertices, equal large
    neighborhoods on adjacent (Delta-1)-vertices, and the Delta-3
    intersection size for non-adjacent max-degree vertices (Delta >= 7)."""
    report = CheckReport("adjacency", "")
    delta = max_degree(g)
    if not is_hz_candidate(g) or delta < 4:
        return CheckReport("adjacency", "not_applicable", detail="hypothesis gate")
    result = chromatic_index_exact(g, cfg.budget)
    if result.chromatic_index != delta + 1:
        return CheckReport("adjacency", "not_applicable", detail="Class 1")
    v_delta = [v for v in range(g.n) if g.degree(v) == delta]
    v_small = [v for v in range(g.n) if g.degree(v) == delta - 1]

    def small_nbrs(v):
        return {w for w in g.neighbors(v) if g.degree(w) == delta - 1}

    def big_nbrs(v):
        return {w for w in g.neighbors(v) if g.degree(w) == delta}

    for i, u in enumerate(v_delta):
        for v in v_delta[i + 1 :]:
            if g.has_edge(u, v):
                report.instances += 1
                if small_nbrs(u) != small_nbrs(v):
                    report.failures.append(
                        {"graph6": to_graph6(g), "check": "adjacent_delta", "pair": [u, v]}
                    )
            elif delta >= 7:
                a, b = small_nbrs(u), small_nbrs(v)
                if a != b and a & b:
                    report.instances += 1
                    if len(a & b) != delta - 3:
                        report.failures.append(
                            {
                                "graph6": to_graph6(g),
                                "check": "nonadjacent_delta",
                                "pair": [u, v],
                                "intersection": len(a & b),
                            }
                        )
    for i, x in enumerate(v_small):
        for y in v_small[i + 1 :]:
            if g.has_edge(x, y):
                report.instances += 1
                if big_nbrs(x) != big_nbrs(y):
                    report.failures.append(
                        {"graph6": to_graph6(g), "check": "adjacent_small", "pair": [x, y]}
                    )
    return _finish(report)


# -- suite driver --------------------------------------------------------


def run_suite(
    graphs: list, cfg: HarnessConfig = DEFAULT_CONFIG, checks: Optional[list] = None
) -> list:
    """Run the named checks over the graphs; returns (graph6, CheckReport)
    pairs in deterministic order."""
    table = {
        "val": check_val,
        "multifan": check_multifan_lemmas,
        "kierstead": check_kierstead,
        "pseudo_rotations": check_pseudo_rotations,
        "adjacency": check_adjacency_theorems,
    }
    selected = checks or list(table)
    out = []
    for g in graphs:
        for name in selected:
            out.append((to_graph6(g), table[name](g, cfg)))
    return out
