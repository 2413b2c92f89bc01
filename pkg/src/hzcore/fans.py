"""Structural witnesses around an uncolored edge.

Multifans, their typical normal form and inducing sequences, Kierstead
paths, pseudo-multifans with rotations, and lollipops.  Builders are
greedy with deterministic tie-breaks (lowest color, then lowest vertex
id), so every construction is reproducible.

Degree conventions: in "HZ mode" the palette size k equals the maximum
degree Delta, the fan center has degree Delta and every leaf degree
Delta-1, so each leaf misses exactly one color and the center misses
exactly one color while the first edge is uncolored.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .coloring import PartialEdgeColoring, chain_through, swap_chain
from .errors import (
    NotElementary,
    NotHzFan,
    PreconditionFailed,
)
from .graphs import Graph, _normalize_edge


# -- elementarity --------------------------------------------------------


def elementary_violation(
    pc: PartialEdgeColoring, vertices: Iterable[int]
) -> Optional[tuple[int, int, int]]:
    """First (u, v, color) with a shared missing color, or None."""
    vs = sorted(set(vertices))
    missing = {v: pc.missing(v) for v in vs}
    for i, u in enumerate(vs):
        for v in vs[i + 1 :]:
            shared = missing[u] & missing[v]
            if shared:
                return (u, v, min(shared))
    return None


def is_elementary(pc: PartialEdgeColoring, vertices: Iterable[int]) -> bool:
    return elementary_violation(pc, vertices) is None


# -- multifans -----------------------------------------------------------


@dataclass(frozen=True)
class Multifan:
    """Fan-shaped witness at a center r; the first edge r s_1 is uncolored."""

    center: int
    leaves: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.center,) + self.leaves


def validate_multifan(pc: PartialEdgeColoring, fan: Multifan, hz: bool = False) -> None:
    """Check distinctness and the fan condition; raises on violation."""
    r = fan.center
    if len(set(fan.vertices)) != len(fan.vertices):
        raise PreconditionFailed("fan vertices not distinct")
    if pc.uncolored != _normalize_edge(r, fan.leaves[0]):
        raise PreconditionFailed("uncolored edge is not r s_1")
    for i, s in enumerate(fan.leaves):
        if not pc.graph.has_edge(r, s):
            raise PreconditionFailed(f"{s} not adjacent to center {r}")
        if i == 0:
            continue
        c = pc.color_of(r, s)
        if c is None:
            raise PreconditionFailed(f"edge r s_{i + 1} uncolored")
        if not any(c in pc.missing(fan.leaves[j]) for j in range(i)):
            raise PreconditionFailed(f"fan condition fails at leaf {s}")
    if hz:
        delta = pc.k
        if pc.graph.degree(r) != delta:
            raise NotHzFan(f"center degree {pc.graph.degree(r)} != {delta}")
        for s in fan.leaves:
            if pc.graph.degree(s) != delta - 1:
                raise NotHzFan(f"leaf {s} has degree {pc.graph.degree(s)}")


def grow_multifan(
    pc: PartialEdgeColoring, r: int, s1: int, hz: bool = False
) -> Multifan:
    """Inclusion-maximal greedy multifan at r starting from the uncolored
    edge r s_1."""
    if pc.uncolored != _normalize_edge(r, s1):
        raise PreconditionFailed("uncolored edge is not r s_1")
    delta = pc.k
    leaves = [s1]
    in_fan = {s1}
    candidates = []
    for w in pc.graph.neighbors(r):
        if w == s1:
            continue
        if hz and pc.graph.degree(w) != delta - 1:
            continue
        c = pc.color_of(r, w)
        if c is not None:
            candidates.append((c, w))
    candidates.sort()
    missing_union = set(pc.missing(s1))
    grown = True
    while grown:
        grown = False
        for c, w in candidates:
            if w in in_fan or c not in missing_union:
                continue
            leaves.append(w)
            in_fan.add(w)
            missing_union |= pc.missing(w)
            grown = True
            break
    return Multifan(r, tuple(leaves))


# -- inducing structure and the typical normal form ----------------------


@dataclass(frozen=True)
class AlphaSequenceDecomposition:
    """Per starting color: its leaf sequence; plus the inducing map and
    the strict precedence order over inducing colors."""

    sequences: dict  # start color -> tuple of leaves
    inducing: dict  # color -> start color that induces it
    precedence: frozenset  # set of (earlier, later) color pairs

    def precedes(self, a: int, b: int) -> bool:
        return (a, b) in self.precedence


def _hz_sequences(pc: PartialEdgeColoring, fan: Multifan) -> dict:
    """Split an HZ multifan's leaves into its (at most two) sequences."""
    r = fan.center
    s1 = fan.leaves[0]
    rest = {s: pc.color_of(r, s) for s in fan.leaves[1:]}
    by_color = {c: s for s, c in rest.items()}
    sequences = {}
    taken = set()
    for start in sorted(pc.missing(s1)):
        seq = []
        color = start
        while color in by_color and by_color[color] not in taken:
            leaf = by_color[color]
            seq.append(leaf)
            taken.add(leaf)
            color = next(iter(pc.missing(leaf)))
        if seq:
            sequences[start] = tuple(seq)
    covered = {s for seq in sequences.values() for s in seq}
    if covered != set(fan.leaves[1:]):
        raise NotHzFan("fan does not decompose into sequences from s_1")
    return sequences


def inducing_structure(pc: PartialEdgeColoring, fan: Multifan) -> AlphaSequenceDecomposition:
    """Inducing decomposition for a general multifan (requires V(F)
    elementary so hosts are unique)."""
    r = fan.center
    leaves = fan.leaves
    host = {}  # leaf index -> host leaf index
    for i in range(1, len(leaves)):
        c = pc.color_of(r, leaves[i])
        js = [j for j in range(i) if c in pc.missing(leaves[j])]
        if len(js) != 1:
            raise NotElementary(f"color {c} hosted by {len(js)} leaves")
        host[i] = js[0]

    sequences: dict[int, list[int]] = {}
    inducing = {}
    for c in sorted(pc.missing(leaves[0])):
        inducing[c] = c
        sequences[c] = []
    chains: dict[int, list[int]] = {}  # leaf index -> ancestor path
    for i in range(1, len(leaves)):
        path = [i]
        j = i
        while host[j] != 0:
            j = host[j]
            path.append(j)
        start = pc.color_of(r, leaves[j])
        chains[i] = list(reversed(path))
        for c in pc.missing(leaves[i]):
            inducing[c] = start
    for start in sequences:
        members = sorted(
            (i for i in range(1, len(leaves)) if pc.color_of(r, leaves[chains[i][0]]) == start),
            key=lambda i: len(chains[i]),
        )
        sequences[start] = tuple(leaves[i] for i in members)
    prec = set()
    colors_at = {i: pc.missing(leaves[i]) for i in range(len(leaves))}
    for i in range(1, len(leaves)):
        start = pc.color_of(r, leaves[chains[i][0]])
        for c in colors_at[i]:
            prec.add((start, c))
            for anc in chains[i][:-1]:
                for d in colors_at[anc]:
                    prec.add((d, c))
    # colors missing at s_1 precede everything they induce
    for c in colors_at[0]:
        for d, s in inducing.items():
            if s == c and d != c:
                prec.add((c, d))
    prec = {(a, b) for a, b in prec if a != b}
    return AlphaSequenceDecomposition(
        {c: tuple(seq) for c, seq in sequences.items()}, inducing, frozenset(prec)
    )


@dataclass(frozen=True)
class NormalizationTrace:
    color_permutation: tuple  # old color -> new color, 1-indexed tuple
    leaf_order: tuple
    restructured: bool  # whether the two-sequence transformation ran


@dataclass(frozen=True)
class TypicalMultifan:
    """Multifan in typical form: missing(r) = {1}, missing(s_1) = {2, Delta},
    edge colors and leaf missing colors follow the canonical pattern."""

    fan: Multifan
    alpha: int
    beta: int
    trace: NormalizationTrace

    @property
    def center(self) -> int:
        return self.fan.center

    @property
    def leaves(self) -> tuple[int, ...]:
        return self.fan.leaves

    def two_inducing_colors(self) -> tuple[int, ...]:
        return tuple(range(2, self.alpha + 2))

    def delta_inducing_colors(self, delta: int) -> tuple[int, ...]:
        if self.beta == self.alpha:
            return ()
        return (delta,) + tuple(range(self.alpha + 3, self.beta + 2))


def _permute_colors(pc: PartialEdgeColoring, perm: dict) -> PartialEdgeColoring:
    out = PartialEdgeColoring(
        pc.graph,
        pc.k,
        {e: perm[c] for e, c in pc.assignment.items()},
        uncolored=pc.uncolored,
    )
    return out


def _typical_permutation(
    pc: PartialEdgeColoring, r: int, ordered: list[int], alpha: int, beta: int
) -> dict:
    """Color permutation making the reordered HZ fan typical."""
    delta = pc.k
    perm = {}
    perm[next(iter(pc.missing(r)))] = 1
    s1 = ordered[0]
    miss1 = sorted(pc.missing(s1))
    if beta >= 2:
        start2 = pc.color_of(r, ordered[1])
        perm[start2] = 2
        other = next(c for c in miss1 if c != start2)
        perm[other] = delta
    else:
        perm[miss1[0]] = 2
        perm[miss1[1]] = delta
    for i in range(2, alpha + 1):  # 2-inducing chain: missing(s_i) -> i+1
        perm[next(iter(pc.missing(ordered[i - 1])))] = i + 1
    if beta > alpha:
        perm[pc.color_of(r, ordered[alpha])] = delta
        for i in range(alpha + 1, beta + 1):
            perm[next(iter(pc.missing(ordered[i - 1])))] = i + 1
    if len(set(perm.values())) != len(perm):
        raise NotHzFan("fan missing-colors collide, cannot make it typical")
    used_targets = set(perm.values())
    free_targets = [c for c in range(1, delta + 1) if c not in used_targets]
    for c in range(1, delta + 1):
        if c not in perm:
            perm[c] = free_targets.pop(0)
    return perm


def validate_typical(pc: PartialEdgeColoring, tf: TypicalMultifan) -> None:
    """Check the typical color pattern; raises NotHzFan on violation."""
    delta = pc.k
    r = tf.center
    leaves = tf.leaves
    alpha, beta = tf.alpha, tf.beta
    ok = (
        pc.missing(r) == {1}
        and pc.missing(leaves[0]) == {2, delta}
        and 1 <= alpha <= beta == len(leaves)
    )
    if ok:
        for i in range(2, beta + 1):
            expect = delta if i == alpha + 1 else i
            if pc.color_of(r, leaves[i - 1]) != expect:
                ok = False
        for i in range(2, beta + 1):
            if pc.missing(leaves[i - 1]) != {i + 1}:
                ok = False
    if not ok:
        raise NotHzFan("coloring does not match the typical pattern")


def normalize_typical(
    fan: Multifan, pc: PartialEdgeColoring
) -> tuple[TypicalMultifan, PartialEdgeColoring]:
    """Relabel colors (and reorder leaves) so the fan is typical.

    Two-sequence fans are additionally restructured into a one-sequence
    typical fan over the same vertex set: the last edge is uncolored, the
    second sequence's colors slide down by one, and the old uncolored
    edge receives the freed color.
    """
    validate_multifan(pc, fan, hz=True)
    return _normalize(fan, pc, allow_restructure=True)


def _normalize(
    fan: Multifan, pc: PartialEdgeColoring, allow_restructure: bool
) -> tuple[TypicalMultifan, PartialEdgeColoring]:
    r = fan.center
    sequences = _hz_sequences(pc, fan)
    seqs = [sequences[c] for c in sorted(sequences)]
    if len(seqs) == 2 and seqs[0][0] > seqs[1][0]:
        seqs.reverse()  # deterministic: 2-inducing sequence led by smaller id
    two_seq = seqs[0] if seqs else ()
    delta_seq = seqs[1] if len(seqs) == 2 else ()
    ordered = [fan.leaves[0], *two_seq, *delta_seq]
    alpha = 1 + len(two_seq)
    beta = 1 + len(two_seq) + len(delta_seq)
    perm = _typical_permutation(pc, r, ordered, alpha, beta)
    out = _permute_colors(pc, perm)
    trace = NormalizationTrace(
        tuple(perm[c] for c in range(1, pc.k + 1)), tuple(ordered), False
    )
    if len(delta_seq) == 0 or not allow_restructure:
        tf = TypicalMultifan(Multifan(r, tuple(ordered)), alpha, beta, trace)
        validate_typical(out, tf)
        return tf, out

    # two sequences: uncolor r s_beta, slide the Delta-inducing colors
    # down, close the old uncolored edge with Delta
    delta = out.k
    work = out.clone()
    e_beta = _normalize_edge(r, ordered[beta - 1])
    work._unset(e_beta)
    work.uncolored = e_beta
    for i in range(alpha + 1, beta):
        work._set(_normalize_edge(r, ordered[i - 1]), i + 1)
    work._set(_normalize_edge(r, ordered[0]), delta)
    new_leaves = (
        [ordered[beta - 1]]
        + [ordered[i - 1] for i in range(beta - 1, alpha, -1)]
        + [ordered[0]]
        + list(ordered[1:alpha])
    )
    new_fan = Multifan(r, tuple(new_leaves))
    work.check()
    validate_multifan(work, new_fan, hz=True)
    tf, final = _normalize(new_fan, work, allow_restructure=False)
    if tf.beta != tf.alpha:
        raise NotHzFan("restructured fan still has two sequences")
    # compose the two color permutations so the trace maps original colors
    perm2 = tf.trace.color_permutation
    composed = tuple(perm2[perm[c] - 1] for c in range(1, pc.k + 1))
    trace = NormalizationTrace(composed, tf.trace.leaf_order, True)
    return TypicalMultifan(tf.fan, tf.alpha, tf.beta, trace), final


def alpha_sequences(tf: TypicalMultifan, pc: PartialEdgeColoring) -> AlphaSequenceDecomposition:
    """Inducing decomposition of a typical multifan.

    The 2-sequence is s_2..s_alpha and the Delta-sequence is
    s_{alpha+1}..s_beta (possibly empty).
    """
    delta = pc.k
    leaves = tf.leaves
    sequences = {
        2: tuple(leaves[1 : tf.alpha]),
        delta: tuple(leaves[tf.alpha : tf.beta]),
    }
    inducing = {2: 2, delta: delta}
    for c in tf.two_inducing_colors():
        inducing[c] = 2
    for c in tf.delta_inducing_colors(delta):
        inducing[c] = delta
    prec = set()
    two_chain = [2] + [next(iter(pc.missing(s))) for s in sequences[2]]
    delta_chain = [delta] + [next(iter(pc.missing(s))) for s in sequences[delta]]
    for chain in (two_chain, delta_chain):
        for i, a in enumerate(chain):
            for b in chain[i + 1 :]:
                prec.add((a, b))
    return AlphaSequenceDecomposition(sequences, inducing, frozenset(prec))


# -- Kierstead paths -----------------------------------------------------


@dataclass(frozen=True)
class KiersteadPath:
    """Path witness v_0..v_p (p <= 3) with v_0 v_1 uncolored."""

    vertices: tuple[int, ...]


def validate_kierstead(pc: PartialEdgeColoring, path: KiersteadPath) -> None:
    vs = path.vertices
    if len(set(vs)) != len(vs):
        raise PreconditionFailed("path vertices not distinct")
    if len(vs) > 4:
        raise PreconditionFailed("paths limited to 4 vertices")
    if pc.uncolored != _normalize_edge(vs[0], vs[1]):
        raise PreconditionFailed("uncolored edge is not v_0 v_1")
    for i in range(2, len(vs)):
        c = pc.color_of(vs[i - 1], vs[i])
        if c is None:
            raise PreconditionFailed(f"edge v_{i - 1} v_{i} uncolored")
        if not any(c in pc.missing(vs[j]) for j in range(i)):
            raise PreconditionFailed(f"path condition fails at v_{i}")


def grow_kierstead(pc: PartialEdgeColoring, e: tuple) -> KiersteadPath:
    """Greedy Kierstead path of at most 4 vertices from the uncolored edge."""
    e = _normalize_edge(*e)
    if pc.uncolored != e:
        raise PreconditionFailed("e is not the uncolored edge")
    vs = [e[0], e[1]]
    while len(vs) < 4:
        tail = vs[-1]
        missing_union = set()
        for v in vs:
            missing_union |= pc.missing(v)
        options = []
        for w in pc.graph.neighbors(tail):
            if w in vs:
                continue
            c = pc.color_of(tail, w)
            if c is not None and c in missing_union:
                options.append((c, w))
        if not options:
            break
        vs.append(min(options)[1])
    return KiersteadPath(tuple(vs))


def kierstead_paths(pc: PartialEdgeColoring, e: tuple) -> list[KiersteadPath]:
    """All 4-vertex Kierstead paths from the uncolored edge (both
    orientations of e)."""
    u, v = _normalize_edge(*e)
    out = []
    for v0, v1 in ((u, v), (v, u)):
        for v2 in pc.graph.neighbors(v1):
            if v2 in (v0, v1):
                continue
            c12 = pc.color_of(v1, v2)
            if c12 is None or c12 not in (pc.missing(v0) | pc.missing(v1)):
                continue
            for v3 in pc.graph.neighbors(v2):
                if v3 in (v0, v1, v2):
                    continue
                c23 = pc.color_of(v2, v3)
                allowed = pc.missing(v0) | pc.missing(v1) | pc.missing(v2)
                if c23 is None or c23 not in allowed:
                    continue
                out.append(KiersteadPath((v0, v1, v2, v3)))
    return out


# -- pseudo-multifans and rotations --------------------------------------


@dataclass(frozen=True)
class Rotation:
    """Cyclic leaf sequence where each edge color equals the previous
    leaf's missing color."""

    leaves: tuple[int, ...]

    @property
    def single(self) -> bool:
        return len(self.leaves) == 1


@dataclass(frozen=True)
class PseudoMultifan:
    fan: Multifan
    extras: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.fan.vertices + self.extras


@dataclass
class MaximumCertificate:
    """Record of the bounded search certifying a fan as maximum."""

    size: int
    start_leaf: int
    alternatives: list  # (start leaf, trial index, fan size)
    coloring: PartialEdgeColoring


def validate_rotation(pc: PartialEdgeColoring, r: int, rotation: Rotation) -> None:
    leaves = rotation.leaves
    if elementary_violation(pc, leaves) is not None:
        raise NotElementary(f"rotation leaves {leaves} not elementary")
    for i, s in enumerate(leaves):
        prev = leaves[i - 1]
        if pc.color_of(r, s) != next(iter(pc.missing(prev))):
            raise PreconditionFailed(f"rotation equation fails at {s}")


def decompose_rotations(
    pm: PseudoMultifan, pc: PartialEdgeColoring
) -> list[Rotation]:
    """Partition the extra leaves into rotations (permutation cycles of
    edge color -> missing color)."""
    if elementary_violation(pc, pm.vertices) is not None:
        raise NotElementary("pseudo-multifan vertex set not elementary")
    r = pm.fan.center
    by_edge_color = {}
    for s in pm.extras:
        by_edge_color[pc.color_of(r, s)] = s
    succ = {}
    for s in pm.extras:
        miss = next(iter(pc.missing(s)))
        if miss not in by_edge_color:
            raise PreconditionFailed(
                f"missing color {miss} at {s} is not an extra-leaf edge color"
            )
        succ[s] = by_edge_color[miss]
    rotations = []
    seen = set()
    for s in sorted(pm.extras):
        if s in seen:
            continue
        cycle = [s]
        seen.add(s)
        t = succ[s]
        while t != s:
            cycle.append(t)
            seen.add(t)
            t = succ[t]
        # successor order already has each edge color equal to the
        # previous leaf's missing color
        rotation = Rotation(tuple(cycle))
        validate_rotation(pc, r, rotation)
        rotations.append(rotation)
    return rotations


def random_kempe_perturbation(
    pc: PartialEdgeColoring, rng: random.Random
) -> PartialEdgeColoring:
    """One random Kempe change; keeps the uncolored edge fixed."""
    k = pc.k
    if k < 2:
        return pc
    alpha = rng.randrange(1, k + 1)
    beta = rng.randrange(1, k)
    if beta >= alpha:
        beta += 1
    v = rng.randrange(pc.graph.n)
    chain = chain_through(pc, v, alpha, beta)
    if not chain.edges:
        return pc
    return swap_chain(pc, chain)


def colorings_without_edge(
    g: Graph, k: int, e: tuple, perturbations: int, seed: int, budget: int = 2_000_000
):
    """Base k-coloring of G - e (if one exists) plus seeded Kempe
    perturbations, each presented with e uncolored."""
    from .oracle import find_edge_coloring

    e = _normalize_edge(*e)
    base, _, timed_out = find_edge_coloring(g.remove_edge(*e), k, budget)
    if base is None or timed_out:
        return
    # removing an edge keeps vertex ids, so the assignment carries over
    pc = PartialEdgeColoring(g, k, dict(base), uncolored=e)
    pc.check()
    yield pc
    rng = random.Random(seed)
    cur = pc
    for _ in range(perturbations):
        cur = random_kempe_perturbation(cur, rng)
        yield cur


def certify_maximum(
    pc: PartialEdgeColoring,
    r: int,
    perturbations: int = 64,
    seed: int = 0,
) -> tuple[Multifan, MaximumCertificate]:
    """Largest multifan at r over all uncolored-edge choices in
    N_{Delta-1}(r) and a seeded family of Kempe-perturbed colorings.

    Maximality is quantified over all colorings, which cannot be searched
    exhaustively; the certificate records every alternative examined, so
    it is evidence rather than proof.
    """
    g = pc.graph
    delta = pc.k
    small = [s for s in g.neighbors(r) if g.degree(s) == delta - 1]
    if not small:
        raise PreconditionFailed(f"no (Delta-1)-neighbor at {r}")
    best: Optional[tuple[Multifan, PartialEdgeColoring]] = None
    alternatives = []
    for s in sorted(small):
        if pc.uncolored == _normalize_edge(r, s):
            candidates = [pc]
            rng = random.Random(seed)
            cur = pc
            for _ in range(perturbations):
                cur = random_kempe_perturbation(cur, rng)
                candidates.append(cur)
        else:
            candidates = list(
                colorings_without_edge(g, delta, (r, s), perturbations, seed)
            )
        for trial, cand in enumerate(candidates):
            fan = grow_multifan(cand, r, s, hz=True)
            alternatives.append((s, trial, len(fan.vertices)))
            if best is None or len(fan.vertices) > len(best[0].vertices):
                best = (fan, cand)
    assert best is not None
    fan, coloring = best
    cert = MaximumCertificate(
        len(fan.vertices), fan.leaves[0], alternatives, coloring
    )
    return fan, cert


# -- lollipops -----------------------------------------------------------


@dataclass(frozen=True)
class Lollipop:
    """A typical multifan plus a Delta-neighbor u of the center and a
    (Delta-1)-neighbor x of u outside the fan leaves."""

    fan: TypicalMultifan
    u: int
    x: int
    color_ru: Optional[int]
    handle_color_is_alpha_plus_one: bool


def build_lollipop(
    pc: PartialEdgeColoring, fan: TypicalMultifan, u: int, x: int
) -> Lollipop:
    g = pc.graph
    delta = pc.k
    r = fan.center
    if not g.has_edge(r, u) or g.degree(u) != delta:
        raise PreconditionFailed(f"{u} is not a Delta-neighbor of {r}")
    if not g.has_edge(u, x) or g.degree(x) != delta - 1:
        raise PreconditionFailed(f"{x} is not a (Delta-1)-neighbor of {u}")
    if x in fan.leaves:
        raise PreconditionFailed(f"{x} is a fan leaf")
    if x == r:
        raise PreconditionFailed("x equals the center")
    color_ru = pc.color_of(r, u)
    return Lollipop(fan, u, x, color_ru, color_ru == fan.alpha + 1)
