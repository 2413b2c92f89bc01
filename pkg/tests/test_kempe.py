import random
from itertools import combinations

import pytest

from conftest import cycle
from hzcore.coloring import (
    PartialEdgeColoring,
    apply_script,
    chain_through,
    erase_edge,
    linked,
    segment_from,
    shift,
    swap_chain,
    swap_subchain,
)
from hzcore.errors import (
    AmbiguousSegment,
    ImproperInput,
    NoSegment,
    ShiftConflict,
    StaleChain,
    VerticesNotOnChain,
)
from hzcore.graphs import Graph, max_degree
from hzcore.vizing import color_delta_plus_one


def colored(g: Graph) -> PartialEdgeColoring:
    out = color_delta_plus_one(g)
    return PartialEdgeColoring(g, max_degree(g) + 1, out.coloring)


def random_colored(n: int, p: float, seed: int) -> PartialEdgeColoring:
    rng = random.Random(seed)
    g = Graph.from_edges(
        n, [e for e in combinations(range(n), 2) if rng.random() < p]
    )
    return colored(g)


class TestPartialColoring:
    def test_missing_and_present(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        pc = PartialEdgeColoring(g, 2, {(0, 1): 1, (1, 2): 2})
        assert pc.missing(0) == {2}
        assert pc.missing(1) == set()
        assert pc.present(1) == {1, 2}
        assert pc.the_missing(0) == 2
        with pytest.raises(ImproperInput):
            pc.the_missing(1)

    def test_check_catches_conflict(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        pc = PartialEdgeColoring(g, 2, {(0, 1): 1, (1, 2): 1})
        with pytest.raises(ImproperInput):
            pc.check()
        assert pc.conflicted_vertices() == (1,)

    def test_palette_enforced(self):
        g = Graph.from_edges(2, [(0, 1)])
        with pytest.raises(ImproperInput):
            PartialEdgeColoring(g, 2, {(0, 1): 3})

    def test_erase_edge(self, k5_minus):
        full = color_delta_plus_one(k5_minus).coloring
        pc = erase_edge(k5_minus, 5, full, (0, 2))
        assert pc.uncolored == (0, 2)
        assert (0, 2) not in pc.assignment


class TestChains:
    def test_path_chain(self):
        # a path 0-1-2-3 colored 1,2,1
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        pc = PartialEdgeColoring(g, 2, {(0, 1): 1, (1, 2): 2, (2, 3): 1})
        chain = chain_through(pc, 1, 1, 2)
        assert chain.kind == "path"
        assert chain.vertices == (0, 1, 2, 3)

    def test_cycle_chain(self):
        pc = PartialEdgeColoring(
            cycle(4), 2, {(0, 1): 1, (1, 2): 2, (2, 3): 1, (0, 3): 2}
        )
        chain = chain_through(pc, 2, 1, 2)
        assert chain.kind == "cycle"
        assert len(chain.edges) == 4
        assert chain.vertices[0] == 0  # canonical rotation

    def test_isolated_vertex_chain(self):
        g = Graph.from_edges(3, [(0, 1)])
        pc = PartialEdgeColoring(g, 2, {(0, 1): 1})
        chain = chain_through(pc, 2, 1, 2)
        assert chain.vertices == (2,) and not chain.edges

    def test_chain_canonical_both_ends(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        pc = PartialEdgeColoring(g, 2, {(0, 1): 1, (1, 2): 2, (2, 3): 1})
        assert chain_through(pc, 0, 1, 2) == chain_through(pc, 3, 1, 2)

    def test_swap_is_involution(self):
        for seed in range(10):
            pc = random_colored(8, 0.5, seed)
            rng = random.Random(seed)
            v = rng.randrange(8)
            a, b = rng.sample(range(1, pc.k + 1), 2)
            chain = chain_through(pc, v, a, b)
            if not chain.edges:
                continue
            once = swap_chain(pc, chain)
            once.check()
            chain2 = chain_through(once, v, a, b)
            twice = swap_chain(once, chain2)
            assert twice.assignment == pc.assignment

    def test_swap_rejects_stale_chain(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        pc = PartialEdgeColoring(g, 3, {(0, 1): 1, (1, 2): 2, (2, 3): 1})
        chain = chain_through(pc, 0, 1, 2)
        assert len(chain.edges) == 3
        # recoloring a chain edge with a third color shrinks the component
        changed = pc.clone()
        changed._set((1, 2), 3)
        with pytest.raises(StaleChain):
            swap_chain(changed, chain)

    def test_linked_and_segments(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        pc = PartialEdgeColoring(g, 2, {(0, 1): 1, (1, 2): 2, (2, 3): 1})
        assert linked(pc, 0, 3, 1, 2)
        seg = segment_from(pc, 3, 1, 2)
        assert seg.vertices == (3, 2, 1, 0)
        with pytest.raises(AmbiguousSegment):
            segment_from(pc, 1, 1, 2)
        seg = segment_from(pc, 1, 1, 2, first_color=2)
        assert seg.vertices == (1, 2, 3)

    def test_segment_on_cycle_raises(self):
        pc = PartialEdgeColoring(
            cycle(4), 2, {(0, 1): 1, (1, 2): 2, (2, 3): 1, (0, 3): 2}
        )
        with pytest.raises(NoSegment):
            segment_from(pc, 0, 1, 2)

    def test_subchain_swap_leaves_conflict_at_cut(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3)])
        pc = PartialEdgeColoring(g, 2, {(0, 1): 1, (1, 2): 2, (2, 3): 1})
        chain = chain_through(pc, 0, 1, 2)
        out = swap_subchain(pc, chain, 0, 2)
        assert out.conflicted_vertices() == (2,)
        with pytest.raises(VerticesNotOnChain):
            swap_subchain(pc, chain, 0, 4)  # vertex 4 is off the chain
        cpc = PartialEdgeColoring(
            cycle(4), 2, {(0, 1): 1, (1, 2): 2, (2, 3): 1, (0, 3): 2}
        )
        chain_cycle = chain_through(cpc, 0, 1, 2)
        with pytest.raises(VerticesNotOnChain):
            swap_subchain(cpc, chain_cycle, 0, 2)


class TestShift:
    def test_empty_shift_is_identity(self):
        pc = random_colored(6, 0.5, 1)
        assert shift(pc, 0, []).assignment == pc.assignment

    def test_single_leaf_shift(self):
        # star: r=0 with leaves 1,2; k=3; leaf 1 misses 3
        g = Graph.from_edges(3, [(0, 1), (0, 2)])
        pc = PartialEdgeColoring(g, 3, {(0, 1): 1, (0, 2): 2})
        with pytest.raises(ShiftConflict):
            shift(pc, 0, [1])  # leaf 1 misses two colors

    def test_conflicting_shift_rejected(self):
        # both leaves miss color 3, so shifting both collides at r
        g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 3), (2, 4)])
        pc = PartialEdgeColoring(
            g, 3, {(0, 1): 1, (0, 2): 2, (1, 3): 2, (2, 4): 1}
        )
        with pytest.raises(ShiftConflict):
            shift(pc, 0, [1, 2])

    def test_two_leaf_rotation(self):
        # leaf 1 misses 2 and leaf 2 misses 1: shifting both passes
        # through a transient conflict at r and ends proper
        g = Graph.from_edges(3, [(0, 1), (0, 2)])
        pc = PartialEdgeColoring(g, 2, {(0, 1): 1, (0, 2): 2})
        out = shift(pc, 0, [1, 2])
        out.check()
        assert out.color_of(0, 1) == 2 and out.color_of(0, 2) == 1


class TestScripts:
    def test_script_round_trip(self, k5_minus):
        full = color_delta_plus_one(k5_minus).coloring
        pc = PartialEdgeColoring(k5_minus, 5, full)
        v = 0
        result = apply_script(
            pc, [("swap", v, 1, 2), ("swap", v, 1, 2)]
        )
        assert result.coloring.assignment == pc.assignment
        assert len(result.trace) == 2
        assert all(step.proper_after for step in result.trace)

    def test_script_uncolor_color(self, k5_minus):
        full = color_delta_plus_one(k5_minus).coloring
        pc = PartialEdgeColoring(k5_minus, 5, full)
        c = pc.color_of(0, 2)
        result = apply_script(pc, [("uncolor", 0, 2), ("color", 0, 2, c)])
        assert result.coloring.assignment == pc.assignment

    def test_script_failure_annotated(self, k5_minus):
        full = color_delta_plus_one(k5_minus).coloring
        pc = PartialEdgeColoring(k5_minus, 5, full)
        with pytest.raises(ImproperInput) as err:
            apply_script(pc, [("recolor", 0, 2, 99, 1)])
        assert "step 0" in str(err.value)

    def test_script_recolor(self):
        g = Graph.from_edges(2, [(0, 1)])
        pc = PartialEdgeColoring(g, 3, {(0, 1): 1})
        result = apply_script(pc, [("recolor", 0, 1, 1, 3)])
        assert result.coloring.color_of(0, 1) == 3
