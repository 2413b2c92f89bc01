import random
from itertools import combinations

from conftest import complete, cycle
from hzcore.coloring import PartialEdgeColoring
from hzcore.graphs import Graph, max_degree
from hzcore.vizing import color_delta_plus_one, insert_edge, try_insert


def random_graph(n, p, seed):
    rng = random.Random(seed)
    return Graph.from_edges(
        n, [e for e in combinations(range(n), 2) if rng.random() < p]
    )


def assert_proper(g, outcome):
    pc = PartialEdgeColoring(g, max_degree(g) + 1, outcome.coloring)
    pc.check()
    assert outcome.colors_used <= max_degree(g) + 1


class TestEngine:
    def test_fixtures(self, k5_minus, petersen, pstar):
        for g in (k5_minus, petersen, pstar, complete(6), cycle(7)):
            assert_proper(g, color_delta_plus_one(g))

    def test_empty_and_tiny(self):
        assert color_delta_plus_one(Graph.from_edges(1, [])).coloring == {}
        out = color_delta_plus_one(Graph.from_edges(2, [(0, 1)]))
        assert out.colors_used == 1

    def test_random_graphs_proper(self):
        for seed in range(40):
            g = random_graph(seed % 11 + 2, 0.5, seed)
            assert_proper(g, color_delta_plus_one(g))

    def test_deterministic(self):
        for seed in (3, 14):
            g = random_graph(10, 0.5, seed)
            a = color_delta_plus_one(g)
            b = color_delta_plus_one(g)
            assert a.coloring == b.coloring

    def test_insertion_order_irrelevant_to_properness(self, k5_minus):
        edges = list(k5_minus.edges)
        for seed in range(5):
            rng = random.Random(seed)
            order = edges[:]
            rng.shuffle(order)
            assert_proper(k5_minus, color_delta_plus_one(k5_minus, order=order))

    def test_direct_insert_when_color_shared(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        pc = PartialEdgeColoring(g, 2, {(1, 2): 2}, uncolored=(0, 1))
        assert try_insert(pc, (0, 1))
        pc.check()

    def test_insert_edge_functional(self, pstar):
        out = color_delta_plus_one(pstar)
        pc = PartialEdgeColoring(pstar, 4, out.coloring)
        e = pstar.edges[0]
        partial = pc.clone()
        partial._unset(e)
        partial.uncolored = e
        recolored = insert_edge(partial, e)
        recolored.check()
        assert recolored.uncolored is None

    def test_traces_recorded(self, k5_minus):
        out = color_delta_plus_one(k5_minus)
        assert len(out.steps) == k5_minus.m
        assert all(t.fan_size >= 1 for t in out.steps)
