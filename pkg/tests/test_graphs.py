import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import complete, cycle
from hzcore.errors import InstanceTooLarge
from hzcore.graphs import (
    Graph,
    core,
    density,
    fractional_chromatic_index,
    is_connected,
    is_overfull,
    max_degree,
)


def naive_density(g: Graph) -> Fraction:
    """Independent subset-enumeration oracle for the density maximum."""
    best = Fraction(0)
    for size in range(3, g.n + 1):
        for subset in combinations(range(g.n), size):
            inside = sum(
                1 for u, v in g.edges if u in subset and v in subset
            )
            best = max(best, Fraction(inside, size // 2))
    return best


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(
        n, [e for e in combinations(range(n), 2) if rng.random() < p]
    )


class TestGraphBasics:
    def test_from_edges_rejects_loop(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 0)])

    def test_from_edges_rejects_parallel(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 1), (1, 0)])

    def test_from_edges_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 2)])

    def test_degrees_and_neighbors(self, k5_minus):
        assert k5_minus.degree(0) == 3
        assert k5_minus.degree(2) == 4
        assert list(k5_minus.neighbors(0)) == [2, 3, 4]
        assert k5_minus.degree_sequence() == (3, 3, 4, 4, 4)

    def test_remove_vertex_relabels(self):
        g = cycle(5).remove_vertex(2)
        assert g.n == 4
        assert g.degree_sequence() == (1, 1, 2, 2)

    def test_induced_id_map(self, k5_minus):
        sub, idmap = k5_minus.induced([2, 3, 4])
        assert sub.m == 3  # triangle on the degree-4 vertices
        assert idmap == (2, 3, 4)

    @given(st.integers(2, 9), st.integers(0, 10**6))
    def test_handshake(self, n, seed):
        g = random_graph(n, 0.5, seed)
        assert sum(g.degree(v) for v in range(g.n)) == 2 * g.m


class TestCoreAndConnectivity:
    def test_core_of_k5_minus_is_triangle(self, k5_minus):
        c, idmap = core(k5_minus)
        assert c.n == 3 and c.m == 3
        assert idmap == (2, 3, 4)

    def test_core_of_pstar_is_six_cycle(self, pstar):
        c, _ = core(pstar)
        assert c.n == 6 and c.m == 6
        assert all(c.degree(v) == 2 for v in range(6))

    def test_connectivity(self):
        assert is_connected(cycle(5))
        assert not is_connected(Graph.from_edges(4, [(0, 1), (2, 3)]))
        assert is_connected(Graph.from_edges(1, []))
        assert not is_connected(Graph.from_edges(3, [(0, 1)]))


class TestDensity:
    def test_small_convention(self):
        assert density(Graph.from_edges(2, [(0, 1)])).omega == 0

    def test_k5_minus(self, k5_minus):
        d = density(k5_minus)
        assert d.omega == Fraction(9, 2)
        assert len(d.witness) == 5

    def test_odd_cycle(self):
        assert density(cycle(5)).omega == Fraction(5, 2)
        assert density(cycle(7)).omega == Fraction(7, 3)

    def test_witness_is_odd_when_above_delta(self, k5_minus):
        d = density(k5_minus)
        assert d.omega > max_degree(k5_minus)
        assert len(d.witness) % 2 == 1

    def test_agrees_with_naive_oracle(self):
        for seed in range(12):
            g = random_graph(7, 0.5, seed)
            assert density(g).omega == naive_density(g), seed

    def test_size_limit(self):
        with pytest.raises(InstanceTooLarge):
            density(Graph.from_edges(30, []), limit=24)

    def test_witness_achieves_value(self):
        for seed in range(8):
            g = random_graph(8, 0.6, seed + 100)
            d = density(g)
            if not d.witness:
                continue
            inside = sum(
                1 for u, v in g.edges if u in d.witness and v in d.witness
            )
            assert Fraction(inside, len(d.witness) // 2) == d.omega


class TestOverfullAndFractional:
    def test_overfull_fixtures(self, k5_minus, pstar):
        assert is_overfull(k5_minus)  # 9 > 4*2
        assert not is_overfull(pstar)  # 12 = 3*4
        assert is_overfull(cycle(5))
        assert not is_overfull(cycle(6))

    def test_fractional_index(self, k5_minus, pstar):
        assert fractional_chromatic_index(k5_minus) == Fraction(9, 2)
        assert fractional_chromatic_index(pstar) == 3
        assert fractional_chromatic_index(complete(4)) == 3
