import random
from itertools import combinations

from hypothesis import given, settings, strategies as st

from conftest import cycle
from hzcore.canon import are_isomorphic, canonical_graph, certificate
from hzcore.graphs import Graph


def permuted(g: Graph, seed: int) -> Graph:
    rng = random.Random(seed)
    perm = list(range(g.n))
    rng.shuffle(perm)
    return Graph.from_edges(g.n, ((perm[u], perm[v]) for u, v in g.edges))


class TestCanonicalForm:
    @given(st.integers(1, 8), st.integers(0, 10**6), st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_certificate_invariant_under_relabeling(self, n, gseed, pseed):
        rng = random.Random(gseed)
        g = Graph.from_edges(
            n, [e for e in combinations(range(n), 2) if rng.random() < 0.5]
        )
        assert certificate(g) == certificate(permuted(g, pseed))

    def test_distinguishes_nonisomorphic(self):
        p4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        assert not are_isomorphic(p4, star)
        assert not are_isomorphic(cycle(6), cycle(5))

    def test_canonical_graph_idempotent(self, pstar):
        c1 = canonical_graph(pstar)
        assert canonical_graph(c1).edges == c1.edges
        assert are_isomorphic(c1, pstar)

    def test_regular_pair(self):
        # two 3-regular graphs on 6 vertices: K_{3,3} and the prism
        k33 = Graph.from_edges(6, [(i, 3 + j) for i in range(3) for j in range(3)])
        prism = Graph.from_edges(
            6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
        )
        assert not are_isomorphic(k33, prism)
        assert are_isomorphic(prism, permuted(prism, 5))
