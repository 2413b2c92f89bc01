import pytest

from conftest import complete, cycle
from hzcore.canon import are_isomorphic
from hzcore.classify import (
    OdeltaParams,
    candidate_diagnostics,
    classify,
    color_optimal,
    gen_odelta,
    is_hz_candidate,
    is_petersen_minus,
    kempe_descent,
    petersen,
    petersen_minus,
    valid_odelta_params,
)
from hzcore.coloring import PartialEdgeColoring
from hzcore.errors import InvalidParams, NotCandidate
from hzcore.graphs import Graph, core, is_overfull, max_degree
from hzcore.oracle import chromatic_index_exact
from hzcore.vizing import color_delta_plus_one


def assert_report_consistent(g, report):
    assert report.chromatic_index == report.delta + report.chromatic_class - 1
    if report.coloring is not None:
        pc = PartialEdgeColoring(g, report.chromatic_index, report.coloring)
        pc.check()
        assert len(set(report.coloring.values())) == report.chromatic_index


class TestFixtures:
    def test_petersen_shape(self):
        g = petersen()
        assert g.n == 10 and g.m == 15
        assert all(g.degree(v) == 3 for v in range(10))

    def test_petersen_minus_recognized(self, pstar):
        assert is_petersen_minus(pstar)
        assert is_petersen_minus(petersen_minus())

    def test_recognizer_negatives(self, k5_minus):
        assert not is_petersen_minus(petersen())
        assert not is_petersen_minus(k5_minus)
        # right size, wrong structure
        g = Graph.from_edges(9, [(i, (i + j) % 9) for i in range(9) for j in (1, 2)])
        assert g.m >= 12 and not is_petersen_minus(g)


class TestCandidates:
    def test_accepts_core_cycle(self, k5_minus, pstar):
        assert is_hz_candidate(k5_minus)
        assert is_hz_candidate(pstar)
        assert is_hz_candidate(cycle(5))

    def test_rejects_disconnected(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        diag = candidate_diagnostics(g)
        assert not diag.ok and diag.reason == "not connected"

    def test_rejects_big_core(self):
        diag = candidate_diagnostics(complete(5))
        assert not diag.ok and diag.core_max_degree == 4

    def test_rejects_edgeless(self):
        diag = candidate_diagnostics(Graph.from_edges(3, []))
        assert not diag.ok and diag.reason == "no edges"

    def test_classify_raises(self):
        with pytest.raises(NotCandidate):
            classify(complete(5))


class TestClassify:
    def test_k5_minus_overfull(self, k5_minus):
        report = classify(k5_minus)
        assert report.chromatic_class == 2
        assert report.witness["kind"] == "overfull"
        assert report.witness["edges"] == 9
        assert report.witness["bound"] == 8
        assert_report_consistent(k5_minus, report)

    def test_pstar_exception(self, pstar):
        report = classify(pstar)
        assert report.chromatic_class == 2
        assert report.chromatic_index == 4
        assert report.witness["kind"] == "petersen_minus"
        assert_report_consistent(pstar, report)

    def test_cycles(self):
        odd = classify(cycle(5))
        assert odd.chromatic_class == 2
        assert odd.witness["kind"] == "odd_cycle"
        even = classify(cycle(6))
        assert even.chromatic_class == 1
        assert even.chromatic_index == 2
        assert_report_consistent(cycle(5), odd)
        assert_report_consistent(cycle(6), even)

    def test_single_edge(self):
        report = classify(Graph.from_edges(2, [(0, 1)]))
        assert report.chromatic_class == 1
        assert report.witness["kind"] == "trivial"

    def test_json_schema(self, k5_minus):
        d = classify(k5_minus).to_json_dict()
        assert set(d) == {
            "delta", "core_max_degree", "class", "chromatic_index",
            "witness", "coloring",
        }
        assert d["class"] == 2

    def test_without_coloring(self, pstar):
        assert classify(pstar, with_coloring=False).coloring is None


class TestOdeltaFamily:
    def test_params_parity(self):
        assert [p.n1 for p in valid_odelta_params(5)] == [4]
        assert [p.n1 for p in valid_odelta_params(6)] == [3, 5]
        with pytest.raises(InvalidParams):
            OdeltaParams(5, 3).validate()  # n1 + n2 even
        with pytest.raises(InvalidParams):
            OdeltaParams(4, 5).validate()  # n1 out of range
        with pytest.raises(InvalidParams):
            OdeltaParams(3, 3).validate()  # delta too small

    def test_members_are_overfull_candidates(self):
        for delta in range(4, 9):
            for p in valid_odelta_params(delta):
                g = gen_odelta(delta, p.n1)
                assert is_overfull(g)
                assert is_hz_candidate(g)
                assert max_degree(g) == delta
                core_g, _ = core(g)
                assert all(core_g.degree(v) == 2 for v in range(core_g.n))
                assert classify(g, with_coloring=False).chromatic_class == 2

    def test_smallest_member_is_k5_minus_edge(self, k5_minus):
        assert are_isomorphic(gen_odelta(4, 3), k5_minus)

    def test_oracle_agrees_on_small_members(self):
        for delta in (4, 5, 6):
            for p in valid_odelta_params(delta):
                g = gen_odelta(delta, p.n1)
                assert chromatic_index_exact(g).chromatic_index == delta + 1

    def test_bad_params_rejected(self):
        with pytest.raises(InvalidParams):
            gen_odelta(5, 3)


class TestDescent:
    def test_noop_when_already_tight(self):
        g = cycle(6)
        base = {(0, 1): 1, (1, 2): 2, (2, 3): 1, (3, 4): 2, (4, 5): 1, (0, 5): 2}
        PartialEdgeColoring(g, 2, base).check()
        packed, stats = kempe_descent(g, base)
        assert stats.succeeded and stats.restarts_used == 0
        assert set(packed.values()) <= {1, 2}

    def test_compresses_wasteful_cycle_coloring(self):
        g = cycle(6)
        base = {(0, 1): 1, (1, 2): 2, (2, 3): 1, (3, 4): 2, (4, 5): 3, (0, 5): 2}
        PartialEdgeColoring(g, 3, base).check()
        packed, stats = kempe_descent(g, base)
        assert stats.succeeded
        PartialEdgeColoring(g, 2, packed).check()

    def test_stats_fields(self):
        g = complete(4)  # chi' = 3 = Delta
        base = color_delta_plus_one(g)
        packed, stats = kempe_descent(g, base.coloring)
        if packed is not None:
            PartialEdgeColoring(g, 3, packed).check()
        assert stats.budget == 200 * g.m
        assert stats.insertions >= 0


class TestColorOptimal:
    def test_exact_on_known_graphs(self, k5_minus, pstar, petersen):
        for g, chi in ((k5_minus, 5), (pstar, 4), (petersen, 4), (cycle(6), 2), (complete(4), 3)):
            out = color_optimal(g)
            assert out.chromatic_index == chi
            assert out.colors_used == chi
            pc = PartialEdgeColoring(g, chi, out.coloring)
            pc.check()
            assert out.method in ("vizing", "descent", "oracle")

    def test_known_index_skips_oracle(self, pstar):
        out = color_optimal(pstar, known_chromatic_index=4)
        assert out.chromatic_index == 4
        PartialEdgeColoring(pstar, 4, out.coloring).check()

    def test_deterministic(self, petersen):
        a = color_optimal(petersen, seed=3)
        b = color_optimal(petersen, seed=3)
        assert a.coloring == b.coloring and a.method == b.method

    def test_empty_graph(self):
        out = color_optimal(Graph.from_edges(2, []))
        assert out.coloring == {} and out.chromatic_index == 0
