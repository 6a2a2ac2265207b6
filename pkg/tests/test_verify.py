"""
Tests for the theorem harness, the 4-critical bounds, adynamic coloring and
the tightness search.
"""

import networkx as nx
import orjson
import pytest

from src.catalog.enumerate import enumerate_small_planar
from src.catalog.families import generate_4ore, named_graph
from src.coloring.colorer import is_k_critical, solve
from src.errors import CapExceededError, NotCriticalError, TooLargeError
from src.graph.plane_graph import embed_graph
from src.graph.surgery import add_vertex, non_adjacent_pairs
from src.models.graph import Coloring, ConstraintSet
from src.models.report import CorpusFilter, CorpusTag, Failure, Report, TheoremId
from src.verify.adynamic import adynamic_3color, adynamic_candidates, is_adynamic
from src.verify.bounds import audit_4ore, check_ky_bound, check_pl44f, is_pl44f, ky_sides
from src.verify.theorems import (
    attachment_sets,
    check_theorem,
    merge_reports,
    replay_failure,
    scan_corpus,
    scan_graphs,
)
from src.verify.tightness import PATTERNS, instance_uncolorable, restricted_growth, search_tightness


# ============================================================================
# UNIT TESTS - Theorem harness
# ============================================================================

class TestCheckTheoremUnit:
    """Instance counts and verdicts of check_theorem on named graphs."""

    @pytest.mark.unit
    @pytest.mark.parametrize(
        "name,theorem,instances",
        [
            ("C5", TheoremId.T6_PAIR, 45),
            ("K4'", TheoremId.T11_MONO_NEIGHBORHOOD, 0),
            ("Q3", TheoremId.T9_SMALL_FACE, 108),
            ("C4", TheoremId.T8_ADD3VERTEX, 14),
            ("K1,3", TheoremId.C1_THREE_COMMON, 1),
            ("Q3", TheoremId.C1_THREE_COMMON, 8),
            ("C4", TheoremId.L10_WITNESS, 2),
            ("C4", TheoremId.T13_ADYNAMIC, 1),
            ("moser", TheoremId.KY_BOUND, 1),
            ("K4", TheoremId.T15_PL44F, 1),
            ("moser", TheoremId.T15_PL44F, 1),
        ],
    )
    def test_instances_and_no_failures(self, name, theorem, instances):
        report = check_theorem(named_graph(name), theorem)
        assert report.instances_checked == instances
        assert report.passed

    @pytest.mark.unit
    def test_hypothesis_filter_skips_two_triangles(self, diamond):
        assert check_theorem(diamond, TheoremId.T6_PAIR).instances_checked == 0

    @pytest.mark.unit
    def test_k4prime_pairs(self, k4prime):
        report = check_theorem(k4prime, TheoremId.T6_PAIR)
        assert report.instances_checked > 0
        assert report.passed

    @pytest.mark.unit
    def test_lemma10_configuration(self, lemma10_graph):
        report = check_theorem(lemma10_graph, TheoremId.L10_WITNESS)
        assert report.passed

    @pytest.mark.unit
    def test_size_cap(self):
        with pytest.raises(TooLargeError):
            check_theorem(nx.cycle_graph(13), TheoremId.T6_PAIR)

    @pytest.mark.unit
    def test_added_vertex_sets_avoid_triangles(self, k4prime):
        for attach in attachment_sets(k4prime, 3):
            assert set(attach) != {4, 5, 6}
        assert sum(1 for _ in attachment_sets(k4prime, 3)) == 7 + 21 + 34


class TestTriangleFreeOracleUnit:
    """Statements on triangle-free graphs that the harness leaves to the exact solver."""

    @pytest.mark.unit
    @pytest.mark.parametrize("name", ["C4", "C5", "Q3", "K1,3", "C7"])
    def test_added_4_vertex(self, name):
        """A new vertex joined to any four vertices keeps the graph 3-colorable, planar or not."""
        graph = named_graph(name)
        for attach in attachment_sets(embed_graph(graph), 4):
            host, _ = add_vertex(graph, attach)
            assert solve(host) is not None

    @pytest.mark.unit
    @pytest.mark.parametrize("name", ["C5", "Q3", "K1,3", "C7"])
    def test_neighborhood_of_a_4_vertex_shares_a_color(self, name):
        graph = named_graph(name)
        for v in graph.nodes:
            neighbors = sorted(graph.neighbors(v))
            if len(neighbors) <= 4:
                cs = ConstraintSet(equal_pairs=frozenset(zip(neighbors, neighbors[1:])))
                assert solve(graph, cs) is not None


class TestScanUnit:
    """Scanning lists of graphs and corpora."""

    @pytest.mark.unit
    def test_scan_graphs_merges_in_order(self, c4, c5):
        report = scan_graphs([c4, c5], TheoremId.T6_PAIR, jobs=1)
        assert report.instances_checked == 2 * 9 + 5 * 9
        assert report.passed

    @pytest.mark.unit
    def test_scan_corpus_small(self):
        report = scan_corpus(CorpusFilter(max_n=5, max_triangles=1), TheoremId.T6_PAIR, jobs=1)
        assert report.instances_checked > 0
        assert report.passed

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "theorem,filt",
        [
            (TheoremId.T6_PAIR, CorpusFilter(max_n=7, max_triangles=1)),
            (TheoremId.C1_THREE_COMMON, CorpusFilter(max_n=7, max_triangles=0)),
            (TheoremId.T13_ADYNAMIC, CorpusFilter(max_n=7, max_triangles=1)),
            (TheoremId.T9_SMALL_FACE, CorpusFilter(max_n=7, max_triangles=1)),
            (TheoremId.T11_MONO_NEIGHBORHOOD, CorpusFilter(max_n=7, max_triangles=1, tags=(CorpusTag.K4PRIME_FREE,))),
            (TheoremId.L10_WITNESS, CorpusFilter(max_n=7, tags=(CorpusTag.HAS_4_FACE,))),
            (TheoremId.T8_ADD3VERTEX, CorpusFilter(max_n=6, max_triangles=1)),
        ],
    )
    def test_scan_corpus_acceptance(self, theorem, filt):
        report = scan_corpus(filt, theorem)
        assert report.passed

    @pytest.mark.unit
    def test_replay_failure(self, c5):
        failure = Failure(theorem=TheoremId.T6_PAIR, rotation=c5.rotation)
        report = replay_failure(failure)
        assert report.instances_checked == 45


class TestReportUnit:
    """Unit tests for reports and failures."""

    @pytest.mark.unit
    def test_merge_mismatch(self):
        with pytest.raises(ValueError):
            Report(theorem=TheoremId.T6_PAIR).merge(Report(theorem=TheoremId.KY_BOUND))

    @pytest.mark.unit
    def test_merge_reports(self):
        parts = [Report(theorem=TheoremId.T6_PAIR, instances_checked=k) for k in (1, 2, 3)]
        assert merge_reports(TheoremId.T6_PAIR, parts).instances_checked == 6

    @pytest.mark.unit
    def test_summary_sorted_keys(self):
        payload = Report(theorem=TheoremId.T6_PAIR, instances_checked=4).summary("abc")
        assert list(orjson.loads(payload)) == sorted(orjson.loads(payload))
        assert orjson.loads(payload)["manifest_sha256"] == "abc"

    @pytest.mark.unit
    def test_failure_line(self, c4):
        failure = Failure(
            theorem=TheoremId.T6_PAIR,
            rotation=c4.rotation,
            constraints=ConstraintSet(fixed={0: 1, 2: 2}),
            engine_verdict=False,
            oracle_verdict=True,
        )
        line = failure.to_line()
        assert line.startswith("FAIL T6_pair engine=False oracle=True")
        assert "fix 0=1; fix 2=2" in line
        assert "edges=[0-1 0-3 1-2 2-3]" in line


# ============================================================================
# UNIT TESTS - 4-critical bounds
# ============================================================================

class TestBoundsUnit:
    """Unit tests for the 4-critical edge bound and the four-triangle characterization."""

    @pytest.mark.unit
    def test_ky_bound_tight(self, moser):
        assert check_ky_bound(nx.complete_graph(4)) == (True, True)
        assert check_ky_bound(moser) == (True, True)
        assert ky_sides(moser) == (33, 33)

    @pytest.mark.unit
    def test_ky_bound_odd_wheel(self):
        """W5 is 4-critical but not 4-Ore: strict inequality."""
        assert check_ky_bound(named_graph("W5")) == (True, False)

    @pytest.mark.unit
    def test_not_critical(self):
        with pytest.raises(NotCriticalError):
            check_ky_bound(nx.cycle_graph(4))

    @pytest.mark.unit
    def test_pl44f(self, moser):
        assert is_pl44f(nx.complete_graph(4))
        assert is_pl44f(moser)
        assert not is_pl44f(nx.cycle_graph(4))
        assert check_pl44f(moser)

    @pytest.mark.unit
    def test_audit_4ore(self):
        reports = audit_4ore(1)
        for theorem in (TheoremId.KY_BOUND, TheoremId.T15_PL44F):
            assert reports[theorem].instances_checked == 2
            assert reports[theorem].passed

    @pytest.mark.slow
    @pytest.mark.timeout(7200)
    def test_ky_bound_on_corpus(self):
        """Every 4-critical planar graph on at most nine vertices meets the edge bound."""
        critical = [g for g in enumerate_small_planar(CorpusFilter(max_n=9)) if is_k_critical(g, 4)]
        assert critical
        for g in critical:
            assert check_ky_bound(g)[0]
        report = scan_graphs(critical, TheoremId.T15_PL44F)
        assert report.passed

    @pytest.mark.slow
    @pytest.mark.timeout(3600)
    def test_4ore_up_to_depth_three(self):
        """4-Ore graphs on up to 13 vertices are tight, critical, and carry at least four triangles."""
        reports = audit_4ore(3)
        for theorem in (TheoremId.KY_BOUND, TheoremId.T15_PL44F):
            assert reports[theorem].instances_checked > 2
            assert reports[theorem].passed
        for graph in generate_4ore(2):
            assert 3 * graph.number_of_edges() == 5 * graph.number_of_nodes() - 2
            assert check_pl44f(graph)


# ============================================================================
# UNIT TESTS - Adynamic coloring
# ============================================================================

class TestAdynamicUnit:
    """Unit tests for adynamic_3color."""

    @pytest.mark.unit
    def test_cycle(self, c4):
        result = adynamic_3color(c4)
        assert result is not None
        assert result.witness_vertex == 0
        assert is_adynamic(c4, result)

    @pytest.mark.unit
    def test_k4prime_uses_a_subdivision_vertex(self, k4prime):
        result = adynamic_3color(k4prime)
        assert result.witness_vertex == 1
        assert is_adynamic(k4prime, result)

    @pytest.mark.unit
    def test_k4_has_no_candidate(self, k4):
        assert adynamic_candidates(k4) == []
        assert adynamic_3color(k4) is None

    @pytest.mark.unit
    def test_dynamic_coloring_rejected(self, c4):
        from src.models.graph import AdynamicColoring

        dynamic = AdynamicColoring(coloring=Coloring(assignment={0: 1, 1: 2, 2: 1, 3: 3}), witness_vertex=0)
        assert not is_adynamic(c4, dynamic)


# ============================================================================
# UNIT TESTS - Tightness search
# ============================================================================

class TestTightnessUnit:
    """Unit tests for search_tightness."""

    @pytest.mark.unit
    def test_restricted_growth(self):
        assert restricted_growth((1, 2, 1, 3))
        assert not restricted_growth((2, 1))
        assert not restricted_growth((1, 3, 2))

    @pytest.mark.unit
    def test_patterns_registered(self):
        assert "pair-one-triangle" in PATTERNS
        assert len(PATTERNS) == 8

    @pytest.mark.unit
    def test_pair_two_triangles(self):
        """The diamond with its tips colored differently is the smallest witness."""
        witnesses = search_tightness("pair-two-triangles", 5, jobs=1)
        assert len(witnesses) == 1
        witness = witnesses[0]
        assert witness.n == 4
        assert witness.triangles == 2
        assert sorted(witness.constraints.fixed.values()) == [1, 2]

    @pytest.mark.unit
    def test_control_pattern_is_empty(self):
        assert search_tightness("pair-one-triangle", 6, jobs=1) == []

    @pytest.mark.unit
    def test_mono_two_triangles(self):
        witnesses = search_tightness("mono-2-neighborhood-two-triangles", 6, jobs=1)
        assert witnesses
        assert all(w.n == 6 for w in witnesses)

    @pytest.mark.slow
    def test_five_face_one_triangle(self):
        assert search_tightness("fiveface-one-triangle", 9)

    @pytest.mark.unit
    def test_added_vertex_host_may_be_non_planar(self, octahedron):
        """A fourth neighbor on the octahedron sees all three colors; the host has 16 > 3n - 6 edges."""
        u, w = non_adjacent_pairs(octahedron)[0]
        x, y = next((a, b) for a, b in octahedron.edges if not {a, b} & {u, w})
        attach = tuple(sorted((u, w, x, y)))
        host, _ = add_vertex(octahedron, attach)
        assert not nx.check_planarity(host)[0]
        assert solve(octahedron, ConstraintSet()) is not None
        assert instance_uncolorable(octahedron, ConstraintSet(), attach)

    @pytest.mark.unit
    def test_added_vertex_on_a_colorable_host(self, c4):
        """C4 plus a vertex joined to all four is the wheel W4."""
        assert not instance_uncolorable(c4, ConstraintSet(), (0, 1, 2, 3))

    @pytest.mark.unit
    def test_unknown_pattern(self):
        with pytest.raises(ValueError):
            search_tightness("no-such-pattern", 5)

    @pytest.mark.unit
    def test_cap(self):
        with pytest.raises(CapExceededError):
            search_tightness("pair-two-triangles", 11)
