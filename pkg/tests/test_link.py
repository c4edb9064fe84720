"""Tests for link graphs and matchings."""

import pytest

from lfree.errors import DomainError
from lfree.extremal import gm_matching_size
from lfree.grammar import parse_equation
from lfree.link import (
    MisMode,
    gm1_matching,
    graph_GM,
    induced_matching_instance,
    link_hypergraph,
    mis_enumerate,
)
from lfree.models import CanonicalTriple, IntegerSet
from lfree.oracle import brute_max_matching

SCHUR = CanonicalTriple(1, 1, 1)


class TestGraphGM:
    def test_schur(self):
        graph = graph_GM(SCHUR, 5)
        assert graph.vertices.to_list() == [1, 2, 3, 4]
        assert graph.edges == ((1, 4), (2, 3))
        assert graph.provenance[(1, 4)] == (1, 4, 5)

    def test_loop(self):
        graph = graph_GM(SCHUR, 6)
        assert (3,) in graph.edges
        assert graph.loops == (3,)

    def test_requires_multiple_of_t(self):
        with pytest.raises(DomainError):
            graph_GM(CanonicalTriple(2, 2, 1), 5)


class TestGm1Matching:
    def test_schur(self):
        matching = gm1_matching(SCHUR, 5)
        assert matching.pairs == ((1, 4), (2, 3))

    def test_single_loop(self):
        matching = gm1_matching(CanonicalTriple(2, 2, 1), 4)
        assert matching.pairs == ((1, 1),)
        assert matching.loop_count == 1

    @pytest.mark.parametrize("p,q,r", [(1, 1, 1), (2, 1, 1), (3, 2, 1), (3, 3, 2), (5, 3, 2)])
    def test_size_and_maximum(self, p, q, r):
        triple = CanonicalTriple(p, q, r)
        for m in range(triple.t, 80, triple.t):
            matching = gm1_matching(triple, m)
            assert matching.size == gm_matching_size(triple, m)
            assert brute_max_matching(graph_GM(triple, m)) >= matching.size


class TestLinkHypergraph:
    def test_edges_and_loops(self):
        eq = parse_equation("x+y=z")
        s = IntegerSet.from_members(6, [4])
        b = IntegerSet.from_members(6, [2, 5, 6])
        link = link_hypergraph(eq, s, b)
        # 2 + 2 = 4 and 2 + 4 = 6
        assert link.edges == ((2,), (2, 6))
        assert link.loops == (2,)

    def test_maximal_set_is_maximal_independent(self):
        eq = parse_equation("x+y=z")
        s = IntegerSet.from_members(6, [4])
        b = IntegerSet.from_members(6, [2, 5, 6])
        link = link_hypergraph(eq, s, b)
        assert mis_enumerate(link) == [IntegerSet.from_members(6, [5, 6])]
        assert mis_enumerate(link, MisMode.COUNT) == 1

    def test_anchored_drops_solutions_inside_b(self):
        eq = parse_equation("x+y=z")
        s = IntegerSet.from_members(6, [6])
        b = IntegerSet.from_members(6, [1, 2])
        assert link_hypergraph(eq, s, b).edges == ((1, 2),)
        assert link_hypergraph(eq, s, b, anchored=True).edges == ()

    def test_overlap(self):
        eq = parse_equation("x+y=z")
        with pytest.raises(DomainError) as exc:
            link_hypergraph(eq, IntegerSet.from_members(5, [1, 2]), IntegerSet.from_members(5, [2]))
        assert exc.value.clause == "S, B disjoint"

    def test_bad_mode(self):
        link = link_hypergraph(
            parse_equation("x+y=z"), IntegerSet(3), IntegerSet.from_members(3, [3])
        )
        with pytest.raises(DomainError):
            mis_enumerate(link, "all")


class TestInducedMatching:
    def test_two_two_one(self):
        s, b, matching = induced_matching_instance(2, 1, 16)
        assert s.to_list() == [16]
        assert b.to_list() == [1, 3, 5, 7, 9, 11, 13, 15]
        assert matching.pairs == ((1, 7), (3, 5))

    @pytest.mark.parametrize("q,r", [(2, 1), (3, 1), (3, 2), (5, 2)])
    def test_instances_hold(self, q, r):
        for n in range(q * q, 60):
            _, _, matching = induced_matching_instance(q, r, n)
            assert matching.size >= 0

    def test_no_multiple(self):
        with pytest.raises(DomainError) as exc:
            induced_matching_instance(2, 1, 3)
        assert exc.value.clause == "M exists"


class TestWorkedExamples:
    def test_gm_schur_ten(self):
        graph = graph_GM(SCHUR, 10)
        assert graph.vertices.to_list() == list(range(1, 10))
        assert graph.edges == ((1, 9), (2, 8), (3, 7), (4, 6), (5,))

    def test_gm_both_orientations(self):
        # 2x + y = 7 gives {1,5}, {2,3} and, from x = 3, y = 1, also {1,3}
        assert set(graph_GM(CanonicalTriple(2, 1, 1), 7).edges) == {(1, 5), (2, 3), (1, 3)}

    def test_gm_large_coefficients(self):
        graph = graph_GM(CanonicalTriple(63, 42, 41), 21)
        assert graph.vertices.n == 20
        assert set(graph.edges) == {(1, 19), (3, 16), (5, 13), (7, 10), (7, 9), (4, 11), (1, 13)}

    def test_matching_schur_ten(self):
        matching = gm1_matching(SCHUR, 10)
        assert matching.pairs == ((1, 9), (2, 8), (3, 7), (4, 6), (5, 5))
        assert brute_max_matching(graph_GM(SCHUR, 10)) == 5

    def test_matching_smallest(self):
        assert gm1_matching(SCHUR, 2).pairs == ((1, 1),)

    def test_matching_coprime_left(self):
        triple = CanonicalTriple(3, 2, 1)
        matching = gm1_matching(triple, 30)
        assert matching.size == 3
        assert all(3 * x + 2 * y == 30 for x, y in matching.pairs)
