"""Tests for the independent-set search."""

from lfree.hypergraph import IndependenceSearch, mask_members, minimal_edges


def _mask(*vertices: int) -> int:
    return sum(1 << (v - 1) for v in vertices)


def test_minimal_edges():
    """Test that supersets of other edges are dropped."""
    edges = minimal_edges([_mask(1, 2), _mask(1, 2, 3), _mask(3)])
    assert sorted(edges) == sorted([_mask(3), _mask(1, 2)])


def test_mask_members():
    """Test member listing."""
    assert mask_members(_mask(5, 1, 3)) == [1, 3, 5]
    assert mask_members(0) == []


class TestPath:
    """The path 1 - 2 - 3."""

    def search(self):
        return IndependenceSearch(_mask(1, 2, 3), [_mask(1, 2), _mask(2, 3)])

    def test_maximum(self):
        assert self.search().maximum() == (2, [_mask(1, 3)])

    def test_count_independent(self):
        assert self.search().count_independent() == 5

    def test_maximal(self):
        search = self.search()
        assert search.count_maximal() == 2
        assert search.maximal_sets() == [_mask(1, 3), _mask(2)]

    def test_is_maximal(self):
        search = self.search()
        assert search.is_maximal(_mask(2))
        assert not search.is_maximal(_mask(1))
        assert not search.is_maximal(_mask(1, 2))


class TestHyperedge:
    def test_three_vertex_edge(self):
        search = IndependenceSearch(_mask(1, 2, 3), [_mask(1, 2, 3)])
        assert search.count_independent() == 7
        assert search.count_maximal() == 3
        size, witnesses = search.maximum(all_witnesses=True)
        assert size == 2
        assert len(witnesses) == 3

    def test_no_edges(self):
        search = IndependenceSearch(_mask(1, 2, 3, 4), [])
        assert search.count_independent() == 16
        assert search.maximal_sets() == [_mask(1, 2, 3, 4)]
        assert search.maximum()[0] == 4


class TestLoops:
    def test_loop_vertex_never_chosen(self):
        search = IndependenceSearch(_mask(1, 2, 3), [_mask(1), _mask(2, 3)])
        assert search.count_independent() == 3
        assert search.maximal_sets() == [_mask(2), _mask(3)]
        assert search.maximum()[0] == 1
        assert not search.is_independent(_mask(1))


def test_five_cycle():
    """Test counts on C5."""
    edges = [_mask(i, i % 5 + 1) for i in range(1, 6)]
    search = IndependenceSearch(_mask(1, 2, 3, 4, 5), edges)
    assert search.count_independent() == 11
    assert search.count_maximal() == 5
    assert search.maximum()[0] == 2
