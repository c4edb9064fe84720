"""Independent-set search over hypergraphs stored as bitmasks.

Vertex v is bit v-1. Edges are reduced to the inclusion-minimal ones, which leaves
both independence and maximality unchanged. Loop vertices never enter a search.
"""

import logging
from collections.abc import Callable, Iterable

logger = logging.getLogger(__name__)


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def minimal_edges(edge_masks: Iterable[int]) -> list[int]:
    """Drop every edge that contains another edge."""
    kept: list[int] = []
    for edge in sorted(set(edge_masks), key=lambda e: (e.bit_count(), e)):
        if not any(small & edge == small for small in kept):
            kept.append(edge)
    return kept


class IndependenceSearch:
    """Maximum, counting and maximal enumeration of independent sets."""

    def __init__(self, vertex_mask: int, edge_masks: Iterable[int]):
        edges = minimal_edges(e for e in edge_masks if e)
        self.loops = 0
        for edge in edges:
            if edge.bit_count() == 1:
                self.loops |= edge
        self.vertices = vertex_mask & ~self.loops
        self.edges = [e for e in edges if e.bit_count() > 1]
        self.incident: dict[int, list[int]] = {}
        for edge in self.edges:
            for bit in _bits(edge):
                self.incident.setdefault(bit, []).append(edge)

    def is_independent(self, mask: int) -> bool:
        return mask & self.loops == 0 and all(e & ~mask for e in self.edges)

    def is_maximal(self, mask: int) -> bool:
        """Whether an independent set cannot be extended by any vertex."""
        if not self.is_independent(mask):
            return False
        for bit in _bits(self.vertices & ~mask):
            if not any(e & ~bit & ~mask == 0 for e in self.incident.get(bit, ())):
                return False
        return True

    def _include(self, bit: int, chosen: int, candidates: int) -> tuple[int, int]:
        chosen |= bit
        candidates &= ~bit
        for edge in self.incident.get(bit, ()):
            rest = edge & ~chosen
            if rest & (rest - 1) == 0:
                candidates &= ~rest
        return chosen, candidates

    def _live_rest(self, chosen: int, candidates: int) -> int:
        """Union of e minus chosen over edges that can still be completed."""
        touched = 0
        for edge in self.edges:
            if edge & ~(chosen | candidates) == 0:
                touched |= edge & ~chosen
        return touched

    def _pair_bound(self, chosen: int, candidates: int) -> int:
        """Size of a greedy matching among edges with exactly two undecided vertices left."""
        used = 0
        size = 0
        for edge in self.edges:
            if edge & ~(chosen | candidates):
                continue
            rest = edge & ~chosen
            if rest & used:
                continue
            below = rest & (rest - 1)
            if below and below & (below - 1) == 0:
                used |= rest
                size += 1
        return size

    def maximum(self, all_witnesses: bool = False) -> tuple[int, list[int]]:
        """Largest independent set size and witness masks.

        Branch-and-bound from the top vertex down, include first. The greedy set is the
        first incumbent; a node is cut when its candidates minus a pair matching cannot
        beat it. With ``all_witnesses`` every maximum set is kept.
        """
        chosen, candidates = 0, self.vertices
        while candidates:
            top = 1 << (candidates.bit_length() - 1)
            chosen, candidates = self._include(top, chosen, candidates)
        best = [chosen.bit_count()]
        found: set[int] = {chosen}

        def cut(bound: int) -> bool:
            return bound < best[0] or (bound == best[0] and not all_witnesses)

        def search(chosen: int, candidates: int) -> None:
            size = chosen.bit_count()
            if not candidates:
                if size > best[0]:
                    best[0] = size
                    found.clear()
                    found.add(chosen)
                elif size == best[0] and all_witnesses:
                    found.add(chosen)
                return
            if cut(size + candidates.bit_count()):
                return
            if cut(size + candidates.bit_count() - self._pair_bound(chosen, candidates)):
                return
            bit = 1 << (candidates.bit_length() - 1)
            search(*self._include(bit, chosen, candidates))
            search(chosen, candidates & ~bit)

        search(0, self.vertices)
        return best[0], sorted(found, key=mask_members)

    def count_independent(self) -> int:
        """Number of independent sets, splitting off vertices in no live edge."""

        def count(chosen: int, candidates: int) -> int:
            touched = self._live_rest(chosen, candidates)
            factor = 1 << (candidates & ~touched).bit_count()
            if not touched:
                return factor
            bit = 1 << (touched.bit_length() - 1)
            with_bit = count(*self._include(bit, chosen, touched))
            without_bit = count(chosen, touched & ~bit)
            return factor * (with_bit + without_bit)

        return count(0, self.vertices)

    def _certifiable(self, bit: int, chosen: int, candidates: int) -> bool:
        """Whether an excluded vertex can still be blocked by some edge."""
        reachable = chosen | candidates
        return any(edge & ~bit & ~reachable == 0 for edge in self.incident.get(bit, ()))

    def _maximal(self, emit: Callable[[int], None] | None) -> int:
        def walk(chosen: int, candidates: int, excluded: int) -> int:
            touched = self._live_rest(chosen, candidates)
            # vertices outside every live edge can never be blocked, so they are forced in
            chosen |= candidates & ~touched
            candidates &= touched
            for bit in _bits(excluded):
                if not self._certifiable(bit, chosen, candidates):
                    return 0
            if not candidates:
                if emit is not None:
                    emit(chosen)
                return 1
            bit = 1 << (candidates.bit_length() - 1)
            total = walk(*self._include(bit, chosen, candidates), excluded)
            rest = candidates & ~bit
            if self._certifiable(bit, chosen, rest):
                total += walk(chosen, rest, excluded | bit)
            return total

        return walk(0, self.vertices, 0)

    def count_maximal(self) -> int:
        """Number of maximal independent sets, without materializing them."""
        return self._maximal(None)

    def maximal_sets(self) -> list[int]:
        """All maximal independent sets, sorted by ascending member lists."""
        found: list[int] = []
        self._maximal(found.append)
        return sorted(found, key=mask_members)


def mask_members(mask: int) -> list[int]:
    """Members of a vertex mask in ascending order."""
    return [bit.bit_length() for bit in _bits(mask)]
