"""Brute-force ground truth for small n."""

import logging
from enum import Enum

import networkx as nx

from lfree.config import OracleConfig, env_cap
from lfree.errors import CapExceededError, DomainError
from lfree.hypergraph import IndependenceSearch
from lfree.models import IntegerSet, LinearEquation, LinkHypergraph, MuResult
from lfree.solutions import enumerate_solutions, solution_hypergraph

logger = logging.getLogger(__name__)


class CountKind(str, Enum):
    """What brute_counts counts."""

    FREE = "free"
    MAXIMAL = "maximal"


def resolve_cap(what: str, cap: int | None = None) -> int:
    """Explicit cap, else LFREE_CAP_N, else the default for ``what``."""
    if cap is not None:
        return cap
    override = env_cap()
    if override is not None:
        return override
    return OracleConfig().cap_for(what)


def _check_cap(what: str, n: int, cap: int | None) -> None:
    limit = resolve_cap(what, cap)
    if n > limit:
        raise CapExceededError(what, n, limit)
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")


def _search(equation: LinearEquation, n: int) -> IndependenceSearch:
    hypergraph = solution_hypergraph(equation, n)
    return IndependenceSearch((1 << n) - 1, hypergraph.edge_masks())


def brute_mu(
    equation: LinearEquation,
    n: int,
    *,
    cap: int | None = None,
    all_witnesses: bool = False,
) -> MuResult:
    """Size of the largest L-free subset of [n] by exhaustive branch-and-bound.

    One witness is returned, or every maximum set with ``all_witnesses``; witnesses are
    in ascending lexicographic order.
    """
    _check_cap("mu", n, cap)
    size, masks = _search(equation, n).maximum(all_witnesses=all_witnesses)
    witnesses = tuple(IntegerSet(n, mask) for mask in masks)
    if not all_witnesses:
        witnesses = witnesses[:1]
    logger.debug(f"mu({equation.coeffs}, {n}) = {size}")
    return MuResult(size, witnesses)


def brute_counts(
    equation: LinearEquation,
    n: int,
    what: CountKind | str = CountKind.FREE,
    *,
    cap: int | None = None,
) -> int:
    """Exact number of L-free (or maximal L-free) subsets of [n]."""
    try:
        kind = CountKind(what)
    except ValueError as e:
        raise DomainError(f"unknown count {what!r}, expected free or maximal") from e
    _check_cap(kind.value, n, cap)
    search = _search(equation, n)
    if kind is CountKind.FREE:
        return search.count_independent()
    return search.count_maximal()


def free_elements(equation: LinearEquation, n: int) -> IntegerSet:
    """Elements of [n] lying in no non-trivial solution inside [n]."""
    used = {v for x in enumerate_solutions(equation, n) for v in x}
    return IntegerSet.from_members(n, (v for v in range(1, n + 1) if v not in used))


def brute_mu_star(equation: LinearEquation, n: int, *, cap: int | None = None) -> int:
    """Number of elements of [n] lying in no non-trivial solution."""
    _check_cap("mu_star", n, cap)
    return len(free_elements(equation, n))


def brute_max_matching(graph: LinkHypergraph) -> int:
    """Largest set of vertex-disjoint edges; a loop uses up its vertex.

    Every loop can be taken, since swapping a matched neighbour edge for the loop never
    shrinks a matching. The rest is a maximum cardinality matching without loop vertices.
    """
    if not graph.is_graph:
        big = next(e for e in graph.edges if len(e) > 2)
        raise DomainError(f"edge {big} has more than two vertices", clause="graph")
    loops = set(graph.loops)
    g = nx.Graph()
    g.add_nodes_from(v for v in graph.vertices if v not in loops)
    g.add_edges_from(e for e in graph.edges if len(e) == 2 and not loops & set(e))
    matching = nx.max_weight_matching(g, maxcardinality=True)
    return len(loops) + len(matching)
