"""Link graphs, the explicit G_M matching and maximal independent sets."""

import logging
from enum import Enum

from lfree.bounds import fmax_lower_exponent
from lfree.errors import DomainError
from lfree.extremal import ceil_div, gm_matching_size, require_ordered
from lfree.hypergraph import IndependenceSearch
from lfree.models import CanonicalTriple, IntegerSet, LinearEquation, LinkHypergraph, Matching
from lfree.solutions import iter_solutions

logger = logging.getLogger(__name__)


class MisMode(str, Enum):
    """Whether mis_enumerate lists the sets or only counts them."""

    LIST = "list"
    COUNT = "count"


def _require_multiple(triple: CanonicalTriple, m: int) -> None:
    if m < 1 or m % triple.t:
        raise DomainError(f"M={m} must be a positive multiple of t={triple.t}", clause="t | M")


def graph_GM(triple: CanonicalTriple, m: int) -> LinkHypergraph:  # noqa: N802
    """Graph on [ceil(rM/q) - 1] joining x and y whenever px + qy = rM."""
    require_ordered(triple)
    _require_multiple(triple, m)
    p, q, r = triple.as_tuple()
    top = ceil_div(r * m, q) - 1
    edges: set[tuple[int, ...]] = set()
    provenance: dict[tuple[int, ...], tuple[int, ...]] = {}
    for x in range(1, top + 1):
        rem = r * m - p * x
        if rem <= 0:
            break
        if rem % q:
            continue
        y = rem // q
        edge = (x,) if x == y else (min(x, y), max(x, y))
        if edge not in edges:
            edges.add(edge)
            provenance[edge] = (x, y, m)
    return LinkHypergraph(
        vertices=IntegerSet.full(max(top, 0)),
        edges=tuple(sorted(edges)),
        provenance=provenance,
    )


def gm1_matching(triple: CanonicalTriple, m: int) -> Matching:
    """The explicit matching of G_M whose size is gm_matching_size.

    Edges are indexed by a >= 0 as (x + a*r2, y - a*r1), where x is the unique value
    in [1, r2] making y = (rM - px)/q integral. The first block takes the edges whose
    left end stays at most rM/(p+q). After that, blocks of r1*r2 consecutive indices
    contribute the edges whose ends avoid the residues already used by the first block.
    """
    require_ordered(triple)
    _require_multiple(triple, m)
    p, q, r = triple.as_tuple()
    r1, r2 = triple.r1, triple.r2
    rm = r * m
    x = next(v for v in range(1, r2 + 1) if (rm - v * p) % q == 0)
    y = (rm - x * p) // q

    pairs: list[tuple[int, int]] = []
    first = rm // (r2 * (p + q))
    for a in range(first):
        pairs.append((x + a * r2, y - a * r1))

    if x * (p + q) > rm:
        a0 = 0
    else:
        a0 = (rm - x * (p + q)) // (r2 * (p + q)) + 1
    inner = max(0, (rm * r2 - r1 * (p + q)) // (r1 * r2 * (p + q)))
    block = r1 * r2
    for b in range(inner // block):
        for a in range(a0 + b * block, a0 + (b + 1) * block):
            u, w = x + a * r2, y - a * r1
            if (u - y) % r1 == 0 or (w - x) % r2 == 0:
                continue
            pairs.append((u, w))

    _check_matching(triple, m, pairs)
    return Matching(tuple(pairs))


def _check_matching(triple: CanonicalTriple, m: int, pairs: list[tuple[int, int]]) -> None:
    p, q, r = triple.as_tuple()
    top = ceil_div(r * m, q) - 1
    expected = gm_matching_size(triple, m)
    if len(pairs) != expected:
        raise AssertionError(f"{triple}, M={m}: built {len(pairs)} edges, expected {expected}")
    seen: set[int] = set()
    loops = 0
    for u, w in pairs:
        if p * u + q * w != r * m or not (1 <= u <= top and 1 <= w <= top):
            raise AssertionError(f"{triple}, M={m}: ({u}, {w}) is not an edge of G_M")
        if u == w:
            loops += 1
        if u in seen or w in seen:
            raise AssertionError(f"{triple}, M={m}: ({u}, {w}) reuses a vertex")
        seen.update((u, w))
    if loops > 1:
        raise AssertionError(f"{triple}, M={m}: {loops} loops in the matching")


def link_hypergraph(
    equation: LinearEquation,
    s: IntegerSet,
    b: IntegerSet,
    anchored: bool = False,
) -> LinkHypergraph:
    """Link hypergraph L_S[B].

    Each non-trivial solution with values in S and B that touches B contributes the edge
    of its B-values. With ``anchored`` only solutions using some element of S count.
    """
    if not s.isdisjoint(b):
        raise DomainError(f"S and B overlap in {(s & b).to_list()}", clause="S, B disjoint")
    in_s, in_b = set(s), set(b)
    edges: set[tuple[int, ...]] = set()
    provenance: dict[tuple[int, ...], tuple[int, ...]] = {}
    for solution in iter_solutions(equation, sorted(in_s | in_b)):
        values = set(solution)
        part = tuple(sorted(values & in_b))
        if not part:
            continue
        if anchored and not values & in_s:
            continue
        if part not in edges:
            edges.add(part)
            provenance[part] = solution
    logger.debug(f"Link hypergraph on {len(in_b)} vertices with {len(edges)} edges")
    return LinkHypergraph(vertices=b, edges=tuple(sorted(edges)), provenance=provenance)


def mis_enumerate(
    hypergraph: LinkHypergraph, mode: MisMode | str = MisMode.LIST
) -> list[IntegerSet] | int:
    """Maximal independent sets of a link hypergraph, listed in ascending order or counted."""
    try:
        mode = MisMode(mode)
    except ValueError as e:
        raise DomainError(f"unknown mode {mode!r}, expected list or count") from e
    search = IndependenceSearch(hypergraph.vertices.mask, hypergraph.edge_masks())
    if mode is MisMode.COUNT:
        return search.count_maximal()
    n = hypergraph.vertices.n
    return [IntegerSet(n, mask) for mask in search.maximal_sets()]


def induced_matching_instance(q: int, r: int, n: int) -> tuple[IntegerSet, IntegerSet, Matching]:
    """S = {M}, B = non-multiples of q, and an induced matching in L_S[B] for qx + qy = rz.

    M is the largest multiple of q^2 in [n]; the pairs are {i, rM/q - i} for i in B.
    """
    exponent = fmax_lower_exponent(q, r, n)
    m = n // (q * q) * q * q
    if m == 0:
        raise DomainError(f"no multiple of q^2={q * q} in [{n}]", clause="M exists")

    s = IntegerSet.from_members(n, [m])
    b = IntegerSet.from_members(n, (v for v in range(1, n + 1) if v % q))
    k = r * m // q
    pairs = tuple((i, k - i) for i in b if 2 * i < k)
    matching = Matching(pairs)

    equation = LinearEquation((q, q, -r))
    link = link_hypergraph(equation, s, b)
    span = IntegerSet.from_members(n, matching.vertices)
    inside = [e for e in link.edges if set(e) <= matching.vertices]
    if set(inside) != set(matching.pairs):
        raise AssertionError(f"q={q}, r={r}, n={n}: matching is not induced")
    count = mis_enumerate(LinkHypergraph(span, tuple(inside)), MisMode.COUNT)
    if count != 2**matching.size:
        raise AssertionError(f"q={q}, r={r}, n={n}: {count} MIS, expected 2^{matching.size}")
    if matching.size < exponent:
        raise AssertionError(f"q={q}, r={r}, n={n}: {matching.size} pairs, below {exponent}")
    return s, b, matching
