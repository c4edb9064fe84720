"""Enumeration of non-trivial solutions and the solution hypergraph."""

import itertools
import logging
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor

from lfree.equation import is_trivial_solution
from lfree.errors import DomainError
from lfree.models import IntegerSet, LinearEquation, SolutionHypergraph

logger = logging.getLogger(__name__)

MAX_EXHAUSTIVE_VARIABLES = 6


def _solved_index(equation: LinearEquation) -> int:
    """Index of the variable with the largest |coefficient| (first on ties)."""
    return max(range(equation.k), key=lambda i: (abs(equation.coeffs[i]), -i))


def iter_solutions(
    equation: LinearEquation,
    values: Sequence[int],
    first_values: Sequence[int] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield the non-trivial solutions whose coordinates all lie in ``values``.

    One variable is solved for; the other k-1 are scanned. ``first_values`` restricts
    the outermost scanned variable, which is how work is split across processes.
    """
    if equation.k > MAX_EXHAUSTIVE_VARIABLES:
        raise DomainError(
            f"exhaustive enumeration supports at most {MAX_EXHAUSTIVE_VARIABLES} variables"
        )
    allowed = set(values)
    coeffs = equation.coeffs
    solved = _solved_index(equation)
    pivot = coeffs[solved]
    scanned = [i for i in range(equation.k) if i != solved]
    scanned_coeffs = [coeffs[i] for i in scanned]

    domains = [list(values)] * len(scanned)
    if first_values is not None:
        domains[0] = list(first_values)

    for combo in itertools.product(*domains):
        remainder = equation.rhs - sum(a * v for a, v in zip(scanned_coeffs, combo))
        if remainder % pivot:
            continue
        value = remainder // pivot
        if value not in allowed:
            continue
        x = list(combo)
        x.insert(solved, value)
        solution = tuple(x)
        if not is_trivial_solution(equation, solution):
            yield solution


def _solutions_for_slice(
    equation: LinearEquation, n: int, first_values: list[int]
) -> list[tuple[int, ...]]:
    return list(iter_solutions(equation, range(1, n + 1), first_values))


def enumerate_solutions(
    equation: LinearEquation, n: int, workers: int = 1
) -> list[tuple[int, ...]]:
    """All non-trivial solutions in [n]^k, in lexicographic order."""
    if n < 1:
        return []
    if workers <= 1:
        solutions = list(iter_solutions(equation, range(1, n + 1)))
    else:
        slices = [list(range(start, n + 1, workers)) for start in range(1, workers + 1)]
        slices = [s for s in slices if s]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            count = len(slices)
            parts = pool.map(_solutions_for_slice, [equation] * count, [n] * count, slices)
            solutions = [x for part in parts for x in part]
    solutions.sort()
    logger.debug(f"{len(solutions)} solutions of {equation.coeffs}={equation.rhs} in [{n}]")
    return solutions


def is_free(equation: LinearEquation, s: IntegerSet) -> bool:
    """Whether S contains no non-trivial solution (values may repeat)."""
    members = s.members
    if not members:
        return True
    return next(iter_solutions(equation, members), None) is None


def support(solution: Sequence[int]) -> tuple[int, ...]:
    """Sorted distinct values of a solution tuple."""
    return tuple(sorted(set(solution)))


def solution_hypergraph(equation: LinearEquation, n: int) -> SolutionHypergraph:
    """Hypergraph on [n] whose edges are the supports of non-trivial solutions."""
    edges = sorted({support(x) for x in enumerate_solutions(equation, n)})
    return SolutionHypergraph(n=n, edges=tuple(edges))
