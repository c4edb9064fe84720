"""Classification, triviality and reductions of linear equations."""

import logging
import math
from collections import defaultdict
from collections.abc import Sequence

from lfree.errors import DomainError
from lfree.models import CanonicalTriple, LinearEquation

logger = logging.getLogger(__name__)


def classify(equation: LinearEquation) -> tuple[bool, bool]:
    """Return (homogeneous, translation_invariant)."""
    return equation.homogeneous, equation.translation_invariant


def is_trivial_solution(equation: LinearEquation, x: Sequence[int]) -> bool:
    """Whether a solution x of L is trivial.

    Only translation-invariant equations have trivial solutions. Classes of a valid
    partition must have equal values, so they refine the value groups; a value group
    splits into zero-sum classes exactly when its own coefficient sum is zero.
    """
    x = tuple(x)
    if len(x) != equation.k:
        raise DomainError(f"tuple has length {len(x)}, equation has {equation.k} variables")
    if not equation.satisfied_by(x):
        raise DomainError(f"{x} does not satisfy the equation")
    if not equation.translation_invariant:
        return False

    group_sums: dict[int, int] = defaultdict(int)
    for a, v in zip(equation.coeffs, x):
        group_sums[v] += a
    return all(total == 0 for total in group_sums.values())


def canonical_triple(equation: LinearEquation) -> CanonicalTriple:
    """Normalize a three-variable homogeneous equation to px + qy = rz."""
    if equation.k != 3:
        raise DomainError(f"expected 3 variables, got {equation.k}", clause="arity")
    if not equation.homogeneous:
        raise DomainError(f"equation is not homogeneous (b={equation.rhs})", clause="b=0")

    coeffs = equation.coeffs
    positives = [a for a in coeffs if a > 0]
    if len(positives) in (0, 3):
        raise DomainError("all coefficients have the same sign", clause="sign pattern")
    if len(positives) == 1:
        coeffs = tuple(-a for a in coeffs)

    left = sorted((a for a in coeffs if a > 0), reverse=True)
    right = -next(a for a in coeffs if a < 0)
    return CanonicalTriple.reduced(left[0], left[1], right)


def collapse_variables(equation: LinearEquation, i: int, j: int) -> LinearEquation:
    """Identify x_i with x_j (0-based indices); the merged variable takes position min(i, j)."""
    k = equation.k
    if i == j or not (0 <= i < k and 0 <= j < k):
        raise DomainError(f"invalid index pair ({i}, {j}) for {k} variables")
    i, j = min(i, j), max(i, j)
    merged = equation.coeffs[i] + equation.coeffs[j]
    if merged == 0:
        raise DomainError(f"collapsing indices {i} and {j} gives a zero coefficient")
    coeffs = list(equation.coeffs)
    coeffs[i] = merged
    del coeffs[j]
    return LinearEquation(tuple(coeffs), equation.rhs)


def partition_to_triple(
    equation: LinearEquation,
    part1: Sequence[int],
    part2: Sequence[int],
    part3: Sequence[int],
) -> CanonicalTriple:
    """Sum coefficients over a three-part index partition into p'x + q'y = r'z.

    The parts must be non-empty, disjoint and cover every index, and the sums must
    satisfy p' >= q' >= r' >= 1 where r' is minus the third sum.
    """
    if not equation.homogeneous:
        raise DomainError("equation is not homogeneous", clause="b=0")
    parts = [tuple(part1), tuple(part2), tuple(part3)]
    for number, part in enumerate(parts, start=1):
        if not part:
            raise DomainError(f"part P{number} is empty", clause="non-empty parts")
    indices = [i for part in parts for i in part]
    if sorted(indices) != list(range(equation.k)):
        raise DomainError(
            f"parts {parts} do not partition indices 0..{equation.k - 1}", clause="partition"
        )

    p = sum(equation.coeffs[i] for i in parts[0])
    q = sum(equation.coeffs[i] for i in parts[1])
    r = -sum(equation.coeffs[i] for i in parts[2])
    if r < 1:
        raise DomainError(f"r'={r} must be at least 1", clause="r' >= 1")
    if q < r:
        raise DomainError(f"q'={q} is smaller than r'={r}", clause="q' >= r'")
    if p < q:
        raise DomainError(f"p'={p} is smaller than q'={q}", clause="p' >= q'")

    t = math.gcd(p, q, r)
    logger.debug(f"Partition {parts} gives ({p}, {q}, {r}) / {t}")
    return CanonicalTriple(p // t, q // t, r // t)


def scale(equation: LinearEquation, c: int) -> LinearEquation:
    """Multiply the equation by a positive integer."""
    return equation.scaled(c)
