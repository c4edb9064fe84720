"""Extremal constructions and closed forms for the largest L-free set."""

import itertools
import logging
import math
from enum import Enum
from fractions import Fraction

from lfree.errors import DensityUnknownError, DomainError
from lfree.models import (
    CanonicalTriple,
    IntegerSet,
    LinearEquation,
    MuCase,
    MultivarMu,
    MuValue,
)

logger = logging.getLogger(__name__)


class MuStarMode(str, Enum):
    """How mu* is evaluated."""

    FORMULA = "formula"
    EXACT_SET = "exact_set"


def ceil_div(a: int, b: int) -> int:
    """Exact ceiling of a / b for b > 0."""
    return -((-a) // b)


def require_ordered(triple: CanonicalTriple) -> None:
    if not triple.ordered:
        raise DomainError(f"{triple} needs p >= q >= r", clause="q >= r")


def interval_In(triple: CanonicalTriple, n: int) -> IntegerSet:  # noqa: N802
    """The interval [floor(r(n-a)/(p+q)) + 1, n] with a = n mod t."""
    a = n % triple.t
    lower = triple.r * (n - a) // (triple.p + triple.q) + 1
    return IntegerSet.interval(n, lower, n)


def residue_Tn(triple: CanonicalTriple, n: int) -> IntegerSet:  # noqa: N802
    """Elements of [n] not divisible by t."""
    t = triple.t
    return IntegerSet.from_members(n, (v for v in range(1, n + 1) if v % t))


def hybrid_An(n: int) -> IntegerSet:  # noqa: N802
    """Odd numbers together with everything above 2n/3 (L-free for 3x + 2y = 2z)."""
    return IntegerSet.from_members(n, (v for v in range(1, n + 1) if v % 2 or 3 * v > 2 * n))


def case_iii_holds(triple: CanonicalTriple) -> bool:
    """Exact integer form of the large-r condition for q not dividing p."""
    if triple.t == 1 or triple.p % triple.q == 0:
        return False
    r1, r2 = triple.r1, triple.r2
    d = r1 * r1 + (r1 - 1) * (r2 - 1)
    return triple.r * d > (r1 * r2 - r1 - r2 + 4) * r2 * ((r1 + 1) * d + (r2 - 1))


def mu_cases(triple: CanonicalTriple, n: int) -> dict[MuCase, int]:
    """Every closed-form value that applies, keyed by case."""
    require_ordered(triple)
    p, q, r, t = triple.p, triple.q, triple.r, triple.t
    values: dict[MuCase, int] = {}
    if p % q == 0:
        if p + q <= r * q:
            values[MuCase.I] = ceil_div((q - 1) * n, q)
        if p + q >= r * q:
            a = n % q
            values[MuCase.II] = ceil_div((p + q - r) * (n - a), p + q) + a
    elif case_iii_holds(triple):
        values[MuCase.III] = ceil_div((t - 1) * n, t)
    return values


def mu_formula(triple: CanonicalTriple, n: int) -> MuValue | None:
    """Closed-form size of the largest L-free subset of [n], if a case applies."""
    values = mu_cases(triple, n)
    if len(set(values.values())) > 1:
        logger.warning(f"Cases disagree for {triple} at n={n}: {values}")
    for case in (MuCase.I, MuCase.III, MuCase.II):
        if case in values:
            return MuValue(values[case], case)
    return None


def mu_case(triple: CanonicalTriple) -> MuCase | None:
    """The closed-form case for a triple, independent of n."""
    cases = mu_cases(triple, 0)
    for case in (MuCase.I, MuCase.III, MuCase.II):
        if case in cases:
            return case
    return None


def mu_density(triple: CanonicalTriple) -> Fraction:
    """Limit of mu(n)/n given by the applicable closed form."""
    p, q, r, t = triple.p, triple.q, triple.r, triple.t
    if r == 1 and p >= 2:
        return Fraction(p + q - 1, p + q)
    case = mu_case(triple)
    if case is MuCase.I:
        return Fraction(q - 1, q)
    if case is MuCase.II:
        return Fraction(p + q - r, p + q)
    if case is MuCase.III:
        return Fraction(t - 1, t)
    raise DensityUnknownError(f"no closed form for mu is known for {triple}")


def mu_star_density(triple: CanonicalTriple) -> Fraction:
    """Density of the elements lying in no solution."""
    return (1 - Fraction(triple.r, triple.q)) * Fraction(triple.t - 1, triple.t)


def _partition_value(
    equation: LinearEquation,
    triple: CanonicalTriple,
    t_prime: int,
    part1: tuple[int, ...],
    part2: tuple[int, ...],
    negatives: list[int],
    n: int,
) -> MultivarMu | None:
    p, q, r, t = triple.p, triple.q, triple.r, triple.t
    a = [equation.coeffs[i] for i in part1]
    b = [equation.coeffs[i] for i in part2]
    partition = (part1, part2)

    single_sides = len(negatives) == 1 and len(part2) == 1
    if single_sides and all(x % b[0] == 0 for x in a) and p + q <= r * q:
        value = ceil_div((q - 1) * n, q)
        return MultivarMu(value, value, MuCase.I, triple, partition)
    logger.debug(f"{partition}: case i needs m=1, l=1, q'=b_1 | a_i and p+q <= rq")

    if p % q != 0 and len(negatives) == 1:
        if all(x % (t * t_prime) == 0 for x in a + b) and case_iii_holds(triple):
            value = ceil_div((t - 1) * n, t)
            return MultivarMu(value, value, MuCase.III, triple, partition)
    logger.debug(f"{partition}: case iii needs m=1, tt' | a_i and b_j, and large r")

    if p % q == 0 and p + q >= r * q:
        rest = n % q
        low = ceil_div((p + q - r) * n, p + q)
        high = ceil_div((p + q - r) * (n - rest), p + q) + rest
        return MultivarMu(low, high, MuCase.II, triple, partition)
    logger.debug(f"{partition}: case ii needs q | p and p+q >= rq")
    return None


def _orientation_results(equation: LinearEquation, n: int) -> list[MultivarMu] | None:
    """Results for one sign orientation; None when its sides do not have the right shape."""
    positives = [i for i, a in enumerate(equation.coeffs) if a > 0]
    negatives = [i for i, a in enumerate(equation.coeffs) if a < 0]
    if not negatives or len(positives) < 2:
        return None

    r_prime = -sum(equation.coeffs[i] for i in negatives)
    found: list[MultivarMu] = []
    for size in range(1, len(positives)):
        for part1 in itertools.combinations(positives, size):
            part2 = tuple(i for i in positives if i not in part1)
            p_prime = sum(equation.coeffs[i] for i in part1)
            q_prime = sum(equation.coeffs[i] for i in part2)
            if not p_prime >= q_prime >= r_prime:
                continue
            t_prime = math.gcd(p_prime, q_prime, r_prime)
            triple = CanonicalTriple(p_prime // t_prime, q_prime // t_prime, r_prime // t_prime)
            result = _partition_value(equation, triple, t_prime, part1, part2, negatives, n)
            if result is not None:
                found.append(result)
    return found


def mu_formula_multivar(equation: LinearEquation, n: int) -> MultivarMu | None:
    """Value or interval for mu of a1x1+...+alxl + b1y1+...+bmym = c1z1+...+cmzm.

    Both sides take a turn as the a/b side, and every split of that side into two
    non-empty groups is tried; an exact value wins over an interval, then the
    narrowest interval. L and -L give the same answer.
    """
    if not equation.homogeneous:
        raise DomainError("equation is not homogeneous", clause="b=0")
    flipped = tuple(-a for a in equation.coeffs)
    shaped = False
    found: list[MultivarMu] = []
    for coeffs in sorted({equation.coeffs, flipped}, reverse=True):
        results = _orientation_results(LinearEquation(coeffs), n)
        if results is None:
            continue
        shaped = True
        found.extend(results)
    if not shaped:
        raise DomainError(
            "need two or more variables on one side and one or more on the other",
            clause="shape",
        )

    if not found:
        return None
    return min(found, key=lambda m: m.high - m.low)


def gm_matching_size(triple: CanonicalTriple, m: int) -> int:
    """Size of the explicit matching in G_M for an L-free set containing M."""
    require_ordered(triple)
    if m < 1 or m % triple.t:
        raise DomainError(f"M={m} must be a positive multiple of t={triple.t}", clause="t | M")
    p, q, r, r1, r2 = triple.p, triple.q, triple.r, triple.r1, triple.r2
    first = r * m // (r2 * (p + q))
    # floor(rM/(r1(p+q)) - 1/r2), never below zero
    inner = max(0, (r * m * r2 - r1 * (p + q)) // (r1 * r2 * (p + q)))
    return first + (r1 * r2 - r1 - r2 + 1) * (inner // (r1 * r2))


def small_elements_bound(triple: CanonicalTriple, m: int, n: int | None = None) -> int:
    """Cap on an L-free set S containing the t-divisible element M.

    Without n: the most elements S can have in [ceil(rM/q) - 1].
    With n (M the largest t-divisible element of S): the most elements S can have.
    """
    matched = gm_matching_size(triple, m)
    if n is None:
        return ceil_div(triple.r * m, triple.q) - 1 - matched
    if n < m:
        raise DomainError(f"n={n} is smaller than M={m}")
    t = triple.t
    return m - matched + ceil_div((n - m) * (t - 1), t)


def mu_star_threshold(triple: CanonicalTriple, n: int) -> int:
    return (triple.r * n - triple.p) // triple.q


def mu_star_set(triple: CanonicalTriple, n: int) -> IntegerSet:
    """Elements above floor((rn - p)/q) that t does not divide."""
    threshold = max(mu_star_threshold(triple, n), 0)
    t = triple.t
    return IntegerSet.from_members(n, (v for v in range(threshold + 1, n + 1) if v % t))


def mu_star(triple: CanonicalTriple, n: int, mode: MuStarMode = MuStarMode.EXACT_SET) -> int:
    """Number of elements in no solution, counted exactly or by the ceiling expression."""
    require_ordered(triple)
    threshold = mu_star_threshold(triple, n)
    t = triple.t
    if MuStarMode(mode) is MuStarMode.FORMULA:
        return ceil_div((n - threshold) * (t - 1), t)
    low = min(max(threshold, 0), n)
    return (n - low) - (n // t - low // t)
