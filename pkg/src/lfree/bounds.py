"""Exponent rates for the number of maximal L-free sets and the choice of the best one."""

import logging
import math
from fractions import Fraction

from lfree.errors import DomainError
from lfree.extremal import ceil_div, mu_case, mu_density, mu_star_density, require_ordered
from lfree.models import BoundEntry, BoundReport, CanonicalTriple, LinearEquation, MuCase, RateExpr

logger = logging.getLogger(__name__)

# Labels of the case analysis; each names the bound it designates as best.
DESIGNATED_BOUND = {
    "i(a)": "max1",
    "i(b)": "max1",
    "i(c)": "max1",
    "ii(a)": "MainT1",
    "ii(b)": "MainT1",
}


def _constant(p: int, q: int, t: int) -> Fraction:
    return 1 - Fraction(t * (p * p + (p - t) * (q - t)), p * p * (p + q))


def upper_constant(triple: CanonicalTriple) -> Fraction:
    """C = 1 - t(p^2 + (p-t)(q-t)) / (p^2 (p+q)), checked to lie in [1/2, 1 - t/(p+q)]."""
    p, q, t = triple.p, triple.q, triple.t
    c = _constant(p, q, t)
    upper = 1 - Fraction(t, p + q)
    if not Fraction(1, 2) <= c <= upper:
        raise AssertionError(f"C={c} for {triple} is outside [1/2, {upper}]")
    return c


def fmax_upper_rate(triple: CanonicalTriple) -> tuple[Fraction, RateExpr]:
    """The constant C and the rate C*r/q of the container upper bound."""
    require_ordered(triple)
    c = upper_constant(triple)
    return c, RateExpr(c * Fraction(triple.r, triple.q))


def fmax_upper_rate_multivar(equation: LinearEquation) -> tuple[Fraction, RateExpr]:
    """The same bound for p1*x1 + ... + pk*xk = r*z.

    Here p is the sum of all but the last left coefficient and q is the last one.
    """
    if not equation.homogeneous:
        raise DomainError("equation is not homogeneous", clause="b=0")
    coeffs = equation.coeffs
    negatives = [a for a in coeffs if a < 0]
    if len(negatives) != 1 or coeffs[-1] > 0:
        raise DomainError("need exactly one negative coefficient, in last place", clause="shape")
    left, r = list(coeffs[:-1]), -coeffs[-1]
    if len(left) < 2:
        raise DomainError("need at least two left-hand variables", clause="shape")
    if any(a < b for a, b in zip(left, left[1:])):
        raise DomainError(f"left coefficients {left} must be non-increasing", clause="p1>=...>=pk")
    if left[-1] < r:
        raise DomainError(f"p_k={left[-1]} is smaller than r={r}", clause="pk >= r")
    if math.gcd(*left, r) != 1:
        raise DomainError("coefficients share a common factor", clause="gcd=1")
    p, q = sum(left[:-1]), left[-1]
    t = math.gcd(p, q)
    if t != math.gcd(*left):
        raise DomainError(
            f"gcd(p, q)={t} differs from gcd{tuple(left)}", clause="gcd(p,q)=gcd(p1..pk)"
        )
    c = _constant(p, q, t)
    return c, RateExpr(c * Fraction(r, q))


def fmax_lower_exponent(q: int, r: int, n: int) -> int:
    """Exponent e with f_max(n) >= 2^e for qx + qy = rz, exact in integers."""
    if not q > r >= 1:
        raise DomainError(f"need q > r >= 1, got q={q}, r={r}", clause="q > r >= 1")
    if math.gcd(q, r) != 1:
        raise DomainError(f"gcd(q, r) must be 1, got q={q}, r={r}", clause="gcd(q,r)=1")
    inner = (r * n - r * q * q) // (2 * q)
    return ceil_div(inner * (q - 1), q) - 1


def conjectured_rate(q: int, r: int) -> Fraction:
    """Conjectured rate r(q-1)/(2q^2) for qx + qy = rz."""
    return Fraction(r * (q - 1), 2 * q * q)


def fmax_lower_rate(triple: CanonicalTriple) -> Fraction | None:
    """Proven lower rate for qx + qy = rz, None when no lower bound is known.

    x + y = z has the sharp count 2^(n/4 + o(n)) for maximal sum-free sets, so its rate
    is 1/4 rather than 1/(2q). Only p = q has a lower-bound construction; other triples
    get None.
    """
    p, q, r = triple.as_tuple()
    if p != q:
        return None
    if (p, q, r) == (1, 1, 1):
        return Fraction(1, 4)
    if r == 1 and q >= 2:
        return Fraction(1, 2 * q)
    if q > r >= 2:
        return conjectured_rate(q, r)
    return None


def rate_max1(triple: CanonicalTriple) -> RateExpr:
    """3^((mu - mu*)/3) written as a power of two."""
    return RateExpr(0, (mu_density(triple) - mu_star_density(triple)) / 3)


def rate_max2(triple: CanonicalTriple) -> RateExpr | None:
    p, q, r, t = triple.p, triple.q, triple.r, triple.t
    if not (r == 1 and q >= 2 and t == q and p <= q * q - q):
        return None
    return RateExpr((mu_density(triple) - mu_star_density(triple)) / 2)


def rate_max3(triple: CanonicalTriple) -> RateExpr:
    return RateExpr(Fraction(triple.r, triple.q) * mu_density(triple))


def case_label(triple: CanonicalTriple) -> str | None:
    """Which branch of the best-bound case analysis a triple falls into."""
    p, q, r, t = triple.p, triple.q, triple.r, triple.t
    if r == 1:
        k = q * q - q + 2 * p * q - p
        # p(q(3 - 2a) + a) >= (q^2 - q)a with a = log2(3)
        beats = RateExpr(0, k) <= RateExpr(3 * p * q)
        if t == q and q <= 9 and p >= q * q and beats:
            return "i(a)"
        return "ii(a)"
    eligible = p != q or 2 <= q <= 18
    case = mu_case(triple)
    if p % q == 0 and p + q >= r * q and eligible:
        return "i(c)"
    if case in (MuCase.I, MuCase.III) and eligible:
        return "i(b)"
    if case in (MuCase.I, MuCase.III) and p == q >= 19:
        return "ii(b)"
    return None


def best_bound(triple: CanonicalTriple) -> BoundReport:
    """Every applicable upper rate, the smallest of them and the case label."""
    require_ordered(triple)
    if triple.p < 2:
        raise DomainError(f"{triple} needs p >= 2", clause="p >= 2")
    mu_d = mu_density(triple)
    star_d = mu_star_density(triple)
    _, main_rate = fmax_upper_rate(triple)

    entries = [BoundEntry("MainT1", main_rate, "p >= q >= r, gcd(p,q,r)=1")]
    entries.append(BoundEntry("max1", rate_max1(triple), "homogeneous three-variable"))
    max2 = rate_max2(triple)
    if max2 is not None:
        entries.append(BoundEntry("max2", max2, "r=1, gcd(p,q)=q, p <= q^2-q"))
    entries.append(BoundEntry("max3", rate_max3(triple), "p >= q >= r"))

    best = min(entries, key=lambda e: e.rate)
    label = case_label(triple)
    logger.debug(f"{triple}: best {best.name} at {best.rate}, case {label}")
    return BoundReport(
        equation=triple,
        applicable=tuple(entries),
        best=best,
        case_label=label,
        mu_density=mu_d,
        mu_star_density=star_d,
    )
