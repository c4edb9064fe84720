"""Tests for f_max rates and the best-bound selection."""

from fractions import Fraction

import pytest

from lfree.bounds import (
    DESIGNATED_BOUND,
    best_bound,
    case_label,
    conjectured_rate,
    fmax_lower_exponent,
    fmax_lower_rate,
    fmax_upper_rate,
    fmax_upper_rate_multivar,
    rate_max1,
    rate_max2,
    rate_max3,
    upper_constant,
)
from lfree.errors import DensityUnknownError, DomainError
from lfree.models import CanonicalTriple, LinearEquation, RateExpr


class TestUpperRate:
    def test_schur(self):
        c, rate = fmax_upper_rate(CanonicalTriple(1, 1, 1))
        assert c == Fraction(1, 2)
        assert rate == RateExpr(Fraction(1, 2))

    def test_two_two_one(self):
        c, rate = fmax_upper_rate(CanonicalTriple(2, 2, 1))
        assert c == Fraction(1, 2)
        assert rate == RateExpr(Fraction(1, 4))

    def test_coprime_left(self):
        c, rate = fmax_upper_rate(CanonicalTriple(3, 2, 1))
        assert c == Fraction(34, 45)
        assert rate == RateExpr(Fraction(17, 45))

    @pytest.mark.parametrize("p,q", [(2, 1), (4, 2), (6, 3), (6, 2), (9, 3)])
    def test_divisible_constant(self, p, q):
        triple = CanonicalTriple(p, q, 1)
        assert upper_constant(triple) == 1 - Fraction(q, p + q)

    def test_constant_in_bracket(self):
        for p in range(1, 10):
            for q in range(1, p + 1):
                c = upper_constant(CanonicalTriple.reduced(p, q, 1))
                assert Fraction(1, 2) <= c < 1

    def test_unordered(self):
        with pytest.raises(DomainError):
            fmax_upper_rate(CanonicalTriple(2, 1, 3))


class TestMultivarRate:
    def test_reduces_to_triple(self):
        # 1x + 1y + 1w = z: p = 2, q = 1
        c, rate = fmax_upper_rate_multivar(LinearEquation((1, 1, 1, -1)))
        assert (c, rate) == fmax_upper_rate(CanonicalTriple(2, 1, 1))

    @pytest.mark.parametrize(
        "coeffs,clause",
        [
            ((1, 1, -1, -1), "shape"),
            ((1, -1), "shape"),
            ((1, 2, 1, -1), "p1>=...>=pk"),
            ((2, 2, 1, -2), "pk >= r"),
            ((2, 2, 2, -2), "gcd=1"),
            ((3, 3, 2, -1), "gcd(p,q)=gcd(p1..pk)"),
        ],
    )
    def test_hypotheses(self, coeffs, clause):
        with pytest.raises(DomainError) as exc:
            fmax_upper_rate_multivar(LinearEquation(coeffs))
        assert exc.value.clause == clause

    def test_inhomogeneous(self):
        with pytest.raises(DomainError) as exc:
            fmax_upper_rate_multivar(LinearEquation((1, 1, -1), 2))
        assert exc.value.clause == "b=0"


class TestLowerBound:
    def test_exponent(self):
        assert fmax_lower_exponent(2, 1, 16) == 1
        assert fmax_lower_exponent(2, 1, 24) == 2

    def test_exponent_hypotheses(self):
        with pytest.raises(DomainError) as exc:
            fmax_lower_exponent(2, 2, 10)
        assert exc.value.clause == "q > r >= 1"
        with pytest.raises(DomainError) as exc:
            fmax_lower_exponent(4, 2, 10)
        assert exc.value.clause == "gcd(q,r)=1"

    def test_rates(self):
        assert fmax_lower_rate(CanonicalTriple(2, 2, 1)) == Fraction(1, 4)
        assert fmax_lower_rate(CanonicalTriple(3, 3, 1)) == Fraction(1, 6)
        assert fmax_lower_rate(CanonicalTriple(3, 3, 2)) == conjectured_rate(3, 2)
        assert fmax_lower_rate(CanonicalTriple(2, 1, 1)) is None

    def test_sum_free_rate(self):
        # maximal sum-free sets number 2^(n/4 + o(n))
        assert fmax_lower_rate(CanonicalTriple(1, 1, 1)) == Fraction(1, 4)

    def test_conjectured_rate(self):
        assert conjectured_rate(3, 2) == Fraction(2, 9)


class TestBestBound:
    def test_two_two_one(self):
        report = best_bound(CanonicalTriple(2, 2, 1))
        assert [e.name for e in report.applicable] == ["MainT1", "max1", "max2", "max3"]
        assert report.best.name == "MainT1"
        assert report.best.rate == RateExpr(Fraction(1, 4))
        assert report.case_label == "ii(a)"
        assert report.mu_density == Fraction(3, 4)
        assert report.mu_star_density == Fraction(1, 4)

    def test_case_i_a_picks_max1(self):
        triple = CanonicalTriple(4, 2, 1)
        report = best_bound(triple)
        assert report.case_label == "i(a)"
        assert report.best.name == "max1"
        assert report.entry("max2") is None
        assert report.best.rate == RateExpr(0, Fraction(7, 36))

    def test_designated_bound_is_best(self):
        for triple in (CanonicalTriple(2, 2, 1), CanonicalTriple(4, 2, 1)):
            report = best_bound(triple)
            designated = report.entry(DESIGNATED_BOUND[report.case_label])
            assert designated.rate.compare(report.best.rate) == 0

    def test_needs_p_at_least_two(self):
        with pytest.raises(DomainError) as exc:
            best_bound(CanonicalTriple(1, 1, 1))
        assert exc.value.clause == "p >= 2"

    def test_unknown_density(self):
        with pytest.raises(DensityUnknownError):
            best_bound(CanonicalTriple(3, 2, 2))


class TestComponentRates:
    def test_max1(self):
        assert rate_max1(CanonicalTriple(2, 2, 1)) == RateExpr(0, Fraction(1, 6))

    def test_max2_applicability(self):
        assert rate_max2(CanonicalTriple(2, 2, 1)) == RateExpr(Fraction(1, 4))
        assert rate_max2(CanonicalTriple(4, 2, 1)) is None
        assert rate_max2(CanonicalTriple(2, 1, 1)) is None

    def test_max3(self):
        assert rate_max3(CanonicalTriple(2, 2, 1)) == RateExpr(Fraction(3, 8))

    def test_case_label_r_above_one(self):
        assert case_label(CanonicalTriple(3, 3, 2)) == "i(c)"
        assert case_label(CanonicalTriple(3, 2, 2)) is None
