"""Tests for data models."""

import math
from fractions import Fraction

import pytest

from lfree.errors import DomainError
from lfree.models import (
    CanonicalTriple,
    CellOutcome,
    CellStatus,
    IntegerSet,
    LinearEquation,
    Matching,
    MultivarMu,
    MuCase,
    RateExpr,
    VerifyReport,
)


class TestIntegerSet:
    def test_from_members(self):
        s = IntegerSet.from_members(10, [1, 4, 10])
        assert s.to_list() == [1, 4, 10]
        assert len(s) == 3
        assert 4 in s
        assert 5 not in s
        assert 0 not in s

    def test_member_out_of_range(self):
        with pytest.raises(DomainError):
            IntegerSet.from_members(5, [6])

    def test_mask_out_of_range(self):
        with pytest.raises(DomainError):
            IntegerSet(3, 0b1000)

    def test_interval_clamps(self):
        assert IntegerSet.interval(10, 8, 15).to_list() == [8, 9, 10]
        assert IntegerSet.interval(10, 0, 2).to_list() == [1, 2]
        assert len(IntegerSet.interval(10, 7, 3)) == 0

    def test_full_and_empty(self):
        assert IntegerSet.full(4).to_list() == [1, 2, 3, 4]
        assert IntegerSet.full(0).to_list() == []

    def test_set_operations(self):
        a = IntegerSet.from_members(6, [1, 2, 3])
        b = IntegerSet.from_members(6, [3, 4])
        assert (a | b).to_list() == [1, 2, 3, 4]
        assert (a & b).to_list() == [3]
        assert (a - b).to_list() == [1, 2]
        assert IntegerSet.from_members(6, [1, 2]).issubset(a)
        assert a.isdisjoint(IntegerSet.from_members(6, [5, 6]))


class TestLinearEquation:
    def test_needs_two_variables(self):
        with pytest.raises(DomainError):
            LinearEquation((1,))

    def test_zero_coefficient(self):
        with pytest.raises(DomainError):
            LinearEquation((1, 0, -1))

    def test_satisfied_by(self):
        eq = LinearEquation((1, 1, -1))
        assert eq.satisfied_by((1, 2, 3))
        assert not eq.satisfied_by((1, 2, 4))
        assert not eq.satisfied_by((1, 2))

    def test_scaled_keeps_solutions(self):
        eq = LinearEquation((2, 1, -1), 3).scaled(2)
        assert eq.coeffs == (4, 2, -2)
        assert eq.rhs == 6


class TestCanonicalTriple:
    def test_derived_quantities(self):
        triple = CanonicalTriple(6, 4, 1)
        assert triple.t == 2
        assert triple.r1 == 3
        assert triple.r2 == 2
        assert triple.ordered

    def test_requires_p_at_least_q(self):
        with pytest.raises(DomainError):
            CanonicalTriple(1, 2, 1)

    def test_requires_coprime(self):
        with pytest.raises(DomainError):
            CanonicalTriple(2, 2, 2)

    def test_reduced(self):
        assert CanonicalTriple.reduced(2, 4, 2) == CanonicalTriple(2, 1, 1)

    def test_unordered_allowed(self):
        assert not CanonicalTriple(2, 1, 3).ordered

    def test_equation(self):
        assert CanonicalTriple(3, 2, 2).equation().coeffs == (3, 2, -2)


class TestMatching:
    def test_pairs_are_normalized(self):
        m = Matching(((5, 2), (3, 3)))
        assert m.pairs == ((2, 5), (3, 3))
        assert m.size == 2
        assert m.loop_count == 1
        assert m.vertices == {2, 3, 5}

    def test_shared_vertex(self):
        with pytest.raises(DomainError):
            Matching(((1, 2), (2, 3)))


class TestRateExpr:
    def test_rational_comparison(self):
        assert RateExpr(Fraction(1, 3)) < RateExpr(Fraction(1, 2))
        assert RateExpr(Fraction(2, 4)) == RateExpr(Fraction(1, 2))

    def test_log3_against_rational(self):
        # log2(3)/3 = 0.528...
        third = RateExpr(0, Fraction(1, 3))
        assert RateExpr(Fraction(1, 2)) < third
        assert third < RateExpr(Fraction(53, 100))

    def test_compare_matches_floats(self):
        cases = [
            (RateExpr(Fraction(1, 4), Fraction(1, 6)), RateExpr(Fraction(1, 2))),
            (RateExpr(0, Fraction(2, 7)), RateExpr(Fraction(4, 9))),
            (RateExpr(Fraction(-1, 5), Fraction(1, 2)), RateExpr(Fraction(3, 5))),
        ]
        for a, b in cases:
            assert a.compare(b) == (float(a) > float(b)) - (float(a) < float(b))

    def test_arithmetic(self):
        a = RateExpr(Fraction(1, 2), Fraction(1, 3))
        assert a - a == RateExpr()
        assert 2 * a == RateExpr(1, Fraction(2, 3))
        assert (a + a).log3 == Fraction(2, 3)

    def test_float(self):
        assert math.isclose(float(RateExpr(0, 1)), math.log2(3))

    def test_str(self):
        assert str(RateExpr(Fraction(1, 4))) == "1/4"
        assert str(RateExpr(0, Fraction(1, 3))) == "1/3*log2(3)"
        assert str(RateExpr(Fraction(1, 2), Fraction(1, 3))) == "1/2+1/3*log2(3)"

    def test_min_picks_smallest(self):
        rates = [RateExpr(Fraction(1, 2)), RateExpr(0, Fraction(1, 3)), RateExpr(Fraction(2, 5))]
        assert min(rates) == RateExpr(Fraction(2, 5))


def test_multivar_exact():
    """Test that a collapsed interval reports itself as exact."""
    triple = CanonicalTriple(1, 1, 1)
    value = MultivarMu(5, 5, MuCase.II, triple, ((0,), (1,)))
    assert value.exact
    assert not MultivarMu(5, 6, MuCase.II, triple, ((0,), (1,))).exact


class TestVerifyReport:
    def test_totals_and_passed(self):
        report = VerifyReport(
            suite="mu4",
            grid="n=1",
            cells=[
                CellOutcome({"n": 1}, CellStatus.PASS),
                CellOutcome({"n": 2}, CellStatus.SKIP),
                CellOutcome({"n": 3}, CellStatus.FLAG),
            ],
        )
        assert report.passed
        assert report.totals == {"pass": 1, "fail": 0, "skip": 1, "flag": 1, "cells": 3}

    def test_fail_marks_report(self):
        report = VerifyReport("mu4", "n=1", [CellOutcome({"n": 1}, CellStatus.FAIL)])
        assert not report.passed
        assert len(report.failures()) == 1
