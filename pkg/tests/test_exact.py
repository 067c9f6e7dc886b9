from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bosonorder.exact import (
    FormalSeries,
    MissingBinding,
    MultiPoly,
    NonzeroConstantTerm,
    OrderMismatch,
    exp_lambda,
)

S = MultiPoly.symbol("s")
T = MultiPoly.symbol("t")
ONE = MultiPoly.const(1)
HALF = Fraction(1, 2)


def rationals():
    return st.fractions(
        min_value=-5, max_value=5, max_denominator=6
    )


@st.composite
def polys(draw):
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        mono = tuple(
            (sym, draw(st.integers(1, 3)))
            for sym in draw(st.sets(st.sampled_from(["s", "t", "u"]), max_size=2))
        )
        terms[mono] = terms.get(mono, Fraction(0)) + draw(rationals())
    return MultiPoly(terms)


class TestMultiPoly:
    def test_mul_by_zero_absorbs(self):
        assert ((S + 1) * MultiPoly.zero()).is_zero

    def test_difference_of_squares(self):
        assert (S - 1) * (S + 1) == S * S - 1

    def test_cross_block_factor_sum(self):
        # (t-1)/2 + (t+1)/2 collapses to t
        assert (T - 1) * HALF + (T + 1) * HALF == T

    def test_canonical_no_zero_terms(self):
        p = S - S + MultiPoly.const(0)
        assert p.terms == {}
        assert str(p) == "0"

    def test_eval_kills_antinormal_contraction(self):
        p = (T + 1) * HALF
        assert p.eval({"t": Fraction(-1)}) == 0

    def test_eval_kills_normal_contraction(self):
        p = (S - 1) * HALF
        assert p.eval({"s": 1}) == 0

    def test_eval_weyl_product(self):
        p = (S + 1) * HALF * ((S - 1) * HALF)
        assert p.eval({"s": 0}) == Fraction(-1, 4)

    def test_eval_missing_binding(self):
        with pytest.raises(MissingBinding):
            (S + T).eval({"s": 1})

    def test_substitute_partial(self):
        p = (S + 1) * T
        assert p.substitute({"s": 1}) == 2 * T
        assert p.substitute({"s": 1, "t": Fraction(1, 2)}) == MultiPoly.const(1)

    def test_str_canonical(self):
        p = T * HALF - HALF
        assert str(p) == "(1/2)*t + (-1/2)"

    def test_constant_value(self):
        assert MultiPoly.const(Fraction(3, 4)).constant_value() == Fraction(3, 4)
        with pytest.raises(MissingBinding):
            S.constant_value()

    @given(polys(), polys(), polys())
    @settings(max_examples=60)
    def test_ring_axioms(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(polys(), polys())
    @settings(max_examples=60)
    def test_eval_is_ring_hom(self, a, b):
        env = {"s": Fraction(2, 3), "t": Fraction(-1, 2), "u": Fraction(5)}
        assert (a * b).eval(env) == a.eval(env) * b.eval(env)
        assert (a + b).eval(env) == a.eval(env) + b.eval(env)


def series(coeffs, order):
    return FormalSeries.from_coeffs([Fraction(c) for c in coeffs], order)


class TestFormalSeries:
    def test_mul_truncates(self):
        a = series([1, 1], 2)
        b = series([1, -1], 2)
        assert a * b == series([1, 0, -1], 2)

    def test_exp_inverse(self):
        n = 3
        e = exp_lambda(n)
        einv = exp_lambda(n, -1)
        assert e * einv == FormalSeries.constant(1, n)

    def test_add_zero_identity(self):
        a = series([2, 3, 5], 2)
        assert a + FormalSeries.zero(2) == a

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatch):
            series([1], 1) * series([1], 2)

    def test_exp_of_zero(self):
        assert FormalSeries.zero(4).exp() == FormalSeries.constant(1, 4)

    def test_exp_lambda_coeffs(self):
        e = exp_lambda(4)
        expected = [Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 6), Fraction(1, 24)]
        assert [c.constant_value() for c in e.coeffs] == expected

    def test_exp_requires_zero_constant(self):
        with pytest.raises(NonzeroConstantTerm):
            FormalSeries.constant(1, 3).exp()

    def test_double_exponential_bell_coefficient(self):
        # [lam^4] exp(exp(lam)-1) = B_4 / 4! = 15/24
        inner = exp_lambda(4) - 1
        outer = inner.exp()
        assert outer[4].constant_value() == Fraction(15, 24)

    def test_pow_basics(self):
        em1 = exp_lambda(3) - 1
        assert [c.constant_value() for c in (em1**1).coeffs] == [
            Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 6)
        ]
        assert (em1**2)[2].constant_value() == 1
        assert em1**0 == FormalSeries.constant(1, 3)

    @given(st.lists(rationals(), min_size=1, max_size=5))
    @settings(max_examples=40)
    def test_exp_times_exp_of_negation_is_one(self, coeffs):
        n = 6
        a = FormalSeries.from_coeffs([Fraction(0)] + coeffs, n)
        assert a.exp() * (-a).exp() == FormalSeries.constant(1, n)
