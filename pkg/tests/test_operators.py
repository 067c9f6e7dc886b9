import itertools
import random

import pytest

from bosonorder.exact import MultiPoly
from bosonorder.operators import (
    A,
    AD,
    ANTINORMAL,
    NORMAL,
    WEYL,
    LengthCap,
    Ordering,
    OrderedPolynomial,
    UnsupportedOrdering,
    expr_combine,
    vacuum_expectation,
    word,
    word_antinormal_order,
    word_normal_order,
    word_order_randomized,
)


def all_words(length):
    return [tuple(w) for w in itertools.product((A, AD), repeat=length)]


class TestOrderingParam:
    def test_concrete_range_enforced(self):
        with pytest.raises(ValueError):
            Ordering(2)
        assert Ordering(1) == NORMAL

    def test_symbolic(self):
        s = Ordering("s")
        assert s.is_symbolic
        assert s.as_poly() == MultiPoly.symbol("s")


class TestNormalOrder:
    def test_single_commutator(self):
        p = word_normal_order(word("a ad"))
        assert p.terms == {(1, 1): MultiPoly.const(1), (0, 0): MultiPoly.const(1)}

    def test_number_squared(self):
        p = word_normal_order(word("ad a ad a"))
        assert p.terms == {(2, 2): MultiPoly.const(1), (1, 1): MultiPoly.const(1)}

    def test_two_by_two(self):
        p = word_normal_order(word("a a ad ad"))
        assert p.terms == {
            (2, 2): MultiPoly.const(1),
            (1, 1): MultiPoly.const(4),
            (0, 0): MultiPoly.const(2),
        }

    def test_empty_word(self):
        assert word_normal_order(()).terms == {(0, 0): MultiPoly.const(1)}

    def test_length_cap(self):
        with pytest.raises(LengthCap):
            word_normal_order((A,) * 17)
        word_normal_order((A,) * 17, max_len=20)


class TestAntinormalOrder:
    def test_single_commutator(self):
        p = word_antinormal_order(word("ad a"))
        assert p.terms == {(1, 1): MultiPoly.const(1), (0, 0): MultiPoly.const(-1)}

    def test_number_squared(self):
        p = word_antinormal_order(word("ad a ad a"))
        assert p.terms == {
            (2, 2): MultiPoly.const(1),
            (1, 1): MultiPoly.const(-3),
            (0, 0): MultiPoly.const(1),
        }

    def test_empty_word(self):
        assert word_antinormal_order(()).terms == {(0, 0): MultiPoly.const(1)}


class TestExprCombine:
    def test_commutator_is_scalar(self):
        p = expr_combine([(2, word("a ad")), (-2, word("ad a"))], NORMAL)
        assert p.terms == {(0, 0): MultiPoly.const(2)}

    def test_cancellation_to_zero(self):
        p = expr_combine(
            [(1, word("a ad")), (-1, word("ad a")), (-1, ())], NORMAL
        )
        assert p.is_zero

    def test_scalar_only(self):
        p = expr_combine([(3, ())], ANTINORMAL)
        assert p.terms == {(0, 0): MultiPoly.const(3)}


class TestVacuumExpectation:
    def test_normal_form_examples(self):
        assert vacuum_expectation(word_normal_order(word("a ad"))) == 1
        for n in range(1, 5):
            p = word_normal_order(word("ad a") * n)
            assert vacuum_expectation(p).is_zero

    def test_antinormal_counts_factorials(self):
        p = word_antinormal_order(word("a a ad ad"))
        assert vacuum_expectation(p) == 2

    def test_agreement_between_forms(self):
        for length in range(7):
            for w in all_words(length):
                lhs = vacuum_expectation(word_normal_order(w))
                rhs = vacuum_expectation(word_antinormal_order(w))
                assert lhs == rhs, w

    def test_unsupported_ordering(self):
        with pytest.raises(UnsupportedOrdering):
            vacuum_expectation(OrderedPolynomial.constant(1, WEYL))


class TestRewritingProperties:
    def test_excess_grading_preserved(self):
        for length in range(7):
            for w in all_words(length):
                excess = w.count(AD) - w.count(A)
                for (m, n) in word_normal_order(w).terms:
                    assert m - n == excess
                for (m, n) in word_antinormal_order(w).terms:
                    assert m - n == excess

    def test_confluence_random_strategies(self):
        rng = random.Random(20240817)
        for length in range(2, 9):
            for _ in range(12):
                w = tuple(rng.choice((A, AD)) for _ in range(length))
                assert word_order_randomized(w, NORMAL, rng) == word_normal_order(w)
                assert word_order_randomized(w, ANTINORMAL, rng) == word_antinormal_order(w)

    def test_coefficients_nonnegative_in_normal_form(self):
        # a ... a ad ... ad products: all normal-form coefficients positive
        for k in range(1, 4):
            p = word_normal_order((A,) * k + (AD,) * k)
            for c in p.terms.values():
                assert c.constant_value() > 0
