import itertools
import random
from fractions import Fraction

import pytest

from bosonorder.exact import MultiPoly
from bosonorder.got import (
    Block,
    BlockSequence,
    SizeCap,
    compose_transform,
    contraction_factor,
    convert_ordering,
    count_contraction_sets,
    got_transform,
    word_blocks,
)
from bosonorder.combinatorics import stirling2
from bosonorder.operators import (
    A,
    AD,
    ANTINORMAL,
    NORMAL,
    Ordering,
    OrderedPolynomial,
    word,
    word_antinormal_order,
    word_normal_order,
    word_order,
)

S = MultiPoly.symbol("s")
T = MultiPoly.symbol("t")
HALF = Fraction(1, 2)

CONCRETE = [Ordering(Fraction(v)) for v in (-1, Fraction(-1, 2), 0, Fraction(1, 2), 1)]


def all_words(length):
    return [tuple(w) for w in itertools.product((A, AD), repeat=length)]


class TestContractionFactor:
    def test_same_block_vanishes_at_matching_target(self):
        seq = BlockSequence((Block(1, 1, Ordering("s")),), Ordering("s"))
        assert contraction_factor(0, 0, seq).is_zero

    def test_normal_target_kills_creation_first(self):
        seq = BlockSequence((Block(1, 0, NORMAL), Block(0, 1, NORMAL)), NORMAL)
        assert contraction_factor(0, 1, seq).is_zero

    def test_antinormal_target_kills_annihilation_first(self):
        seq = BlockSequence((Block(0, 1, NORMAL), Block(1, 0, NORMAL)), ANTINORMAL)
        assert contraction_factor(1, 0, seq).is_zero

    def test_symbolic_factors(self):
        seq = BlockSequence(
            (Block(1, 1, Ordering("s")), Block(1, 1, Ordering("s"))), Ordering("t")
        )
        assert contraction_factor(0, 0, seq) == (T - S) * HALF
        assert contraction_factor(0, 1, seq) == (T - 1) * HALF
        assert contraction_factor(1, 0, seq) == (T + 1) * HALF


class TestGotTransform:
    def test_number_squared_s_ordered_golden(self):
        seq = BlockSequence((Block(1, 1, NORMAL), Block(1, 1, NORMAL)), Ordering("s"))
        result = got_transform(seq)
        expected = OrderedPolynomial(
            Ordering("s"),
            {
                (2, 2): MultiPoly.const(1),
                (1, 1): (S + 1) * HALF + 3 * ((S - 1) * HALF),
                (0, 0): (S + 1) * HALF * ((S - 1) * HALF) + ((S - 1) * HALF) ** 2,
            },
        )
        assert result == expected

    def test_single_cross_pair(self):
        seq = BlockSequence(
            (Block(0, 1, NORMAL), Block(1, 0, ANTINORMAL)), Ordering("t")
        )
        result = got_transform(seq)
        assert result.terms == {
            (1, 1): MultiPoly.const(1),
            (0, 0): (T + 1) * HALF,
        }
        # specializing t=1 recovers a ad = ad a + 1
        assert result.substitute({"t": 1}) == word_normal_order(word("a ad"))

    def test_single_block_fixed_point(self):
        for o in CONCRETE + [Ordering("s")]:
            seq = BlockSequence((Block(2, 3, o),), o)
            assert got_transform(seq) == OrderedPolynomial.monomial(2, 3, o)

    def test_size_cap(self):
        seq = BlockSequence((Block(11, 10, NORMAL),), NORMAL)
        with pytest.raises(SizeCap):
            got_transform(seq)

    def test_oracle_equivalence_exhaustive_small(self):
        for length in range(7):
            for w in all_words(length):
                assert got_transform(word_blocks(w, NORMAL)) == word_normal_order(w)
                assert got_transform(word_blocks(w, ANTINORMAL)) == word_antinormal_order(w)

    def test_oracle_equivalence_sampled_length_8(self):
        rng = random.Random(7)
        for _ in range(20):
            w = tuple(rng.choice((A, AD)) for _ in range(8))
            assert got_transform(word_blocks(w, NORMAL)) == word_normal_order(w)

    def test_specialization_commutes(self):
        rng = random.Random(11)
        for _ in range(25):
            blocks = tuple(
                Block(rng.randint(0, 2), rng.randint(0, 2), Ordering("s"))
                for _ in range(rng.randint(1, 3))
            )
            seq_sym = BlockSequence(blocks, Ordering("t"))
            if seq_sym.letter_count > 9:
                continue
            sv = Fraction(rng.choice((-2, -1, 0, 1, 2)), 2)
            tv = Fraction(rng.choice((-2, -1, 0, 1, 2)), 2)
            specialized = got_transform(seq_sym).substitute({"s": sv, "t": tv})
            concrete_blocks = tuple(Block(b.dag, b.ann, Ordering(sv)) for b in blocks)
            direct = got_transform(BlockSequence(concrete_blocks, Ordering(tv)))
            assert specialized == direct

    def test_composition_consistency(self):
        rng = random.Random(13)
        for _ in range(15):
            blocks = tuple(
                Block(rng.randint(0, 2), rng.randint(0, 2), rng.choice(CONCRETE))
                for _ in range(3)
            )
            if sum(b.dag + b.ann for b in blocks) > 9:
                continue
            target = rng.choice(CONCRETE)
            mid = rng.choice(CONCRETE)
            direct = got_transform(BlockSequence(blocks, target))
            staged = compose_transform(
                got_transform(BlockSequence(blocks[:2], mid)), blocks[2:], target
            )
            assert direct == staged

    def test_excess_grading(self):
        rng = random.Random(17)
        for _ in range(20):
            blocks = tuple(
                Block(rng.randint(0, 2), rng.randint(0, 2), rng.choice(CONCRETE))
                for _ in range(rng.randint(1, 4))
            )
            if sum(b.dag + b.ann for b in blocks) > 9:
                continue
            excess = sum(b.dag - b.ann for b in blocks)
            for (m, n) in got_transform(BlockSequence(blocks, Ordering("t"))).terms:
                assert m - n == excess


class TestConvertOrdering:
    def test_number_operator_to_symbolic(self):
        p = OrderedPolynomial.monomial(1, 1, NORMAL)
        q = convert_ordering(p, Ordering("t"))
        assert q.terms == {
            (1, 1): MultiPoly.const(1),
            (0, 0): (T - 1) * HALF,
        }
        assert q.substitute({"t": -1}) == word_antinormal_order(word("ad a"))

    def test_identity_on_same_ordering(self):
        p = OrderedPolynomial.monomial(2, 1, Ordering(Fraction(1, 2)))
        assert convert_ordering(p, Ordering(Fraction(1, 2))) is p

    def test_two_two_monomial_to_antinormal(self):
        p = OrderedPolynomial.monomial(2, 2, NORMAL)
        q = convert_ordering(p, ANTINORMAL)
        assert q.terms == {
            (2, 2): MultiPoly.const(1),
            (1, 1): MultiPoly.const(-4),
            (0, 0): MultiPoly.const(2),
        }

    def test_agrees_with_oracle_on_single_blocks(self):
        for m in range(4):
            for n in range(4):
                p = OrderedPolynomial.monomial(m, n, ANTINORMAL)
                via_formula = convert_ordering(p, NORMAL)
                via_oracle = word_normal_order((A,) * n + (AD,) * m)
                assert via_formula == via_oracle

    def test_round_trip(self):
        rng = random.Random(23)
        for _ in range(30):
            sigma, tau = rng.choice(CONCRETE), rng.choice(CONCRETE)
            terms = {
                (rng.randint(0, 3), rng.randint(0, 3)): Fraction(
                    rng.randint(-5, 5), rng.randint(1, 4)
                )
                for _ in range(rng.randint(1, 3))
            }
            p = OrderedPolynomial(sigma, terms)
            assert convert_ordering(convert_ordering(p, tau), sigma) == p


class TestCounting:
    def test_empty_contraction_always_one(self):
        seq = BlockSequence((Block(2, 1, NORMAL), Block(0, 2, ANTINORMAL)), NORMAL)
        assert count_contraction_sets(seq, 0) == 1

    def test_antinormal_counts_are_stirling(self):
        # (a ad)^(n+1) toward anti-normal order: i pairs in S(n+1, n+1-i) ways
        for n in range(6):
            seq = BlockSequence(
                tuple([Block(1, 1, ANTINORMAL)] * (n + 1)), ANTINORMAL
            )
            for i in range(n + 2):
                assert count_contraction_sets(seq, i) == stirling2(n + 1, n + 1 - i)

    def test_specific_values(self):
        seq3 = BlockSequence(tuple([Block(1, 1, ANTINORMAL)] * 3), ANTINORMAL)
        assert count_contraction_sets(seq3, 1) == 3
        seq4 = BlockSequence(tuple([Block(1, 1, ANTINORMAL)] * 4), ANTINORMAL)
        assert count_contraction_sets(seq4, 2) == 7
