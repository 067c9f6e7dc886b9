import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from bosonorder.fock import (
    DegreeTooLarge,
    UnboundSymbol,
    annihilation_matrix,
    creation_matrix,
    identity_check,
    realize,
    realize_word,
)
from bosonorder.got import Block, BlockSequence, got_transform
from bosonorder.identities import number_power_antinormal, number_power_normal
from bosonorder.operators import (
    A,
    AD,
    NORMAL,
    Ordering,
    OrderedPolynomial,
    word,
    word_normal_order,
)


class TestMatrices:
    def test_annihilation_entries(self):
        m = realize_word(word("a"), 3)
        assert m[0, 1] == 1
        assert m[1, 2] == pytest.approx(np.sqrt(2))
        assert np.count_nonzero(m) == 2

    def test_number_operator_diagonal(self):
        m = realize_word(word("ad a"), 4)
        assert np.allclose(np.diag(m), [0, 1, 2, 3])

    def test_a_adag_diagonal_on_safe_block(self):
        m = realize_word(word("a ad"), 4)
        assert np.allclose(np.diag(m)[:2], [1, 2])

    def test_commutator_identity(self):
        # sqrt(i)*sqrt(i) rounds by one ulp for non-square i, so the
        # residual is rounding only, far below any verification tolerance
        d = 8
        a, ad = annihilation_matrix(d), creation_matrix(d)
        comm = a @ ad - ad @ a
        assert np.max(np.abs(comm[: d - 2, : d - 2] - np.eye(d - 2))) < 1e-14


class TestRealize:
    def test_polynomial_vs_word(self):
        p = word_normal_order(word("a a ad ad"))
        r = identity_check(word("a a ad ad"), p, dim=16)
        assert r.passed

    def test_weyl_polynomial_realized_via_conversion(self):
        seq = BlockSequence((Block(1, 1, NORMAL), Block(1, 1, NORMAL)), Ordering(0))
        p = got_transform(seq)
        r = identity_check(word("ad a ad a"), p, dim=16)
        assert r.passed

    def test_unbound_symbol(self):
        seq = BlockSequence((Block(1, 1, NORMAL),), Ordering("s"))
        with pytest.raises(UnboundSymbol):
            realize(got_transform(seq), 8)

    def test_degree_too_large(self):
        with pytest.raises(DegreeTooLarge):
            identity_check(word("a") * 8, word("a") * 8, dim=8)


class TestIdentityCheck:
    def test_commutator(self):
        lhs = word_normal_order(word("a ad"))
        rhs = OrderedPolynomial(
            NORMAL, {(1, 1): 1, (0, 0): 1}
        )
        r = identity_check(lhs, rhs, dim=8)
        assert r.passed and r.max_diff == 0.0

    def test_eq6_n2(self):
        r = identity_check(word("ad a") * 2, number_power_antinormal(2), dim=16)
        assert r.passed

    @pytest.mark.parametrize("n", range(1, 5))
    def test_number_powers_both_forms(self, n):
        w = word("ad a") * n
        assert identity_check(w, number_power_normal(n), dim=32).passed
        assert identity_check(w, number_power_antinormal(n), dim=32).passed

    def test_normal_form_matches_words_up_to_length_6(self):
        rng = random.Random(5)
        words = [
            tuple(w)
            for length in range(7)
            for w in itertools.product((A, AD), repeat=length)
        ]
        for w in rng.sample(words, 40):
            r = identity_check(w, word_normal_order(w), dim=32)
            assert r.passed, (w, r)

    def test_fails_on_wrong_identity(self):
        lhs = word("a ad")
        rhs = OrderedPolynomial(NORMAL, {(1, 1): 1})  # missing the +1
        r = identity_check(lhs, rhs, dim=8)
        assert not r.passed
