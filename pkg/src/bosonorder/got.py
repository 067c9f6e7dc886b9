"""Contraction-based reordering engine.

A product of ordered blocks ``{ad^m a^n}_{s_j}`` is rewritten into a single
target-ordered polynomial by summing over all ways of contracting
creation/annihilation pairs.  Each contracted pair is removed and contributes
an exact factor ``(t - u)/2``, where ``u`` is the pair's relative order
parameter: the block's own tag when both letters share a block, ``+1`` when
the creation letter stands left of the annihilation letter across blocks,
and ``-1`` otherwise.

Enumeration is letter-level: letters at distinct positions count as
distinct, which is what produces the ``k! C(m,k) C(n,k)`` multiplicities in
the single-block conversion formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .exact import MultiPoly
from .operators import Letter, Ordering, OrderedPolynomial, Word

DEFAULT_LETTER_CAP = 20


class SizeCap(ValueError):
    """Block sequence exceeds the enumeration letter cap."""


@dataclass(frozen=True)
class Block:
    """One ordered monomial factor {ad^dag a^ann}_ordering."""

    dag: int
    ann: int
    ordering: Ordering

    def __post_init__(self):
        if self.dag < 0 or self.ann < 0:
            raise ValueError("negative letter counts")


@dataclass(frozen=True)
class BlockSequence:
    blocks: tuple[Block, ...]
    target: Ordering

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("block sequence must be nonempty")

    @property
    def letter_count(self) -> int:
        return sum(b.dag + b.ann for b in self.blocks)


def word_blocks(w: Word, target: Ordering) -> BlockSequence:
    """A word as a sequence of single-letter blocks.

    A lone letter is trivially ordered for every tag, so the per-block tag is
    immaterial; the target is used for definiteness.
    """
    blocks = tuple(
        Block(1, 0, target) if letter is Letter.CREATION else Block(0, 1, target)
        for letter in w
    )
    if not blocks:
        blocks = (Block(0, 0, target),)
    return BlockSequence(blocks, target)


def contraction_factor(
    creation_block: int, annihilation_block: int, seq: BlockSequence
) -> MultiPoly:
    """Factor contributed by contracting one creation/annihilation pair."""
    t = seq.target.as_poly()
    if creation_block == annihilation_block:
        u = seq.blocks[creation_block].ordering.as_poly()
    elif creation_block < annihilation_block:
        u = MultiPoly.const(1)
    else:
        u = MultiPoly.const(-1)
    return (t - u) * Fraction(1, 2)


def _factor_table(seq: BlockSequence):
    creations = [j for j, b in enumerate(seq.blocks) for _ in range(b.dag)]
    annihilations = [j for j, b in enumerate(seq.blocks) for _ in range(b.ann)]
    table = [
        [contraction_factor(cj, aj, seq) for aj in annihilations]
        for cj in creations
    ]
    return creations, annihilations, table


def got_transform(seq: BlockSequence, cap: int = DEFAULT_LETTER_CAP) -> OrderedPolynomial:
    """Reorder a block sequence into a single target-ordered polynomial."""
    if seq.letter_count > cap:
        raise SizeCap(f"{seq.letter_count} letters exceeds cap {cap}")
    creations, annihilations, table = _factor_table(seq)
    big_m, big_n = len(creations), len(annihilations)
    acc: dict[tuple[int, int], MultiPoly] = {}

    def rec(a_idx: int, used: int, npairs: int, prod: MultiPoly):
        if a_idx == big_n:
            key = (big_m - npairs, big_n - npairs)
            acc[key] = acc.get(key, MultiPoly.zero()) + prod
            return
        rec(a_idx + 1, used, npairs, prod)
        for c in range(big_m):
            if used >> c & 1:
                continue
            f = table[c][a_idx]
            if f.is_zero:
                continue
            rec(a_idx + 1, used | 1 << c, npairs + 1, prod * f)

    rec(0, 0, 0, MultiPoly.const(1))
    return OrderedPolynomial(seq.target, acc)


def count_contraction_sets(seq: BlockSequence, i: int, cap: int = DEFAULT_LETTER_CAP) -> int:
    """Number of distinct i-pair contraction sets with a nonzero factor."""
    if seq.letter_count > cap:
        raise SizeCap(f"{seq.letter_count} letters exceeds cap {cap}")
    creations, annihilations, table = _factor_table(seq)
    big_m, big_n = len(creations), len(annihilations)
    counts: dict[int, int] = {}

    def rec(a_idx: int, used: int, npairs: int):
        if npairs > i:
            return
        if a_idx == big_n:
            counts[npairs] = counts.get(npairs, 0) + 1
            return
        rec(a_idx + 1, used, npairs)
        for c in range(big_m):
            if used >> c & 1 or table[c][a_idx].is_zero:
                continue
            rec(a_idx + 1, used | 1 << c, npairs + 1)

    rec(0, 0, 0)
    return counts.get(i, 0)


def convert_ordering(p: OrderedPolynomial, target: Ordering) -> OrderedPolynomial:
    """Re-express an ordered polynomial in another ordering, exactly.

    Single-block closed form:
    {ad^m a^n}_sigma = sum_k k! C(m,k) C(n,k) ((tau-sigma)/2)^k {ad^(m-k) a^(n-k)}_tau.
    """
    if target == p.ordering:
        return p
    d = (target.as_poly() - p.ordering.as_poly()) * Fraction(1, 2)
    acc: dict[tuple[int, int], MultiPoly] = {}
    for (m, n), coeff in p.terms.items():
        for k in range(min(m, n) + 1):
            mult = factorial(k) * comb(m, k) * comb(n, k)
            piece = coeff * (d**k) * mult
            key = (m - k, n - k)
            acc[key] = acc.get(key, MultiPoly.zero()) + piece
    return OrderedPolynomial(target, acc)


def compose_transform(
    p: OrderedPolynomial, rest: tuple[Block, ...], target: Ordering,
    cap: int = DEFAULT_LETTER_CAP,
) -> OrderedPolynomial:
    """Multiply an ordered polynomial by further blocks, reordering to target.

    Expands the polynomial multilinearly: each of its monomials becomes a
    block carrying the polynomial's tag.
    """
    out = OrderedPolynomial.zero(target)
    for (m, n), coeff in p.terms.items():
        blocks = (Block(m, n, p.ordering),) + rest
        out = out + got_transform(BlockSequence(blocks, target), cap).scale(coeff)
    return out
