"""Noncommutative words in the two ladder letters and their canonical
ordered forms.

The rewriting functions here are the ground-truth oracle for the whole
engine: they order a word by exhaustively applying the commutator
``a ad -> ad a + 1`` (or its inverse) until no misordered adjacent pair
remains.  They are deliberately naive; the contraction engine in
:mod:`bosonorder.got` is the production path.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .exact import MultiPoly, Scalar


class Letter(enum.Enum):
    ANNIHILATION = "a"
    CREATION = "ad"

    def __repr__(self):
        return self.value


A = Letter.ANNIHILATION
AD = Letter.CREATION

Word = tuple[Letter, ...]


def word(text: str) -> Word:
    """Convenience constructor: whitespace-separated 'a' / 'ad' tokens."""
    out = []
    for tok in text.split():
        if tok == "a":
            out.append(A)
        elif tok in ("ad", "a†"):
            out.append(AD)
        else:
            raise ValueError(f"unknown letter {tok!r}")
    return tuple(out)


class UnsupportedOrdering(ValueError):
    """Operation requires a concrete normal or anti-normal ordering tag."""


class LengthCap(ValueError):
    """Word exceeds the rewriting oracle's length cap."""


@dataclass(frozen=True)
class Ordering:
    """Ordering tag: a rational in [-1, 1] or a symbol name.

    +1 is normal, -1 anti-normal, 0 Weyl-symmetric.
    """

    value: Union[Fraction, str]

    def __post_init__(self):
        v = self.value
        if isinstance(v, int):
            object.__setattr__(self, "value", Fraction(v))
            v = self.value
        if isinstance(v, Fraction):
            if not -1 <= v <= 1:
                raise ValueError(f"concrete ordering {v} outside [-1, 1]")
        elif not isinstance(v, str) or not v:
            raise TypeError("ordering must be a rational or a symbol name")

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.value, str)

    def as_poly(self) -> MultiPoly:
        if self.is_symbolic:
            return MultiPoly.symbol(self.value)
        return MultiPoly.const(self.value)

    def label(self) -> str:
        return str(self.value)


NORMAL = Ordering(Fraction(1))
ANTINORMAL = Ordering(Fraction(-1))
WEYL = Ordering(Fraction(0))

Key = tuple[int, int]  # (creation count m, annihilation count n)


def _display_key(key: Key):
    m, n = key
    return (m + n, m)


class OrderedPolynomial:
    """Finite sum of ordered monomials sharing one ordering tag.

    ``terms`` maps ``(m, n)`` (creation and annihilation counts) to an exact
    polynomial coefficient; zero coefficients are never stored.
    """

    __slots__ = ("ordering", "_terms")

    def __init__(self, ordering: Ordering, terms: Mapping[Key, object] | None = None):
        self.ordering = ordering
        clean: dict[Key, MultiPoly] = {}
        for (m, n), c in (terms or {}).items():
            if m < 0 or n < 0:
                raise ValueError("negative letter counts")
            p = c if isinstance(c, MultiPoly) else MultiPoly.const(c)
            if p.is_zero:
                continue
            tot = clean.get((m, n), MultiPoly.zero()) + p
            if tot.is_zero:
                clean.pop((m, n), None)
            else:
                clean[(m, n)] = tot
        self._terms = clean

    @classmethod
    def zero(cls, ordering: Ordering) -> "OrderedPolynomial":
        return cls(ordering)

    @classmethod
    def constant(cls, c, ordering: Ordering) -> "OrderedPolynomial":
        return cls(ordering, {(0, 0): c})

    @classmethod
    def monomial(cls, m: int, n: int, ordering: Ordering, coeff=1) -> "OrderedPolynomial":
        return cls(ordering, {(m, n): coeff})

    @property
    def terms(self) -> Mapping[Key, MultiPoly]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def max_degree(self) -> int:
        return max((m + n for m, n in self._terms), default=0)

    def coeff(self, m: int, n: int) -> MultiPoly:
        return self._terms.get((m, n), MultiPoly.zero())

    def sorted_terms(self) -> list[tuple[Key, MultiPoly]]:
        return [
            (k, self._terms[k])
            for k in sorted(self._terms, key=_display_key, reverse=True)
        ]

    def __add__(self, other: "OrderedPolynomial") -> "OrderedPolynomial":
        if not isinstance(other, OrderedPolynomial):
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.ordering != other.ordering:
            raise UnsupportedOrdering("cannot add differently ordered polynomials")
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, MultiPoly.zero()) + c
        return OrderedPolynomial(self.ordering, out)

    def scale(self, c) -> "OrderedPolynomial":
        p = c if isinstance(c, MultiPoly) else MultiPoly.const(c)
        return OrderedPolynomial(
            self.ordering, {k: v * p for k, v in self._terms.items()}
        )

    def substitute(self, bindings: Mapping[str, Scalar]) -> "OrderedPolynomial":
        """Substitute symbols in coefficients and in a symbolic ordering tag."""
        ordering = self.ordering
        if ordering.is_symbolic and ordering.value in bindings:
            ordering = Ordering(Fraction(bindings[ordering.value]))
        return OrderedPolynomial(
            ordering, {k: v.substitute(bindings) for k, v in self._terms.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrderedPolynomial):
            return NotImplemented
        if self.is_zero and other.is_zero:
            return True
        return self.ordering == other.ordering and self._terms == other._terms

    def __hash__(self):
        return hash((self.ordering, frozenset(self._terms.items())))

    def __repr__(self):
        body = " + ".join(
            f"({c})*[{m},{n}]" for (m, n), c in self.sorted_terms()
        )
        return f"OrderedPolynomial({self.ordering.label()}; {body or '0'})"


REWRITE_LENGTH_CAP = 16

TermMap = tuple[tuple[Key, int], ...]


def _merge(maps: Iterable[tuple[TermMap, int]]) -> TermMap:
    acc: dict[Key, int] = {}
    for tm, sign in maps:
        for k, c in tm:
            acc[k] = acc.get(k, 0) + sign * c
    return tuple(sorted((k, c) for k, c in acc.items() if c))


@lru_cache(maxsize=None)
def _normal_map(w: Word) -> TermMap:
    for i in range(len(w) - 1):
        if w[i] is A and w[i + 1] is AD:
            swapped = w[:i] + (AD, A) + w[i + 2 :]
            deleted = w[:i] + w[i + 2 :]
            return _merge([(_normal_map(swapped), 1), (_normal_map(deleted), 1)])
    return (((w.count(AD), w.count(A)), 1),)


@lru_cache(maxsize=None)
def _antinormal_map(w: Word) -> TermMap:
    for i in range(len(w) - 1):
        if w[i] is AD and w[i + 1] is A:
            swapped = w[:i] + (A, AD) + w[i + 2 :]
            deleted = w[:i] + w[i + 2 :]
            return _merge(
                [(_antinormal_map(swapped), 1), (_antinormal_map(deleted), -1)]
            )
    return (((w.count(AD), w.count(A)), 1),)


def _check_cap(w: Word, max_len: int):
    if len(w) > max_len:
        raise LengthCap(f"word length {len(w)} exceeds cap {max_len}")


def word_normal_order(w: Word, max_len: int = REWRITE_LENGTH_CAP) -> OrderedPolynomial:
    """Canonical normal form of a word, by exhaustive commutator rewriting."""
    _check_cap(w, max_len)
    return OrderedPolynomial(NORMAL, dict(_normal_map(tuple(w))))


def word_antinormal_order(
    w: Word, max_len: int = REWRITE_LENGTH_CAP
) -> OrderedPolynomial:
    """Canonical anti-normal form of a word."""
    _check_cap(w, max_len)
    return OrderedPolynomial(ANTINORMAL, dict(_antinormal_map(tuple(w))))


def word_order(w: Word, target: Ordering, max_len: int = REWRITE_LENGTH_CAP) -> OrderedPolynomial:
    if target == NORMAL:
        return word_normal_order(w, max_len)
    if target == ANTINORMAL:
        return word_antinormal_order(w, max_len)
    raise UnsupportedOrdering("rewriting oracle only targets +1 or -1")


def word_order_randomized(
    w: Word, target: Ordering, rng: random.Random
) -> OrderedPolynomial:
    """Like word_order but picking rewrite sites at random (confluence tests)."""
    if target == NORMAL:
        bad, repl, sign = (A, AD), (AD, A), 1
    elif target == ANTINORMAL:
        bad, repl, sign = (AD, A), (A, AD), -1
    else:
        raise UnsupportedOrdering("rewriting oracle only targets +1 or -1")
    work: list[tuple[int, Word]] = [(1, tuple(w))]
    acc: dict[Key, int] = {}
    while work:
        coeff, cur = work.pop()
        sites = [
            i
            for i in range(len(cur) - 1)
            if (cur[i], cur[i + 1]) == bad
        ]
        if not sites:
            k = (cur.count(AD), cur.count(A))
            acc[k] = acc.get(k, 0) + coeff
            continue
        i = rng.choice(sites)
        work.append((coeff, cur[:i] + repl + cur[i + 2 :]))
        work.append((sign * coeff, cur[:i] + cur[i + 2 :]))
    return OrderedPolynomial(target, acc)


def expr_combine(
    terms: Iterable[tuple[object, Word]],
    target: Ordering,
    max_len: int = REWRITE_LENGTH_CAP,
) -> OrderedPolynomial:
    """Order a linear combination of words toward one concrete target."""
    out = OrderedPolynomial.zero(target)
    for coeff, w in terms:
        out = out + word_order(tuple(w), target, max_len).scale(coeff)
    return out


def vacuum_expectation(p: OrderedPolynomial) -> MultiPoly:
    """Ground-state matrix element of a canonically ordered polynomial."""
    if p.ordering == NORMAL:
        return p.coeff(0, 0)
    if p.ordering == ANTINORMAL:
        total = MultiPoly.zero()
        for (m, n), c in p.terms.items():
            if m == n:
                total = total + c * math.factorial(m)
        return total
    raise UnsupportedOrdering(f"vacuum expectation needs +1 or -1, got {p.ordering.label()}")
