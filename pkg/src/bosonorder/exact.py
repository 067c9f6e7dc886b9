"""Exact coefficient arithmetic.

Sparse multivariate polynomials over the rationals, plus truncated formal
power series in a single expansion variable (written ``lam`` throughout).
Everything here is immutable and exact; no floats ever appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]
Exponents = tuple[tuple[str, int], ...]


class MissingBinding(KeyError):
    """A polynomial was evaluated without a value for one of its symbols."""


class OrderMismatch(ValueError):
    """Two series with different truncation orders were combined."""


class NonzeroConstantTerm(ValueError):
    """series exp requires a vanishing constant coefficient."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected rational scalar, got {type(x).__name__}")


def _mono_mul(a: Exponents, b: Exponents) -> Exponents:
    exps: dict[str, int] = dict(a)
    for sym, e in b:
        exps[sym] = exps.get(sym, 0) + e
    return tuple(sorted(exps.items()))


def _mono_key(mono: Exponents):
    # graded lexicographic: total degree first, then symbol/exponent vector
    return (sum(e for _, e in mono), mono)


class MultiPoly:
    """A multivariate polynomial with Fraction coefficients.

    Terms are stored sparsely as a map from exponent vectors (sorted tuples of
    ``(symbol, power)`` pairs, powers > 0) to nonzero coefficients.  The zero
    polynomial has an empty term map.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponents, Scalar] | None = None):
        clean: dict[Exponents, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            c = _as_fraction(coeff)
            if not c:
                continue
            key = tuple(sorted((s, e) for s, e in mono if e))
            tot = clean.get(key, Fraction(0)) + c
            if tot:
                clean[key] = tot
            else:
                clean.pop(key, None)
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def const(cls, c: Scalar) -> "MultiPoly":
        return cls({(): _as_fraction(c)})

    @classmethod
    def symbol(cls, name: str) -> "MultiPoly":
        if not name:
            raise ValueError("symbol name must be nonempty")
        return cls({((name, 1),): Fraction(1)})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial; raises if symbols remain."""
        if not self._terms:
            return Fraction(0)
        if not self.is_constant:
            raise MissingBinding(sorted(self.symbols())[0])
        return self._terms[()]

    def symbols(self) -> set[str]:
        return {sym for mono in self._terms for sym, _ in mono}

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return None

    def __add__(self, other) -> "MultiPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in o._terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "MultiPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "MultiPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[Exponents, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in o._terms.items():
                key = _mono_mul(ma, mb)
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- evaluation --------------------------------------------------------

    def eval(self, bindings: Mapping[str, Scalar]) -> Fraction:
        """Fully evaluate; every symbol must be bound."""
        total = Fraction(0)
        for mono, c in self._terms.items():
            val = c
            for sym, e in mono:
                if sym not in bindings:
                    raise MissingBinding(sym)
                val *= _as_fraction(bindings[sym]) ** e
            total += val
        return total

    def substitute(self, bindings: Mapping[str, Scalar]) -> "MultiPoly":
        """Partially substitute; unbound symbols survive."""
        out = MultiPoly.zero()
        for mono, c in self._terms.items():
            piece = MultiPoly.const(c)
            for sym, e in mono:
                if sym in bindings:
                    piece = piece * (_as_fraction(bindings[sym]) ** e)
                else:
                    piece = piece * (MultiPoly.symbol(sym) ** e)
            out = out + piece
        return out

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        only_const = self.is_constant
        for mono in sorted(self._terms, key=_mono_key, reverse=True):
            c = self._terms[mono]
            mono_str = "*".join(
                sym if e == 1 else f"{sym}^{e}" for sym, e in mono
            )
            if not mono:
                body = str(c) if only_const else _wrap(c)
            elif c == 1:
                body = mono_str
            else:
                body = f"{_wrap(c)}*{mono_str}"
            pieces.append(body)
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def _wrap(c: Fraction) -> str:
    if c.denominator == 1 and c >= 0:
        return str(c)
    return f"({c})"


ZERO = MultiPoly.zero()
ONE = MultiPoly.const(1)

DEFAULT_SERIES_ORDER = 12


@dataclass(frozen=True)
class FormalSeries:
    """Power series in ``lam`` truncated (inclusively) at ``order``.

    ``coeffs[n]`` is the polynomial coefficient of ``lam**n``; arithmetic
    never looks past the truncation order.
    """

    order: int
    coeffs: tuple[MultiPoly, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient list length must equal order+1")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int) -> "FormalSeries":
        cs = [_to_poly(c) for c in coeffs]
        cs += [ZERO] * (order + 1 - len(cs))
        return cls(order, tuple(cs[: order + 1]))

    @classmethod
    def zero(cls, order: int = DEFAULT_SERIES_ORDER) -> "FormalSeries":
        return cls(order, (ZERO,) * (order + 1))

    @classmethod
    def constant(cls, c, order: int = DEFAULT_SERIES_ORDER) -> "FormalSeries":
        return cls.from_coeffs([_to_poly(c)], order)

    @classmethod
    def lam(cls, order: int = DEFAULT_SERIES_ORDER) -> "FormalSeries":
        return cls.from_coeffs([ZERO, ONE], order)

    # -- access ------------------------------------------------------------

    def __getitem__(self, n: int) -> MultiPoly:
        if not 0 <= n <= self.order:
            raise IndexError(n)
        return self.coeffs[n]

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "FormalSeries"):
        if self.order != other.order:
            raise OrderMismatch(f"orders {self.order} != {other.order}")

    def __add__(self, other) -> "FormalSeries":
        if isinstance(other, FormalSeries):
            self._check(other)
            return FormalSeries(
                self.order,
                tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
            )
        if isinstance(other, (int, Fraction, MultiPoly)):
            cs = list(self.coeffs)
            cs[0] = cs[0] + _to_poly(other)
            return FormalSeries(self.order, tuple(cs))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "FormalSeries":
        return FormalSeries(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (FormalSeries, int, Fraction, MultiPoly)):
            return self + (-other if isinstance(other, FormalSeries) else _to_poly(other) * Fraction(-1))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "FormalSeries":
        if isinstance(other, FormalSeries):
            self._check(other)
            out = [ZERO] * (self.order + 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero:
                    continue
                for j in range(self.order + 1 - i):
                    b = other.coeffs[j]
                    if b.is_zero:
                        continue
                    out[i + j] = out[i + j] + a * b
            return FormalSeries(self.order, tuple(out))
        if isinstance(other, (int, Fraction, MultiPoly)):
            p = _to_poly(other)
            return FormalSeries(self.order, tuple(c * p for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FormalSeries":
        if k < 0:
            raise ValueError("negative series power")
        out = FormalSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exp(self) -> "FormalSeries":
        """Sum a**j / j! up to the truncation order.

        Requires a vanishing constant coefficient so the result stays a
        polynomial-coefficient series.
        """
        if not self.coeffs[0].is_zero:
            raise NonzeroConstantTerm(str(self.coeffs[0]))
        acc = FormalSeries.constant(1, self.order)
        term = FormalSeries.constant(1, self.order)
        for j in range(1, self.order + 1):
            term = term * self * Fraction(1, j)
            acc = acc + term
        return acc

    def substitute(self, bindings: Mapping[str, Scalar]) -> "FormalSeries":
        return FormalSeries(
            self.order, tuple(c.substitute(bindings) for c in self.coeffs)
        )

    def __str__(self) -> str:
        pieces = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            if n == 0:
                pieces.append(str(c))
            else:
                lam = "lam" if n == 1 else f"lam^{n}"
                pieces.append(lam if c == ONE else f"({c})*{lam}")
        return " + ".join(pieces) if pieces else "0"


def _to_poly(x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    return MultiPoly.const(_as_fraction(x))


def exp_lambda(order: int = DEFAULT_SERIES_ORDER, scale: Scalar = 1) -> FormalSeries:
    """The series of exp(scale * lam)."""
    return (FormalSeries.lam(order) * _as_fraction(scale)).exp()
