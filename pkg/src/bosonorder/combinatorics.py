"""Stirling numbers of the second kind, Bell polynomials, and the
Dobinski-type generating function exp((exp(lam)-1)*x)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .exact import DEFAULT_SERIES_ORDER, FormalSeries, MultiPoly


@dataclass(frozen=True)
class StirlingTable:
    """Triangular table of S(n, k) for 0 <= k <= n <= max_n."""

    max_n: int
    values: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, max_n: int) -> "StirlingTable":
        rows: list[tuple[int, ...]] = [(1,)]
        for n in range(1, max_n + 1):
            prev = rows[-1]
            row = [0] * (n + 1)
            for k in range(1, n + 1):
                row[k] = k * (prev[k] if k < n else 0) + prev[k - 1]
            rows.append(tuple(row))
        return cls(max_n, tuple(rows))

    def get(self, n: int, k: int) -> int:
        if k > n:
            return 0
        return self.values[n][k]


@lru_cache(maxsize=None)
def _table(max_n: int) -> StirlingTable:
    return StirlingTable.build(max_n)


def stirling2(n: int, k: int) -> int:
    """Number of partitions of an n-set into k nonempty blocks."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        return 0
    return _table(max(n, 16)).get(n, k)


@dataclass(frozen=True)
class BellPoly:
    """B(n, x) = sum_k S(n, k) x^k, with B(0, x) = 1."""

    n: int
    coeffs: tuple[int, ...]

    def eval(self, x: Union[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for k, c in enumerate(self.coeffs):
            total += c * Fraction(x) ** k
        return total

    def as_poly(self, symbol: str = "x") -> MultiPoly:
        x = MultiPoly.symbol(symbol)
        out = MultiPoly.zero()
        for k, c in enumerate(self.coeffs):
            out = out + c * x**k
        return out


def bell_poly(n: int) -> BellPoly:
    return BellPoly(n, tuple(stirling2(n, k) for k in range(n + 1)))


def bell_number(n: int) -> int:
    return sum(stirling2(n, k) for k in range(n + 1))


def bell_generating_series(
    x: Union[str, int, Fraction], order: int = DEFAULT_SERIES_ORDER
) -> FormalSeries:
    """Truncated series whose lam^n coefficient is B(n, x) / n!.

    Computed as exp((exp(lam) - 1) * x); x may be a symbol name or an exact
    rational value.
    """
    xp = MultiPoly.symbol(x) if isinstance(x, str) else MultiPoly.const(x)
    em1 = FormalSeries.lam(order).exp() - 1
    return (em1 * xp).exp()
