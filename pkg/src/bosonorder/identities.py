"""Closed-form ordering identities for powers and exponentials of the
number operator ad*a.

``number_power_normal``/``number_power_antinormal`` give the Stirling-number
forms of (ad a)^n in each direction; the ``exp_number_*`` functions give the
exact truncated-series forms of exp(lam * ad a).  ``antinormal_bell_form``
certifies that the Bell-polynomial repackaging of the anti-normal result
collapses to the same coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping

from .combinatorics import stirling2
from .exact import DEFAULT_SERIES_ORDER, FormalSeries, MultiPoly
from .operators import ANTINORMAL, NORMAL, Ordering, OrderedPolynomial


class ConstantTermObstruction(ValueError):
    """The formal inverse cannot cancel a nonzero constant term."""


@dataclass(frozen=True)
class OperatorSeries:
    """Sum over (m, n) of series-valued coefficients of ordered monomials.

    Represents sum_{m,n} c_{m,n}(lam) {ad^m a^n}_ordering exactly through
    lam^order.
    """

    ordering: Ordering
    order: int
    terms: Mapping[tuple[int, int], FormalSeries]

    def __post_init__(self):
        for series in self.terms.values():
            if series.order != self.order:
                raise ValueError("all coefficient series must share the truncation order")

    def coeff(self, m: int, n: int) -> FormalSeries:
        return self.terms.get((m, n), FormalSeries.zero(self.order))

    def lambda_coefficient(self, n: int) -> OrderedPolynomial:
        """The ordered polynomial multiplying lam^n."""
        return OrderedPolynomial(
            self.ordering, {k: s[n] for k, s in self.terms.items()}
        )


def number_power_normal(n: int) -> OrderedPolynomial:
    """(ad a)^n = sum_k S(n, k) ad^k a^k."""
    if n < 1:
        raise ValueError("n must be positive")
    return OrderedPolynomial(
        NORMAL, {(k, k): stirling2(n, k) for k in range(1, n + 1)}
    )


def number_power_antinormal(n: int) -> OrderedPolynomial:
    """(ad a)^n = sum_{k=1}^{n+1} S(n+1, k) (-1)^(n+1-k) a^(k-1) ad^(k-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    return OrderedPolynomial(
        ANTINORMAL,
        {
            (k - 1, k - 1): (-1) ** (n + 1 - k) * stirling2(n + 1, k)
            for k in range(1, n + 2)
        },
    )


def exp_number_normal(order: int = DEFAULT_SERIES_ORDER) -> OperatorSeries:
    """exp(lam ad a) in normal form: term (k, k) carries (exp(lam)-1)^k / k!."""
    em1 = FormalSeries.lam(order).exp() - 1
    terms = {}
    power = FormalSeries.constant(1, order)
    for k in range(order + 1):
        series = power * Fraction(1, factorial(k))
        if not series.is_zero:
            terms[(k, k)] = series
        power = power * em1
    return OperatorSeries(NORMAL, order, terms)


def exp_number_antinormal(order: int = DEFAULT_SERIES_ORDER) -> OperatorSeries:
    """exp(lam ad a) in anti-normal form.

    Term (k, k) carries exp(-lam) * (1 - exp(-lam))^k / k!.
    """
    eml = (FormalSeries.lam(order) * Fraction(-1)).exp()
    one_minus = 1 - eml
    terms = {}
    power = FormalSeries.constant(1, order)
    for k in range(order + 1):
        series = eml * power * Fraction(1, factorial(k))
        if not series.is_zero:
            terms[(k, k)] = series
        power = power * one_minus
    return OperatorSeries(ANTINORMAL, order, terms)


def antinormal_bell_form(n: int) -> OrderedPolynomial:
    """Anti-normal (ad a)^n via the Bell polynomial B(n+1, -ad a).

    Builds (-1)^(n+1) B(n+1, x) at x = -(ad a) inside the anti-normal symbol
    and cancels the formal 1/(ad a) by shifting each (k, k) monomial down to
    (k-1, k-1).  The result is required to coincide with
    :func:`number_power_antinormal`; this operation exists to certify that.
    """
    if n < 1:
        raise ValueError("n must be positive")
    sign = (-1) ** (n + 1)
    terms: dict[tuple[int, int], int] = {}
    for k in range(n + 2):
        c = sign * (-1) ** k * stirling2(n + 1, k)
        if c == 0:
            continue
        if k == 0:
            raise ConstantTermObstruction(
                f"S({n + 1}, 0) = {stirling2(n + 1, 0)} cannot be divided down"
            )
        terms[(k - 1, k - 1)] = c
    return OrderedPolynomial(ANTINORMAL, terms)
