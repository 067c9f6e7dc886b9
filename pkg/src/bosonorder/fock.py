"""Numerical oracle on a truncated Fock space.

Operators are realized as dense D x D matrices with a[i-1, i] = sqrt(i).
Truncation corrupts the highest rows/columns, so identities are compared
only on the "safe block": states that an operator of total degree L cannot
connect to the cutoff.  There the truncation error is exactly zero and the
residual is pure floating-point rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .operators import Letter, OrderedPolynomial, Word, ANTINORMAL, NORMAL

DEFAULT_DIM = 32
DEFAULT_TOL = 1e-9


class UnboundSymbol(ValueError):
    """A coefficient or ordering tag still contains a free symbol."""


class DegreeTooLarge(ValueError):
    """The identity's degree leaves no safe block at this dimension."""


@lru_cache(maxsize=None)
def annihilation_matrix(dim: int) -> np.ndarray:
    m = np.zeros((dim, dim))
    for i in range(1, dim):
        m[i - 1, i] = np.sqrt(i)
    m.setflags(write=False)
    return m


@lru_cache(maxsize=None)
def creation_matrix(dim: int) -> np.ndarray:
    m = annihilation_matrix(dim).T.copy()
    m.setflags(write=False)
    return m


def realize_word(w: Word, dim: int = DEFAULT_DIM) -> np.ndarray:
    out = np.eye(dim)
    for letter in w:
        out = out @ (
            creation_matrix(dim) if letter is Letter.CREATION else annihilation_matrix(dim)
        )
    return out


def _monomial_matrix(m: int, n: int, ordering, dim: int) -> np.ndarray:
    ad, a = creation_matrix(dim), annihilation_matrix(dim)
    if ordering == NORMAL:
        return np.linalg.matrix_power(ad, m) @ np.linalg.matrix_power(a, n)
    if ordering == ANTINORMAL:
        return np.linalg.matrix_power(a, n) @ np.linalg.matrix_power(ad, m)
    raise AssertionError("conversion should have produced +1 or -1")


def realize(op, dim: int = DEFAULT_DIM) -> np.ndarray:
    """Matrix of a word or a concretely ordered polynomial.

    Polynomials with a concrete tag other than +/-1 are converted exactly to
    normal form first; symbolic tags or coefficients raise UnboundSymbol.
    """
    if isinstance(op, tuple):
        return realize_word(op, dim)
    if not isinstance(op, OrderedPolynomial):
        raise TypeError(f"cannot realize {type(op).__name__}")
    if op.ordering.is_symbolic:
        raise UnboundSymbol(f"ordering symbol {op.ordering.label()!r}")
    if op.ordering not in (NORMAL, ANTINORMAL):
        from .got import convert_ordering

        op = convert_ordering(op, NORMAL)
    out = np.zeros((dim, dim))
    for (m, n), coeff in op.terms.items():
        if coeff.symbols():
            raise UnboundSymbol(sorted(coeff.symbols())[0])
        out += float(coeff.constant_value()) * _monomial_matrix(m, n, op.ordering, dim)
    return out


def degree(op) -> int:
    if isinstance(op, tuple):
        return len(op)
    if isinstance(op, OrderedPolynomial):
        return op.max_degree
    raise TypeError(f"no degree for {type(op).__name__}")


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    max_diff: float
    dim: int
    safe_dim: int
    tol: float


def identity_check(lhs, rhs, dim: int = DEFAULT_DIM, tol: float = DEFAULT_TOL) -> CheckReport:
    """Compare two operators entrywise on the truncation-safe block."""
    total_degree = max(degree(lhs), degree(rhs))
    safe = dim - total_degree
    if safe < 1:
        raise DegreeTooLarge(
            f"degree {total_degree} leaves no safe block at dimension {dim}"
        )
    diff = realize(lhs, dim)[:safe, :safe] - realize(rhs, dim)[:safe, :safe]
    max_diff = float(np.max(np.abs(diff))) if diff.size else 0.0
    return CheckReport(max_diff <= tol, max_diff, dim, safe, tol)
