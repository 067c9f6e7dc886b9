"""Engine-facing handlers shared by the HTTP endpoints and the CLI.

Each handler takes plain values and returns JSON-friendly dicts; both
frontends are thin wrappers over these functions.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

import numpy as np

from ..combinatorics import bell_poly, stirling2
from ..exact import DEFAULT_SERIES_ORDER
from ..fock import DEFAULT_DIM, DEFAULT_TOL, DegreeTooLarge, UnboundSymbol, realize
from ..got import BlockSequence, got_transform
from ..identities import (
    antinormal_bell_form,
    exp_number_antinormal,
    exp_number_normal,
    number_power_antinormal,
    number_power_normal,
)
from ..operators import (
    ANTINORMAL,
    NORMAL,
    WEYL,
    Ordering,
    OrderedPolynomial,
    word,
    word_antinormal_order,
    word_normal_order,
)
from ..parser import lower, parse, ast_to_dict
from ..render import (
    poly_to_json_dict,
    render_poly_latex,
    render_poly_text,
    render_series_text,
    series_to_json_dict,
)

IDENTITY_NAMES = (
    "normal-exp",
    "anti-exp",
    "number-power-normal",
    "number-power-anti",
    "bell-form",
)


def parse_ordering_token(token: str) -> Ordering:
    token = token.strip()
    if token in ("normal", "n", "+1", "1"):
        return NORMAL
    if token in ("anti", "antinormal", "-1"):
        return ANTINORMAL
    if token in ("weyl", "w", "0"):
        return WEYL
    if token.startswith("s="):
        return Ordering(Fraction(token[2:]))
    if token.startswith("sym:"):
        return Ordering(token[4:])
    raise ValueError(f"unknown ordering {token!r}")


def order_expression(expr: str, to: str = "normal") -> OrderedPolynomial:
    target = parse_ordering_token(to)
    summands = lower(parse(expr))
    out = OrderedPolynomial.zero(target)
    for coeff, blocks in summands:
        if blocks:
            piece = got_transform(BlockSequence(blocks, target)).scale(coeff)
        else:
            piece = OrderedPolynomial.constant(coeff, target)
        out = out + piece
    return out


def do_order(expr: str, to: str = "normal") -> dict:
    result = order_expression(expr, to)
    doc = poly_to_json_dict(result)
    doc["text"] = render_poly_text(result)
    doc["latex"] = render_poly_latex(result)
    return doc


def do_stirling(n: int, k: int | None = None) -> dict:
    if n < 0 or (k is not None and k < 0):
        raise ValueError("n and k must be nonnegative")
    ks = range(n + 1) if k is None else [k]
    return {"n": n, "rows": [{"k": kk, "value": stirling2(n, kk)} for kk in ks]}


def do_bell(n: int, x: str | None = None) -> dict:
    if n < 0:
        raise ValueError("n must be nonnegative")
    bp = bell_poly(n)
    out = {"n": n, "coeffs": [str(c) for c in bp.coeffs]}
    if x is not None:
        out["value"] = str(bp.eval(Fraction(x)))
    return out


def do_parse(expr: str) -> dict:
    return {"ast": ast_to_dict(parse(expr))}


# -- verify ----------------------------------------------------------------


def _realize_expr(expr: str, dim: int):
    """Realize a parsed expression as a sum of block-matrix products.

    This path multiplies per-block matrices directly and never runs the
    contraction enumeration, so it is an independent check of `order`.
    """
    summands = lower(parse(expr))
    total = np.zeros((dim, dim))
    max_degree = 0
    for coeff, blocks in summands:
        if coeff.symbols():
            raise UnboundSymbol(sorted(coeff.symbols())[0])
        piece = np.eye(dim) * float(coeff.constant_value())
        deg = 0
        for b in blocks:
            mono = OrderedPolynomial.monomial(b.dag, b.ann, b.ordering)
            piece = piece @ realize(mono, dim)
            deg += b.dag + b.ann
        total += piece
        max_degree = max(max_degree, deg)
    return total, max_degree


def do_verify(lhs: str, rhs: str, dim: int = DEFAULT_DIM, tol: float = DEFAULT_TOL) -> dict:
    left, dl = _realize_expr(lhs, dim)
    right, dr = _realize_expr(rhs, dim)
    total_degree = max(dl, dr)
    safe = dim - total_degree
    if safe < 1:
        raise DegreeTooLarge(
            f"degree {total_degree} leaves no safe block at dimension {dim}"
        )
    diff = np.abs(left[:safe, :safe] - right[:safe, :safe])
    max_diff = float(diff.max()) if diff.size else 0.0
    return {
        "passed": bool(max_diff <= tol),
        "max_diff": max_diff,
        "dim": dim,
        "safe_dim": safe,
        "tol": tol,
    }


# -- identity reports ------------------------------------------------------


def _poly_rows(computed: OrderedPolynomial, expected: OrderedPolynomial, label: str):
    keys = sorted(set(computed.terms) | set(expected.terms))
    rows = []
    for m, n in keys:
        exp_c, got_c = expected.coeff(m, n), computed.coeff(m, n)
        rows.append(
            {
                "label": f"{label} (m={m}, n={n})",
                "expected": str(exp_c),
                "computed": str(got_c),
                "pass": exp_c == got_c,
            }
        )
    return rows


def do_identity(name: str, n: int | None = None, order: int | None = None) -> dict:
    """Verification report: computed closed form vs an independent route."""
    if name not in IDENTITY_NAMES:
        raise ValueError(f"unknown identity {name!r}; choose from {IDENTITY_NAMES}")
    rows = []
    if name == "number-power-normal":
        n = n or 5
        computed = number_power_normal(n)
        oracle = word_normal_order(word("ad a") * n, max_len=2 * n)
        rows = _poly_rows(computed, oracle, f"(ad a)^{n} normal")
    elif name == "number-power-anti":
        n = n or 5
        computed = number_power_antinormal(n)
        oracle = word_antinormal_order(word("ad a") * n, max_len=2 * n)
        rows = _poly_rows(computed, oracle, f"(ad a)^{n} anti-normal")
    elif name == "bell-form":
        n = n or 5
        rows = _poly_rows(
            antinormal_bell_form(n),
            number_power_antinormal(n),
            f"Bell form n={n}",
        )
    elif name == "normal-exp":
        order = order if order is not None else DEFAULT_SERIES_ORDER
        series = exp_number_normal(order)
        for nn in range(order + 1):
            for k in range(nn + 1):
                got_v = series.coeff(k, k)[nn].constant_value() * factorial(nn)
                exp_v = Fraction(stirling2(nn, k))
                rows.append(
                    {
                        "label": f"n={nn}, k={k}",
                        "expected": str(exp_v),
                        "computed": str(got_v),
                        "pass": got_v == exp_v,
                    }
                )
    elif name == "anti-exp":
        order = order if order is not None else DEFAULT_SERIES_ORDER
        series = exp_number_antinormal(order)
        for nn in range(order + 1):
            for k in range(nn + 1):
                got_v = series.coeff(k, k)[nn].constant_value() * factorial(nn)
                exp_v = Fraction((-1) ** (nn - k) * stirling2(nn + 1, k + 1))
                rows.append(
                    {
                        "label": f"n={nn}, k={k}",
                        "expected": str(exp_v),
                        "computed": str(got_v),
                        "pass": got_v == exp_v,
                    }
                )
    return {
        "identity": name,
        "rows": rows,
        "passed": all(r["pass"] for r in rows),
    }


def do_identity_render(name: str, n: int | None, order: int | None) -> dict:
    """Identity report plus the rendered closed form itself."""
    report = do_identity(name, n, order)
    if name == "number-power-normal":
        report["text"] = render_poly_text(number_power_normal(n or 5))
    elif name == "number-power-anti":
        report["text"] = render_poly_text(number_power_antinormal(n or 5))
    elif name == "bell-form":
        report["text"] = render_poly_text(antinormal_bell_form(n or 5))
    elif name == "normal-exp":
        report["text"] = render_series_text(
            exp_number_normal(order if order is not None else DEFAULT_SERIES_ORDER)
        )
    elif name == "anti-exp":
        report["text"] = render_series_text(
            exp_number_antinormal(order if order is not None else DEFAULT_SERIES_ORDER)
        )
    return report
