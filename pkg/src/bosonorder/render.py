"""Deterministic text, LaTeX, and JSON rendering of ordered results.

The text form round-trips through the expression grammar; the JSON schema is
versioned as "boson-order/1".
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exact import MultiPoly, ONE
from .identities import OperatorSeries
from .operators import ANTINORMAL, NORMAL, Ordering, OrderedPolynomial, WEYL

JSON_SCHEMA = "boson-order/1"

STYLES = ("text", "latex", "json")


def _mono_text(m: int, n: int) -> str:
    parts = []
    if m:
        parts.append("ad" if m == 1 else f"ad^{m}")
    if n:
        parts.append("a" if n == 1 else f"a^{n}")
    return " ".join(parts)


def _coeff_text(c: MultiPoly) -> str:
    return f"({c})"


def _ordering_json(o: Ordering):
    if o.is_symbolic:
        return {"symbol": o.value}
    v: Fraction = o.value
    return int(v) if v.denominator == 1 else str(v)


def _ordering_text(o: Ordering) -> str:
    return str(o.value)


def _wrap_text(o: Ordering, body: str) -> str:
    if o == NORMAL:
        return f"N[{body}]"
    if o == ANTINORMAL:
        return f"A[{body}]"
    if o == WEYL:
        return f"W[{body}]"
    return f"S[{_ordering_text(o)}; {body}]"


def render_poly_text(p: OrderedPolynomial) -> str:
    if p.is_zero:
        return "0"
    pieces = []
    for (m, n), c in p.sorted_terms():
        mono = _mono_text(m, n)
        if not mono:
            pieces.append(_coeff_text(c))
        elif c == ONE:
            pieces.append(mono)
        else:
            pieces.append(f"{_coeff_text(c)} {mono}")
    return _wrap_text(p.ordering, " + ".join(pieces))


def _mono_latex(m: int, n: int) -> str:
    parts = []
    if m:
        parts.append(r"a^{\dagger}" if m == 1 else r"a^{\dagger %d}" % m)
    if n:
        parts.append("a" if n == 1 else "a^{%d}" % n)
    return " ".join(parts)


def render_poly_latex(p: OrderedPolynomial) -> str:
    if p.is_zero:
        return "0"
    pieces = []
    for (m, n), c in p.sorted_terms():
        mono = _mono_latex(m, n)
        if not mono:
            pieces.append(f"({c})")
        elif c == ONE:
            pieces.append(mono)
        else:
            pieces.append(f"({c}) {mono}")
    body = " + ".join(pieces)
    if p.ordering == NORMAL:
        return f":{body}:"
    if p.ordering == ANTINORMAL:
        return rf"\vdots {body} \vdots"
    return rf"\{{{body}\}}_{{{_ordering_text(p.ordering)}}}"


def poly_to_json_dict(p: OrderedPolynomial) -> dict:
    return {
        "schema": JSON_SCHEMA,
        "ordering": _ordering_json(p.ordering),
        "terms": [
            {"m": m, "n": n, "coeff": str(c)} for (m, n), c in p.sorted_terms()
        ],
    }


def series_to_json_dict(s: OperatorSeries) -> dict:
    return {
        "schema": JSON_SCHEMA,
        "ordering": _ordering_json(s.ordering),
        "order": s.order,
        "terms": [
            {"m": m, "n": n, "coeff_series": [str(c) for c in fs.coeffs]}
            for (m, n), fs in sorted(s.terms.items())
        ],
    }


def render_series_text(s: OperatorSeries) -> str:
    pieces = []
    for (m, n), fs in sorted(s.terms.items()):
        mono = _mono_text(m, n) or "1"
        pieces.append(f"({fs}) {mono}")
    body = " + ".join(pieces) if pieces else "0"
    return _wrap_text(s.ordering, body)


def render(obj, style: str = "text") -> str:
    """Render an OrderedPolynomial or OperatorSeries in the given style."""
    if style not in STYLES:
        raise ValueError(f"unknown style {style!r}")
    if isinstance(obj, OrderedPolynomial):
        if style == "text":
            return render_poly_text(obj)
        if style == "latex":
            return render_poly_latex(obj)
        return json.dumps(poly_to_json_dict(obj))
    if isinstance(obj, OperatorSeries):
        if style == "text":
            return render_series_text(obj)
        if style == "latex":
            raise ValueError("latex rendering of operator series is not supported")
        return json.dumps(series_to_json_dict(obj))
    raise TypeError(f"cannot render {type(obj).__name__}")
