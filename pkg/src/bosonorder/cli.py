"""Command line frontend.

A thin client over the service handlers: by default commands run in-process;
with ``--server URL`` they POST to a running instance of the FastAPI app
instead.  Exit codes: 0 ok, 1 verification failed, 2 usage or input error.
"""

from __future__ import annotations

import json
import sys

import click

from .exact import MissingBinding, NonzeroConstantTerm, OrderMismatch
from .fock import DEFAULT_DIM, DEFAULT_TOL, DegreeTooLarge, UnboundSymbol
from .got import SizeCap
from .operators import LengthCap, UnsupportedOrdering
from .parser import ExprSyntaxError, NestingUnsupported
from .service import core

_INPUT_ERRORS = (
    ExprSyntaxError,
    NestingUnsupported,
    SizeCap,
    LengthCap,
    UnsupportedOrdering,
    UnboundSymbol,
    DegreeTooLarge,
    MissingBinding,
    OrderMismatch,
    NonzeroConstantTerm,
    ValueError,
)


class RemoteError(RuntimeError):
    pass


_ERRORS = _INPUT_ERRORS + (RemoteError,)


def _dispatch(ctx, path: str, payload: dict, local_fn):
    server = ctx.obj.get("server")
    if not server:
        return local_fn()
    import httpx

    resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=60.0)
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("error", resp.text)
        except ValueError:
            detail = resp.text
        raise RemoteError(f"server error ({resp.status_code}): {detail}")
    return resp.json()


def _emit_json(doc: dict):
    click.echo(json.dumps(doc))


def _fail_input(exc: Exception):
    click.echo(f"error: {exc}", err=True)
    sys.exit(2)


@click.group()
@click.option("--server", envvar="BOSON_ORDER_SERVER", default=None,
              help="Base URL of a running boson-order service; default runs in-process.")
@click.option("--format", "fmt", type=click.Choice(["text", "latex", "json"]),
              default="text", show_default=True, help="Output style.")
@click.option("--order", "series_order", type=int, default=12, show_default=True,
              help="Default series truncation order.")
@click.option("--fock-dim", type=int, default=DEFAULT_DIM, show_default=True,
              help="Default Fock-space dimension for verification.")
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True,
              help="Default tolerance for verification.")
@click.pass_context
def main(ctx, server, fmt, series_order, fock_dim, tol):
    """Reorder boson ladder-operator expressions exactly."""
    ctx.ensure_object(dict)
    ctx.obj.update(
        server=server, fmt=fmt, series_order=series_order,
        fock_dim=fock_dim, tol=tol,
    )


@main.command("order")
@click.option("--to", default="normal", show_default=True,
              help="Target ordering: normal|anti|weyl|s=R|sym:NAME.")
@click.argument("expr")
@click.pass_context
def order_cmd(ctx, to, expr):
    """Rewrite EXPR in the target ordering."""
    try:
        doc = _dispatch(ctx, "/order", {"expr": expr, "to": to},
                        lambda: core.do_order(expr, to))
    except _ERRORS as exc:
        _fail_input(exc)
    fmt = ctx.obj["fmt"]
    if fmt == "json":
        doc.pop("text", None)
        doc.pop("latex", None)
        _emit_json(doc)
    else:
        click.echo(doc["latex" if fmt == "latex" else "text"])


@main.command("stirling")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, default=None)
@click.pass_context
def stirling_cmd(ctx, n, k):
    """Stirling numbers of the second kind S(n, k)."""
    try:
        doc = _dispatch(ctx, "/stirling", {"n": n, "k": k},
                        lambda: core.do_stirling(n, k))
    except _ERRORS as exc:
        _fail_input(exc)
    if ctx.obj["fmt"] == "json":
        _emit_json(doc)
    else:
        for row in doc["rows"]:
            click.echo(f"S({doc['n']},{row['k']}) = {row['value']}")


@main.command("bell")
@click.option("--n", type=int, required=True)
@click.option("--x", default=None, help="Evaluate B(n, x) at this rational.")
@click.pass_context
def bell_cmd(ctx, n, x):
    """Bell polynomial B(n, x) coefficients, optionally evaluated."""
    try:
        doc = _dispatch(ctx, "/bell", {"n": n, "x": x},
                        lambda: core.do_bell(n, x))
    except _ERRORS as exc:
        _fail_input(exc)
    if ctx.obj["fmt"] == "json":
        _emit_json(doc)
    else:
        click.echo(f"B({doc['n']}, x) coefficients: {' '.join(doc['coeffs'])}")
        if doc.get("value") is not None:
            click.echo(f"B({doc['n']}, {x}) = {doc['value']}")


@main.command("identity")
@click.option("--name", type=click.Choice(core.IDENTITY_NAMES), required=True)
@click.option("--n", type=int, default=None)
@click.option("--order", "series_order", type=int, default=None)
@click.pass_context
def identity_cmd(ctx, name, n, series_order):
    """Verify one of the built-in closed-form identities."""
    if series_order is None and name in ("normal-exp", "anti-exp"):
        series_order = ctx.obj["series_order"]
    try:
        doc = _dispatch(ctx, "/identity",
                        {"name": name, "n": n, "order": series_order},
                        lambda: core.do_identity_render(name, n, series_order))
    except _ERRORS as exc:
        _fail_input(exc)
    if ctx.obj["fmt"] == "json":
        _emit_json(doc)
    else:
        for row in doc["rows"]:
            tag = "PASS" if row["pass"] else "FAIL"
            click.echo(
                f"{tag} {row['label']}: expected {row['expected']}, "
                f"computed {row['computed']}"
            )
        if doc.get("text"):
            click.echo(doc["text"])
        click.echo("PASS" if doc["passed"] else "FAIL")
    sys.exit(0 if doc["passed"] else 1)


@main.command("verify")
@click.option("--fock-dim", type=int, default=None)
@click.option("--tol", type=float, default=None)
@click.argument("lhs")
@click.argument("eq")
@click.argument("rhs")
@click.pass_context
def verify_cmd(ctx, fock_dim, tol, lhs, eq, rhs):
    """Numerically compare two expressions: verify "expr1" == "expr2"."""
    if eq != "==":
        click.echo("error: expected '==' between the two expressions", err=True)
        sys.exit(2)
    dim = fock_dim if fock_dim is not None else ctx.obj["fock_dim"]
    tolerance = tol if tol is not None else ctx.obj["tol"]
    try:
        doc = _dispatch(
            ctx, "/verify",
            {"lhs": lhs, "rhs": rhs, "fock_dim": dim, "tol": tolerance},
            lambda: core.do_verify(lhs, rhs, dim, tolerance),
        )
    except _ERRORS as exc:
        _fail_input(exc)
    if ctx.obj["fmt"] == "json":
        _emit_json(doc)
    else:
        tag = "PASS" if doc["passed"] else "FAIL"
        click.echo(
            f"{tag} max|diff| = {doc['max_diff']:.3e} on safe block "
            f"{doc['safe_dim']}x{doc['safe_dim']} (D={doc['dim']}, tol={doc['tol']:g})"
        )
    sys.exit(0 if doc["passed"] else 1)


@main.command("parse")
@click.argument("expr")
@click.pass_context
def parse_cmd(ctx, expr):
    """Dump the AST of EXPR as JSON."""
    try:
        doc = _dispatch(ctx, "/parse", {"expr": expr},
                        lambda: core.do_parse(expr))
    except _ERRORS as exc:
        _fail_input(exc)
    _emit_json(doc)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve_cmd(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
