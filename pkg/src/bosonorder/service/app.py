"""FastAPI service exposing the ordering engine."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..exact import MissingBinding, NonzeroConstantTerm, OrderMismatch
from ..fock import DegreeTooLarge, UnboundSymbol
from ..got import SizeCap
from ..operators import LengthCap, UnsupportedOrdering
from ..parser import ExprSyntaxError, NestingUnsupported
from . import core
from .models import (
    BellRequest,
    BellResponse,
    IdentityRequest,
    IdentityResponse,
    OrderRequest,
    OrderResponse,
    ParseRequest,
    ParseResponse,
    StirlingRequest,
    StirlingResponse,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(
    title="boson-order",
    description="Exact reordering of boson ladder-operator expressions",
    version="0.1.0",
)

_CLIENT_ERRORS = (
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
    KeyError,
)


async def engine_error_handler(request: Request, exc: Exception):
    body = {"error": str(exc), "kind": type(exc).__name__}
    if isinstance(exc, ExprSyntaxError):
        body["offset"] = exc.offset
    return JSONResponse(status_code=422, content=body)


for _cls in _CLIENT_ERRORS:
    app.add_exception_handler(_cls, engine_error_handler)


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/order", response_model=OrderResponse)
def order(req: OrderRequest):
    return core.do_order(req.expr, req.to)


@app.post("/stirling", response_model=StirlingResponse)
def stirling(req: StirlingRequest):
    return core.do_stirling(req.n, req.k)


@app.post("/bell", response_model=BellResponse)
def bell(req: BellRequest):
    return core.do_bell(req.n, req.x)


@app.post("/identity", response_model=IdentityResponse)
def identity(req: IdentityRequest):
    return core.do_identity_render(req.name, req.n, req.order)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest):
    return core.do_verify(req.lhs, req.rhs, req.fock_dim, req.tol)


@app.post("/parse", response_model=ParseResponse)
def parse_endpoint(req: ParseRequest):
    return core.do_parse(req.expr)
