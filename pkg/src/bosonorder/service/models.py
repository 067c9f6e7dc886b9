"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from typing import Optional, Union

from pydantic import BaseModel, Field

OrderingJson = Union[int, str, dict]


class TermModel(BaseModel):
    m: int
    n: int
    coeff: str


class OrderRequest(BaseModel):
    expr: str
    to: str = "normal"


class OrderResponse(BaseModel):
    schema_id: str = Field(alias="schema")
    ordering: OrderingJson
    terms: list[TermModel]
    text: str
    latex: str

    model_config = {"populate_by_name": True}


class StirlingRequest(BaseModel):
    n: int = Field(ge=0)
    k: Optional[int] = Field(default=None, ge=0)


class StirlingRow(BaseModel):
    k: int
    value: int


class StirlingResponse(BaseModel):
    n: int
    rows: list[StirlingRow]


class BellRequest(BaseModel):
    n: int = Field(ge=0)
    x: Optional[str] = None


class BellResponse(BaseModel):
    n: int
    coeffs: list[str]
    value: Optional[str] = None


class IdentityRequest(BaseModel):
    name: str
    n: Optional[int] = Field(default=None, ge=1)
    order: Optional[int] = Field(default=None, ge=0)


class IdentityRow(BaseModel):
    label: str
    expected: str
    computed: str
    pass_: bool = Field(alias="pass")

    model_config = {"populate_by_name": True}


class IdentityResponse(BaseModel):
    identity: str
    rows: list[IdentityRow]
    passed: bool
    text: Optional[str] = None


class VerifyRequest(BaseModel):
    lhs: str
    rhs: str
    fock_dim: int = Field(default=32, ge=2)
    tol: float = Field(default=1e-9, gt=0)


class VerifyResponse(BaseModel):
    passed: bool
    max_diff: float
    dim: int
    safe_dim: int
    tol: float


class ParseRequest(BaseModel):
    expr: str


class ParseResponse(BaseModel):
    ast: dict


class ErrorResponse(BaseModel):
    error: str
    kind: str
    offset: Optional[int] = None
