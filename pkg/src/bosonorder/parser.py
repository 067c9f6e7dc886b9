"""Expression grammar for ladder-operator input.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*'? factor)*
    factor := primary ('^' nat)*
    primary:= scalar | 'a' | 'ad' | block | '(' expr ')' | symbol
    block  := ('N'|'A'|'W') '[' expr ']' | 'S' '[' param ';' expr ']'

Juxtaposition is multiplication and left-to-right product order is operator
order.  ``ad`` is the creation operator; a trailing dagger sign on ``a`` is
accepted as an alias.  Scalars are exact rationals (``3``, ``1/2``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exact import MultiPoly
from .got import Block, DEFAULT_LETTER_CAP, SizeCap
from .operators import ANTINORMAL, NORMAL, Ordering, WEYL


class ExprSyntaxError(ValueError):
    """Parse failure with byte offset and the tokens that were expected."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.expected = expected


class NestingUnsupported(ValueError):
    """Ordered blocks may not contain ordered blocks."""


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Sum:
    parts: tuple["Ast", ...]


@dataclass(frozen=True)
class Product:
    parts: tuple["Ast", ...]


@dataclass(frozen=True)
class Power:
    base: "Ast"
    exponent: int


@dataclass(frozen=True)
class LetterRef:
    kind: str  # "a" or "ad"


@dataclass(frozen=True)
class OrderedBlock:
    inner: "Ast"
    ordering: Ordering


@dataclass(frozen=True)
class ScalarLit:
    value: Fraction


@dataclass(frozen=True)
class SymbolRef:
    name: str


Ast = Union[Sum, Product, Power, LetterRef, OrderedBlock, ScalarLit, SymbolRef]

_RESERVED = {"N", "A", "W", "S"}
_PUNCT = set("+-*^()[];")


@dataclass(frozen=True)
class _Token:
    kind: str  # "num" | "ident" | punctuation char | "end"
    text: str
    offset: int
    value: Fraction | None = None


def _is_digit(ch: str) -> bool:
    return "0" <= ch <= "9"


def _tokenize(src: str) -> list[_Token]:
    toks: list[_Token] = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _PUNCT:
            toks.append(_Token(ch, ch, i))
            i += 1
            continue
        if _is_digit(ch):
            start = i
            while i < n and _is_digit(src[i]):
                i += 1
            num = int(src[start:i])
            den = 1
            if i < n and src[i] == "/" and i + 1 < n and _is_digit(src[i + 1]):
                i += 1
                dstart = i
                while i < n and _is_digit(src[i]):
                    i += 1
                den = int(src[dstart:i])
                if den == 0:
                    raise ExprSyntaxError("zero denominator", dstart)
            toks.append(_Token("num", src[start:i], start, Fraction(num, den)))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (src[i].isalnum() or src[i] == "_"):
                i += 1
            name = src[start:i]
            if i < n and src[i] == "†":  # dagger alias for ad
                if name != "a":
                    raise ExprSyntaxError("dagger only follows 'a'", i)
                name = "ad"
                i += 1
            toks.append(_Token("ident", name, start))
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i, ())
    toks.append(_Token("end", "", n))
    return toks


class _Parser:
    MAX_DEPTH = 100

    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.pos = 0
        self.depth = 0

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def advance(self) -> _Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                tok.offset,
                (kind,),
            )
        return self.advance()

    # grammar ------------------------------------------------------------

    def parse(self) -> Ast:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(
                f"trailing input {tok.text!r}", tok.offset, ("end",)
            )
        return node

    def expr(self) -> Ast:
        self.depth += 1
        if self.depth > self.MAX_DEPTH:
            raise ExprSyntaxError("nesting too deep", self.peek().offset)
        try:
            return self._expr_body()
        finally:
            self.depth -= 1

    def _expr_body(self) -> Ast:
        parts = []
        sign = 1
        if self.peek().kind in ("+", "-"):
            sign = -1 if self.advance().kind == "-" else 1
        first = self.term()
        parts.append(self._signed(first, sign))
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            nxt = self.term()
            parts.append(self._signed(nxt, -1 if op == "-" else 1))
        return parts[0] if len(parts) == 1 else Sum(tuple(parts))

    @staticmethod
    def _signed(node: Ast, sign: int) -> Ast:
        if sign == 1:
            return node
        return Product((ScalarLit(Fraction(-1)), node))

    def term(self) -> Ast:
        factors = [self.factor()]
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.advance()
                factors.append(self.factor())
            elif tok.kind in ("num", "ident", "("):
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Ast:
        node = self.primary()
        while self.peek().kind == "^":
            self.advance()
            tok = self.expect("num")
            if tok.value.denominator != 1 or tok.value < 0:
                raise ExprSyntaxError("exponent must be a nonnegative integer", tok.offset)
            node = Power(node, int(tok.value))
        return node

    def primary(self) -> Ast:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return ScalarLit(tok.value)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "ident":
            self.advance()
            name = tok.text
            if name == "a":
                return LetterRef("a")
            if name == "ad":
                return LetterRef("ad")
            if name in _RESERVED:
                self.expect("[")
                if name == "S":
                    ordering = self.ordering_param()
                    self.expect(";")
                else:
                    ordering = {"N": NORMAL, "A": ANTINORMAL, "W": WEYL}[name]
                inner = self.expr()
                self.expect("]")
                return OrderedBlock(inner, ordering)
            return SymbolRef(name)
        raise ExprSyntaxError(
            f"expected expression, found {tok.text or 'end of input'!r}",
            tok.offset,
            ("num", "ident", "("),
        )

    def ordering_param(self) -> Ordering:
        tok = self.peek()
        sign = 1
        if tok.kind == "-":
            self.advance()
            sign = -1
            tok = self.peek()
        if tok.kind == "num":
            self.advance()
            try:
                return Ordering(sign * tok.value)
            except ValueError as exc:
                raise ExprSyntaxError(str(exc), tok.offset) from exc
        if tok.kind == "ident" and sign == 1:
            self.advance()
            if tok.text in _RESERVED or tok.text in ("a", "ad"):
                raise ExprSyntaxError(
                    f"{tok.text!r} is not a valid ordering symbol", tok.offset
                )
            return Ordering(tok.text)
        raise ExprSyntaxError(
            "expected ordering parameter", tok.offset, ("num", "ident")
        )


def parse(src: str) -> Ast:
    """Parse source text to an AST; raises ExprSyntaxError on any failure."""
    return _Parser(src).parse()


# -- lowering --------------------------------------------------------------

Summand = tuple[MultiPoly, tuple[Block, ...]]
MonoSummand = tuple[MultiPoly, tuple[int, int]]

_ONE = MultiPoly.const(1)


def lower(ast: Ast, cap: int = DEFAULT_LETTER_CAP) -> list[Summand]:
    """Flatten an AST to coefficiented block sequences.

    Sums are distributed, powers expanded, and bare letters wrapped as
    single-letter blocks (a lone letter is trivially ordered for any tag).
    """
    out = _lower(ast, cap)
    for coeff, blocks in out:
        if sum(b.dag + b.ann for b in blocks) > cap:
            raise SizeCap(f"expression exceeds {cap} letters")
    return out


def _lower(ast: Ast, cap: int) -> list[Summand]:
    if isinstance(ast, ScalarLit):
        return [(MultiPoly.const(ast.value), ())]
    if isinstance(ast, SymbolRef):
        return [(MultiPoly.symbol(ast.name), ())]
    if isinstance(ast, LetterRef):
        block = Block(1, 0, NORMAL) if ast.kind == "ad" else Block(0, 1, NORMAL)
        return [(_ONE, (block,))]
    if isinstance(ast, Sum):
        out: list[Summand] = []
        for part in ast.parts:
            out.extend(_lower(part, cap))
        return out
    if isinstance(ast, Product):
        out = [(_ONE, ())]
        for part in ast.parts:
            rhs = _lower(part, cap)
            out = [
                (ca * cb, ba + bb)
                for ca, ba in out
                for cb, bb in rhs
            ]
            _check_growth(out, cap)
        return out
    if isinstance(ast, Power):
        out = [(_ONE, ())]
        base = _lower(ast.base, cap)
        for _ in range(ast.exponent):
            out = [
                (ca * cb, ba + bb)
                for ca, ba in out
                for cb, bb in base
            ]
            _check_growth(out, cap)
        return out
    if isinstance(ast, OrderedBlock):
        monos = _lower_block_body(ast.inner)
        out = []
        for coeff, (m, n) in monos:
            if m + n > cap:
                raise SizeCap(f"block exceeds {cap} letters")
            blocks = () if m == n == 0 else (Block(m, n, ast.ordering),)
            out.append((coeff, blocks))
        return out
    raise TypeError(f"unknown AST node {type(ast).__name__}")


def _check_growth(summands: list[Summand], cap: int):
    for _, blocks in summands:
        if sum(b.dag + b.ann for b in blocks) > cap:
            raise SizeCap(f"expression exceeds {cap} letters")


def _lower_block_body(ast: Ast) -> list[MonoSummand]:
    """Inside an ordering symbol letters commute; only counts survive."""
    if isinstance(ast, OrderedBlock):
        raise NestingUnsupported("ordered blocks may not be nested")
    if isinstance(ast, ScalarLit):
        return [(MultiPoly.const(ast.value), (0, 0))]
    if isinstance(ast, SymbolRef):
        return [(MultiPoly.symbol(ast.name), (0, 0))]
    if isinstance(ast, LetterRef):
        return [(_ONE, (1, 0) if ast.kind == "ad" else (0, 1))]
    if isinstance(ast, Sum):
        out: list[MonoSummand] = []
        for part in ast.parts:
            out.extend(_lower_block_body(part))
        return out
    if isinstance(ast, Product):
        out = [(_ONE, (0, 0))]
        for part in ast.parts:
            rhs = _lower_block_body(part)
            out = [
                (ca * cb, (ma + mb, na + nb))
                for ca, (ma, na) in out
                for cb, (mb, nb) in rhs
            ]
        return out
    if isinstance(ast, Power):
        out = [(_ONE, (0, 0))]
        base = _lower_block_body(ast.base)
        for _ in range(ast.exponent):
            out = [
                (ca * cb, (ma + mb, na + nb))
                for ca, (ma, na) in out
                for cb, (mb, nb) in base
            ]
            if len(out) > 4096:
                raise SizeCap("block expansion too large")
        return out
    raise TypeError(f"unknown AST node {type(ast).__name__}")


def ast_to_dict(ast: Ast) -> dict:
    """JSON-friendly AST dump."""
    if isinstance(ast, Sum):
        return {"sum": [ast_to_dict(p) for p in ast.parts]}
    if isinstance(ast, Product):
        return {"product": [ast_to_dict(p) for p in ast.parts]}
    if isinstance(ast, Power):
        return {"power": ast_to_dict(ast.base), "exponent": ast.exponent}
    if isinstance(ast, LetterRef):
        return {"letter": ast.kind}
    if isinstance(ast, OrderedBlock):
        return {"block": ast_to_dict(ast.inner), "ordering": ast.ordering.label()}
    if isinstance(ast, ScalarLit):
        return {"scalar": str(ast.value)}
    if isinstance(ast, SymbolRef):
        return {"symbol": ast.name}
    raise TypeError(f"unknown AST node {type(ast).__name__}")
