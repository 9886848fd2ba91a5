"""Text syntax for field elements and 2x2 matrices.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | base ('^' int)?
    base   := int | 'q' | 't' | '(' expr ')'
    matrix := '[' row ',' row ']'
    row    := '[' expr ',' expr ']'
    int    := ['-'] digit+

Whitespace is ignored.  There is no implicit multiplication: ``qt`` is an
error, write ``q*t``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .arith import Q, T, FieldElem, as_elem
from .errors import DivisionByZero, EvalError, NonIntegerExponent, ParseError, ShapeError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            tokens.append(Token("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


@dataclass(frozen=True)
class Node:
    """Expression tree node.

    ``kind`` is one of ``int``, ``q``, ``t``, ``add``, ``sub``, ``mul``,
    ``div``, ``neg``, ``pow`` and ``paren``; ``value`` holds the integer for
    literals and the exponent for ``pow``.
    """

    kind: str
    children: tuple = ()
    value: int | None = None
    pos: int = 0


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind != "op":
            raise ParseError(f"unexpected {self._describe(self.tok)}", self.tok.pos, repr(text))
        return self.advance()

    @staticmethod
    def _describe(tok: Token) -> str:
        return "end of input" if tok.kind == "end" else repr(tok.text)

    def finish(self):
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self._describe(self.tok)}", self.tok.pos, "end of input")

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance()
            node = Node("add" if op.text == "+" else "sub", (node, self.term()), pos=op.pos)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance()
            node = Node("mul" if op.text == "*" else "div", (node, self.factor()), pos=op.pos)
        return node

    def factor(self) -> Node:
        if self.tok.kind == "op" and self.tok.text == "-":
            op = self.advance()
            return Node("neg", (self.factor(),), pos=op.pos)
        node = self.base()
        if self.tok.kind == "op" and self.tok.text == "^":
            op = self.advance()
            node = Node("pow", (node,), value=self.integer(), pos=op.pos)
        return node

    def integer(self) -> int:
        sign = 1
        start = self.tok.pos
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            sign = -1
        if self.tok.kind != "int":
            raise NonIntegerExponent(
                f"exponent must be an integer literal, got {self._describe(self.tok)}",
                start, "integer exponent")
        return sign * int(self.advance().text)

    def base(self) -> Node:
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            return Node("int", value=int(tok.text), pos=tok.pos)
        if tok.kind == "name":
            if tok.text in ("q", "t"):
                self.advance()
                return Node(tok.text, pos=tok.pos)
            raise ParseError(f"unknown symbol {tok.text!r}", tok.pos, "'q', 't' or a number")
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return Node("paren", (inner,), pos=tok.pos)
        raise ParseError(f"unexpected {self._describe(tok)}", tok.pos, "'q', 't', a number or '('")

    def matrix(self) -> list[list[Node]]:
        self.expect("[")
        rows = [self.row()]
        while self.tok.kind == "op" and self.tok.text == ",":
            self.advance()
            rows.append(self.row())
        self.expect("]")
        return rows

    def row(self) -> list[Node]:
        self.expect("[")
        entries = [self.expr()]
        while self.tok.kind == "op" and self.tok.text == ",":
            self.advance()
            entries.append(self.expr())
        self.expect("]")
        return entries


def parse_ast(src: str) -> Node:
    p = _Parser(src)
    node = p.expr()
    p.finish()
    return node


def evaluate(node: Node) -> FieldElem:
    kind = node.kind
    if kind == "int":
        return FieldElem(node.value)
    if kind == "q":
        return Q
    if kind == "t":
        return T
    if kind == "paren":
        return evaluate(node.children[0])
    if kind == "neg":
        return -evaluate(node.children[0])
    if kind == "pow":
        base = evaluate(node.children[0])
        try:
            return base**node.value
        except DivisionByZero:
            raise EvalError("negative power of zero", node.pos) from None
    left, right = (evaluate(c) for c in node.children)
    if kind == "add":
        return left + right
    if kind == "sub":
        return left - right
    if kind == "mul":
        return left * right
    if kind == "div":
        if right.is_zero():
            raise EvalError("division by zero", node.pos)
        return left / right
    raise ValueError(f"unknown node kind {kind!r}")


def parse_elem(src: str) -> FieldElem:
    """Parse an element of Q(q)(t) written in the expression grammar."""
    return evaluate(parse_ast(src))


def parse_matrix(src: str):
    from .mobius import Mat2

    p = _Parser(src)
    start = p.tok.pos
    rows = p.matrix()
    p.finish()
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        shape = "x".join(str(n) for n in (len(rows), max(len(r) for r in rows)))
        raise ShapeError(f"expected a 2x2 matrix, got {shape}", start)
    (a, b), (c, d) = ((evaluate(e) for e in r) for r in rows)
    return Mat2(a, b, c, d)


# ---------------------------------------------------------------------------
# rendering


def _monomial(i: int, j: int) -> list[str]:
    parts = []
    for name, e in (("q", i), ("t", j)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return parts


def _render_poly(poly) -> tuple[str, int]:
    """Render an integer polynomial in (q, t); also return its number of terms."""
    terms = sorted(poly.terms(), key=lambda tc: (-tc[0][1], -tc[0][0]))
    if not terms:
        return "0", 1
    out = []
    for k, ((i, j), c) in enumerate(terms):
        c = int(c)
        sign = "-" if c < 0 else "+"
        mono = _monomial(i, j)
        body = "*".join(([str(abs(c))] if abs(c) != 1 or not mono else []) + mono)
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out), len(terms)


def _is_bare_factor(poly) -> bool:
    """Single term that parses back as one factor (a number or one power)."""
    if len(poly.terms()) != 1:
        return False
    (i, j), c = poly.terms()[0]
    if c < 0:
        return False
    if i == 0 and j == 0:
        return True
    return c == 1 and (i == 0 or j == 0)


def render(x) -> str:
    """Canonical text for a field element or a matrix (round-trips through the parsers)."""
    from .mobius import Mat2

    if isinstance(x, Mat2):
        return "[[{},{}],[{},{}]]".format(*(render(e) for e in (x.a, x.b, x.c, x.d)))
    x = as_elem(x)
    num, den = x.integer_form()
    num_s, num_terms = _render_poly(num)
    if den.is_ground and den.LC == 1:
        return num_s
    den_s, _ = _render_poly(den)
    if num_terms > 1:
        num_s = f"({num_s})"
    if not _is_bare_factor(den):
        den_s = f"({den_s})"
    return f"{num_s}/{den_s}"
