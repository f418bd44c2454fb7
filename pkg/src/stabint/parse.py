"""Text front end: expressions in x, log and exp, and Ore operators.

Grammar (left associative, unary minus only at the head of an expr)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' ['-'] integer)?
    base   := integer | NAME | '(' expr ')' | ('log' | 'exp') '(' expr ')'

Expressions use the single variable ``x``.  Operator text additionally
allows ``n``, ``D`` and ``S`` and multiplies noncommutatively.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .elementary import ElemSum
from .ore import Kind, OreOperator
from .poly import Poly
from .ratfunc import RatFunc


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class NormalizationReject(ValueError):
    """The expression parses but falls outside f*log(x)^m*exp(g) sums."""


# -- syntax tree --------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"


Node = Union[Num, Sym, Neg, BinOp, Pow, Call]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")
FUNCTIONS = ("log", "exp")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", num, start))
        elif name is not None:
            tokens.append(("name", name, start))
        else:
            if sym not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {sym!r}", start)
            tokens.append(("op", sym, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: tuple[str, ...]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = names

    def peek(self):
        return self.tokens[self.i]

    def take(self, value: Optional[str] = None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            raise ExprSyntaxError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expr(self) -> Node:
        if self.peek()[1] == "-":
            self.take()
            node: Node = Neg(self.term())
        else:
            node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.base()
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            tok = self.take()
            if tok[0] != "num":
                raise ExprSyntaxError("exponent must be an integer", tok[2])
            node = Pow(node, sign * int(tok[1]))
        return node

    def base(self) -> Node:
        kind, value, pos = self.take()
        if kind == "num":
            return Num(int(value))
        if kind == "name":
            if value in FUNCTIONS:
                self.take("(")
                arg = self.expr()
                self.take(")")
                return Call(value, arg)
            if value not in self.names:
                raise ExprSyntaxError(f"unknown name {value!r}", pos)
            return Sym(value)
        if value == "(":
            node = self.expr()
            self.take(")")
            return node
        raise ExprSyntaxError(f"unexpected {value or 'end of input'!r}", pos)


def parse_tree(text: str, names: tuple[str, ...] = ("x",)) -> Node:
    return _Parser(text, names).parse()


# -- printing -----------------------------------------------------------


def to_text(node: Node) -> str:
    """Inverse of ``parse_tree`` on trees it produces."""
    return _expr_text(node)


def _expr_text(node: Node) -> str:
    if isinstance(node, BinOp) and node.op in "+-":
        return f"{_expr_text(node.left)} {node.op} {_term_text(node.right)}"
    if isinstance(node, Neg):
        return "-" + _term_text(node.arg)
    return _term_text(node)


def _term_text(node: Node) -> str:
    if isinstance(node, BinOp) and node.op in "*/":
        return f"{_term_text(node.left)}{node.op}{_factor_text(node.right)}"
    return _factor_text(node)


def _factor_text(node: Node) -> str:
    if isinstance(node, Pow):
        return f"{_base_text(node.base)}^{node.exp}"
    return _base_text(node)


def _base_text(node: Node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Call):
        return f"{node.fn}({_expr_text(node.arg)})"
    return f"({_expr_text(node)})"


# -- normalization to elementary sums --------------------------------


@dataclass(frozen=True)
class ParsedExpr:
    tree: Node
    value: Optional[ElemSum]
    reject: Optional[str] = None


def _invert(e: ElemSum) -> ElemSum:
    term = e.single()
    if term is None:
        raise NormalizationReject("division by a sum of log or exp terms")
    if term.f.is_zero():
        raise ZeroDivisionError("division by zero")
    if term.logpow:
        raise NormalizationReject("division by a power of log(x)")
    return ElemSum.term(1 / term.f, 0, -term.expo)


def normalize(node: Node) -> ElemSum:
    if isinstance(node, Num):
        return ElemSum.of(node.value)
    if isinstance(node, Sym):
        return ElemSum.of(RatFunc.x())
    if isinstance(node, Neg):
        return -normalize(node.arg)
    if isinstance(node, BinOp):
        a, b = normalize(node.left), normalize(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return a * _invert(b)
    if isinstance(node, Pow):
        base = normalize(node.base)
        if node.exp < 0:
            base = _invert(base)
        out = ElemSum.of(1)
        for _ in range(abs(node.exp)):
            out = out * base
        return out
    if isinstance(node, Call):
        arg = normalize(node.arg)
        if not arg.is_rational():
            raise NormalizationReject(f"{node.fn} of a non-rational argument")
        r = arg.as_rational()
        if node.fn == "exp":
            return ElemSum.term(1, 0, r)
        # log(x^k) = k*log(x); any other argument leaves the fragment
        if r.is_polynomial() and r.num == Poly.monomial(r.num.degree) and r.num.degree >= 1:
            return ElemSum.term(r.num.degree, 1)
        if r.num == Poly.const(1) and r.den == Poly.monomial(r.den.degree) and r.den.degree >= 1:
            return ElemSum.term(-r.den.degree, 1)
        raise NormalizationReject("only log(x) is supported")
    raise TypeError(f"unknown node {node!r}")


def parse(text: str) -> ParsedExpr:
    """Parse and normalize; syntax errors raise, fragment rejections are recorded."""
    tree = parse_tree(text)
    try:
        return ParsedExpr(tree, normalize(tree))
    except NormalizationReject as exc:
        return ParsedExpr(tree, None, str(exc))


def parse_elementary(text: str) -> ElemSum:
    p = parse(text)
    if p.value is None:
        raise NormalizationReject(p.reject)
    return p.value


def parse_ratfunc(text: str) -> RatFunc:
    e = parse_elementary(text)
    if not e.is_rational():
        raise NormalizationReject(f"{text!r} is not a rational function of x")
    return e.as_rational()


def parse_poly(text: str) -> Poly:
    f = parse_ratfunc(text)
    if not f.is_polynomial():
        raise NormalizationReject(f"{text!r} is not a polynomial")
    return f.num


# -- operators ----------------------------------------------------------


def parse_operator(text: str, kind: Optional[Kind] = None) -> OreOperator:
    """Parse an operator such as ``x*D^2 - (x^2+1)*D + 3``.

    The kind is inferred from the symbols used; pure constants default to
    differential operators unless ``kind`` is given.
    """
    tree = parse_tree(text, names=("x", "n", "D", "S"))
    used = _symbols(tree)
    if used & {"x", "D"} and used & {"n", "S"}:
        raise NormalizationReject("cannot mix x/D with n/S")
    inferred = Kind.SHIFT if used & {"n", "S"} else Kind.DIFF
    if kind is not None and used and inferred is not kind:
        raise NormalizationReject(f"expected a {kind.name.lower()} operator")
    return _op_value(tree, kind or inferred)


def _symbols(node: Node) -> set:
    if isinstance(node, Sym):
        return {node.name}
    if isinstance(node, (Neg, Call)):
        return _symbols(node.arg)
    if isinstance(node, BinOp):
        return _symbols(node.left) | _symbols(node.right)
    if isinstance(node, Pow):
        return _symbols(node.base)
    return set()


def _op_value(node: Node, kind: Kind) -> OreOperator:
    if isinstance(node, Num):
        return OreOperator.scalar(kind, node.value)
    if isinstance(node, Sym):
        if node.name in ("D", "S"):
            return OreOperator.generator(kind)
        return OreOperator.scalar(kind, RatFunc.x())
    if isinstance(node, Neg):
        return -_op_value(node.arg, kind)
    if isinstance(node, Call):
        raise NormalizationReject("functions are not allowed in operators")
    if isinstance(node, BinOp):
        a, b = _op_value(node.left, kind), _op_value(node.right, kind)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b.order != 0:
            raise NormalizationReject("can only divide by a coefficient")
        return a * OreOperator.scalar(kind, 1 / b.lc)
    if isinstance(node, Pow):
        base = _op_value(node.base, kind)
        if node.exp < 0:
            if base.order != 0:
                raise NormalizationReject("negative power of an operator")
            base = OreOperator.scalar(kind, 1 / base.lc)
        return base ** abs(node.exp)
    raise TypeError(f"unknown node {node!r}")


def parse_rational_literal(text: str) -> Fraction:
    """``3``, ``-1/2`` and similar exact constants."""
    f = parse_ratfunc(text)
    if not f.is_constant():
        raise NormalizationReject(f"{text!r} is not a constant")
    return f.constant_value()
