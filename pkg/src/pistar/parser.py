"""Recursive-descent parser and printer for multilinear *-polynomials.

Grammar (whitespace insensitive)::

    poly    := ['+'|'-'] term (('+'|'-') term)*
    term    := [rational] jordan
    jordan  := product ('o' product)*
    product := postfix (['*'] postfix)*
    postfix := atom ['^*']
    atom    := var | '[' poly ',' poly ']' | '(' poly ')'
    var     := 'x' INDEX ':' ('0'|'1') ('+'|'-')

Generator files additionally accept wildcards: ``x?`` (fresh variable of any
type), ``xN:?`` (any type) and ``xN:0?`` / ``xN:1?`` (either sign).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exact import format_rational
from .free_star import (
    MultilinearityError,
    Polynomial,
    VarType,
    VarTypeError,
    commutator,
    jordan,
    star_free,
)

__all__ = [
    "ParseError",
    "parse",
    "parse_generators",
    "parse_generator_file",
    "format_polynomial",
]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<var>x(?P<idx>\d+):(?:(?P<par>[01?])(?P<sgn>[+\-?])|(?P<any>\?)))
  | (?P<wild>x\?)
  | (?P<num>\d+)
  | (?P<star>\^\*)
  | (?P<op>[-+*/\[\](),o])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _VarNode:
    index: int | None  # None for a fresh wildcard
    parity: int | None
    sign: int | None
    pos: int


@dataclass(frozen=True)
class _Node:
    kind: str  # add, mul, jordan, comm, star, scale
    args: tuple
    coeff: Fraction = Fraction(1)


_Ast = Union[_VarNode, _Node]


def _tokenize(text: str) -> list[tuple[str, str, int, dict]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("ws") is None:
            if m.group("var") is not None:
                toks.append(("var", m.group(0), pos, m.groupdict()))
            elif m.group("wild") is not None:
                toks.append(("wild", m.group(0), pos, {}))
            elif m.group("num") is not None:
                toks.append(("num", m.group(0), pos, {}))
            elif m.group("star") is not None:
                toks.append(("^*", "^*", pos, {}))
            else:
                toks.append((m.group(0), m.group(0), pos, {}))
        pos = m.end()
    toks.append(("eof", "", len(text), {}))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def take(self, kind: str | None = None):
        t = self.toks[self.i]
        if kind is not None and t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[1] or 'end of input'!r}", t[2])
        self.i += 1
        return t

    def parse(self) -> _Ast:
        if self.tok[0] == "num" and self.tok[1] == "0" and self.toks[self.i + 1][0] == "eof":
            self.i += 1
            return _Node("add", ())
        node = self.poly()
        if self.tok[0] != "eof":
            raise ParseError(f"unexpected {self.tok[1]!r}", self.tok[2])
        return node

    def poly(self) -> _Ast:
        terms = []
        sign = 1
        if self.tok[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        terms.append(self.term(sign))
        while self.tok[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            terms.append(self.term(sign))
        return terms[0] if len(terms) == 1 else _Node("add", tuple(terms))

    def term(self, sign: int) -> _Ast:
        coeff = Fraction(sign)
        if self.tok[0] == "num":
            num = int(self.take()[1])
            den = 1
            if self.tok[0] == "/":
                self.take()
                d = self.take("num")
                den = int(d[1])
                if den == 0:
                    raise ParseError("zero denominator", d[2])
            coeff *= Fraction(num, den)
        body = self.jordan()
        if coeff == 1:
            return body
        return _Node("scale", (body,), coeff)

    def jordan(self) -> _Ast:
        left = self.product()
        while self.tok[0] == "o":
            self.take()
            left = _Node("jordan", (left, self.product()))
        return left

    def product(self) -> _Ast:
        factors = [self.postfix()]
        while True:
            if self.tok[0] == "*":
                self.take()
                factors.append(self.postfix())
            elif self.tok[0] in ("var", "wild", "[", "("):
                factors.append(self.postfix())
            else:
                break
        return factors[0] if len(factors) == 1 else _Node("mul", tuple(factors))

    def postfix(self) -> _Ast:
        node = self.atom()
        while self.tok[0] == "^*":
            self.take()
            node = _Node("star", (node,))
        return node

    def atom(self) -> _Ast:
        kind, text, pos, groups = self.tok
        if kind == "var":
            self.take()
            if groups["any"]:
                return _VarNode(int(groups["idx"]), None, None, pos)
            par = None if groups["par"] == "?" else int(groups["par"])
            sgn = None if groups["sgn"] == "?" else (1 if groups["sgn"] == "+" else -1)
            return _VarNode(int(groups["idx"]), par, sgn, pos)
        if kind == "wild":
            self.take()
            return _VarNode(None, None, None, pos)
        if kind == "[":
            self.take()
            a = self.poly()
            self.take(",")
            b = self.poly()
            self.take("]")
            return _Node("comm", (a, b))
        if kind == "(":
            self.take()
            a = self.poly()
            self.take(")")
            return a
        raise ParseError(f"expected a factor, found {text or 'end of input'!r}", pos)


def _collect_vars(node: _Ast, out: list[_VarNode]) -> None:
    if isinstance(node, _VarNode):
        out.append(node)
    else:
        for a in node.args:
            _collect_vars(a, out)


def _eval(node: _Ast, binding: dict[int, tuple[int, VarType]]) -> Polynomial:
    if isinstance(node, _VarNode):
        index, vtype = binding[id(node)]
        return Polynomial.var(index, vtype)
    args = [_eval(a, binding) for a in node.args]
    if node.kind == "add":
        out = Polynomial()
        for a in args:
            out = out + a
        return out
    if node.kind == "mul":
        out = args[0]
        for a in args[1:]:
            out = out * a
        return out
    if node.kind == "scale":
        return args[0].scale(node.coeff)
    if node.kind == "jordan":
        return jordan(args[0], args[1])
    if node.kind == "comm":
        return commutator(args[0], args[1])
    if node.kind == "star":
        return star_free(args[0])
    raise AssertionError(node.kind)


def _wrap_errors(fn, pos: int):
    try:
        return fn()
    except (MultilinearityError, VarTypeError) as exc:
        raise type(exc)(f"{exc} (expression starting at position {pos})") from None


def _expand(text: str) -> list[Polynomial]:
    ast = _Parser(text).parse()
    nodes: list[_VarNode] = []
    _collect_vars(ast, nodes)
    fixed = [n.index for n in nodes if n.index is not None]
    next_index = max(fixed, default=0) + 1
    choices = []
    for n in nodes:
        idx = n.index
        if idx is None:
            idx = next_index
            next_index += 1
        pars = [n.parity] if n.parity is not None else [0, 1]
        sgns = [n.sign] if n.sign is not None else [1, -1]
        choices.append([(idx, VarType(p, s)) for p in pars for s in sgns])
    out: list[Polynomial] = []
    for combo in itertools.product(*choices):
        binding = {id(n): c for n, c in zip(nodes, combo)}
        # one index must keep one type; skip inconsistent wildcard combinations
        seen: dict[int, VarType] = {}
        if any(seen.setdefault(i, t) != t for i, t in combo):
            continue
        p = _wrap_errors(lambda: _eval(ast, binding), 0)
        if p not in out:
            out.append(p)
    return out


def parse(text: str) -> Polynomial:
    """Parse a concrete polynomial expression (no wildcards)."""
    ast = _Parser(text).parse()
    nodes: list[_VarNode] = []
    _collect_vars(ast, nodes)
    binding = {}
    types: dict[int, VarType] = {}
    for n in nodes:
        if n.index is None or n.parity is None or n.sign is None:
            raise ParseError("wildcard variable in a concrete polynomial", n.pos)
        t = VarType(n.parity, n.sign)
        if types.setdefault(n.index, t) != t:
            raise VarTypeError(f"variable x{n.index} used with types {types[n.index]} and {t} (position {n.pos})")
        binding[id(n)] = (n.index, t)
    return _wrap_errors(lambda: _eval(ast, binding), 0)


def parse_generators(text: str) -> list[Polynomial]:
    """Parse one generator expression, expanding wildcards into concrete polynomials."""
    return _expand(text)


def parse_generator_file(content: str) -> list[tuple[str, list[Polynomial]]]:
    """Newline-separated expressions; ``#`` starts a comment.

    Returns (source line, expansions) pairs in file order.
    """
    out = []
    for line in content.splitlines():
        src = line.split("#", 1)[0].strip()
        if src:
            out.append((src, parse_generators(src)))
    return out


def _mono_key(m):
    return (len(m), [v.index for v in m])


def format_polynomial(p: Polynomial) -> str:
    if not p:
        return "0"
    parts = []
    for k, (m, c) in enumerate(sorted(p.items(), key=lambda mc: _mono_key(mc[0]))):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = " ".join(str(v) for v in m)
        s = body if a == 1 else f"{format_rational(a)} {body}"
        if k == 0:
            parts.append(s if sign == "+" else f"-{s}")
        else:
            parts.append(f"{sign} {s}")
    return " ".join(parts)
