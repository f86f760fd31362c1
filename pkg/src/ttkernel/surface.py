"""Concrete syntax: lexer, parser, name resolution and pretty-printer.

Grammar (ASCII, ``--`` comments to end of line)::

    program ::= decl*
    decl    ::= "def" IDENT ":" term "=" term
    term    ::= "fun" "(" IDENT ":" term ")" "=>" term
              | "(" IDENT ":" term ")" "->" term
              | spine [ "->" term ]
    spine   ::= "brec" atom atom atom atom* | atom atom*
    atom    ::= IDENT | "U" DIGITS | "N2" | "0" | "1" | "(" term ")"

Application is left-associative and arrows associate to the right.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from ttkernel import core
from ttkernel.core import DEFAULT_MAX_UNIVERSE

Position = Tuple[int, int]


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        super().__init__(str(self))

    def __str__(self) -> str:
        text = f"{self.line}:{self.column}: {self.message}"
        if self.expected:
            text += " (expected " + ", ".join(sorted(self.expected)) + ")"
        return text


class ScopeError(Exception):
    def __init__(self, name: str, position: Optional[Position] = None):
        self.name = name
        self.position = position
        where = f"{position[0]}:{position[1]}: " if position else ""
        super().__init__(f"{where}unbound identifier '{name}'")


# -- surface AST ------------------------------------------------------------


@dataclass(frozen=True)
class NamedVar:
    name: str
    position: Optional[Position] = field(default=None, compare=False)


@dataclass(frozen=True)
class Lam:
    binder: str
    annotation: "SurfaceTerm"
    body: "SurfaceTerm"


@dataclass(frozen=True)
class Pi:
    binder: str
    domain: "SurfaceTerm"
    codomain: "SurfaceTerm"


@dataclass(frozen=True)
class App:
    fun: "SurfaceTerm"
    arg: "SurfaceTerm"


@dataclass(frozen=True)
class Univ:
    level: int


@dataclass(frozen=True)
class BoolType:
    pass


@dataclass(frozen=True)
class BoolZero:
    pass


@dataclass(frozen=True)
class BoolOne:
    pass


@dataclass(frozen=True)
class Brec:
    motive: "SurfaceTerm"
    case0: "SurfaceTerm"
    case1: "SurfaceTerm"


SurfaceTerm = Union[NamedVar, Lam, Pi, App, Univ, BoolType, BoolZero, BoolOne, Brec]


@dataclass(frozen=True)
class Decl:
    name: str
    declared_type: SurfaceTerm
    body: SurfaceTerm
    location: Optional[Position] = field(default=None, compare=False)


@dataclass(frozen=True)
class Program:
    decls: Tuple[Decl, ...]


@dataclass(frozen=True)
class ElaboratedDecl:
    name: str
    type: core.Term
    body: core.Term
    location: Optional[Position] = None


# -- lexer ------------------------------------------------------------------

KEYWORDS = {"def", "fun", "brec", "N2"}
_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>--[^\n]*)
  | (?P<sym>=>|->|[():=])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<num>[0-9]+)
    """,
    re.VERBOSE,
)
_UNIV_RE = re.compile(r"U([0-9]+)")


@dataclass(frozen=True)
class Token:
    kind: str  # "sym", "kw", "ident", "univ", "num", "eof"
    text: str
    line: int
    column: int

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            if lexeme in KEYWORDS:
                tokens.append(Token("kw", lexeme, line, col))
            elif _UNIV_RE.fullmatch(lexeme):
                tokens.append(Token("univ", lexeme, line, col))
            else:
                tokens.append(Token("ident", lexeme, line, col))
        elif kind in ("sym", "num"):
            tokens.append(Token(kind, lexeme, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- parser -----------------------------------------------------------------

_ATOM_START = "identifier, U<n>, N2, 0, 1, '('"


class _Parser:
    def __init__(self, text: str, max_universe: int):
        self.tokens = tokenize(text)
        self.i = 0
        self.max_universe = max_universe

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, expected, message: Optional[str] = None) -> ParseError:
        tok = self.tok
        return ParseError(
            message or f"unexpected {tok.describe()}", tok.line, tok.column, expected
        )

    def is_sym(self, s: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t.kind == "sym" and t.text == s

    def is_kw(self, s: str) -> bool:
        return self.tok.kind == "kw" and self.tok.text == s

    def expect_sym(self, s: str) -> Token:
        if not self.is_sym(s):
            raise self.error({repr(s)})
        return self.advance()

    def expect_ident(self) -> Token:
        if self.tok.kind != "ident":
            raise self.error({"identifier"})
        return self.advance()

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def program(self) -> Program:
        decls: List[Decl] = []
        seen: Dict[str, Decl] = {}
        while self.tok.kind != "eof":
            if not self.is_kw("def"):
                raise self.error({"'def'", "end of input"})
            start = self.advance()
            name_tok = self.expect_ident()
            if name_tok.text in seen:
                raise ParseError(
                    f"duplicate definition of '{name_tok.text}'", name_tok.line, name_tok.column
                )
            self.expect_sym(":")
            ty = self.term()
            self.expect_sym("=")
            body = self.term()
            decl = Decl(name_tok.text, ty, body, (start.line, start.column))
            seen[decl.name] = decl
            decls.append(decl)
        return Program(tuple(decls))

    def binder_ahead(self) -> bool:
        return self.is_sym("(") and self.peek(1).kind == "ident" and self.is_sym(":", 2)

    def term(self) -> SurfaceTerm:
        if self.is_kw("fun"):
            self.advance()
            self.expect_sym("(")
            x = self.expect_ident().text
            self.expect_sym(":")
            ann = self.term()
            self.expect_sym(")")
            self.expect_sym("=>")
            return Lam(x, ann, self.term())
        if self.binder_ahead():
            self.advance()
            x = self.advance().text
            self.advance()
            dom = self.term()
            self.expect_sym(")")
            self.expect_sym("->")
            return Pi(x, dom, self.term())
        head = self.spine()
        if self.is_sym("->"):
            self.advance()
            return Pi("_", head, self.term())
        return head

    def spine(self) -> SurfaceTerm:
        if self.is_kw("brec"):
            self.advance()
            head: SurfaceTerm = Brec(self.atom(), self.atom(), self.atom())
        else:
            head = self.atom()
        while self.atom_ahead():
            head = App(head, self.atom())
        return head

    def atom_ahead(self) -> bool:
        t = self.tok
        if t.kind in ("ident", "univ"):
            return True
        if t.kind == "kw":
            return t.text == "N2"
        if t.kind == "num":
            return True
        return self.is_sym("(") and not self.binder_ahead()

    def atom(self) -> SurfaceTerm:
        t = self.tok
        if t.kind == "ident":
            self.advance()
            return NamedVar(t.text, (t.line, t.column))
        if t.kind == "univ":
            level = int(t.text[1:])
            if level > self.max_universe:
                raise ParseError(
                    f"universe level {level} exceeds the maximum {self.max_universe}",
                    t.line,
                    t.column,
                )
            self.advance()
            return Univ(level)
        if t.kind == "kw" and t.text == "N2":
            self.advance()
            return BoolType()
        if t.kind == "num":
            if t.text not in ("0", "1"):
                raise ParseError(f"unknown literal {t.text!r}", t.line, t.column, {"0", "1"})
            self.advance()
            return BoolZero() if t.text == "0" else BoolOne()
        if self.is_sym("(") and not self.binder_ahead():
            self.advance()
            inner = self.term()
            self.expect_sym(")")
            return inner
        raise self.error({_ATOM_START})


def parse(text: str, max_universe: int = DEFAULT_MAX_UNIVERSE) -> Program:
    return _Parser(text, max_universe).program()


def parse_term(text: str, max_universe: int = DEFAULT_MAX_UNIVERSE) -> SurfaceTerm:
    p = _Parser(text, max_universe)
    t = p.term()
    if p.tok.kind != "eof":
        raise p.error({"end of input"})
    return t


# -- resolution -------------------------------------------------------------


def resolve(
    scope: Sequence[str],
    t: SurfaceTerm,
    defs: Optional[Mapping[str, core.Term]] = None,
) -> core.Term:
    """Translate to de Bruijn syntax.

    ``scope`` lists bound names, innermost last. Names not bound locally are
    looked up in ``defs`` (closed core terms) and inlined.
    """
    defs = defs or {}
    names = list(scope)

    def go(t: SurfaceTerm) -> core.Term:
        if isinstance(t, NamedVar):
            if t.name != "_":
                for k, name in enumerate(reversed(names)):
                    if name == t.name:
                        return core.Ix(k)
                if t.name in defs:
                    return defs[t.name]
            raise ScopeError(t.name, t.position)
        if isinstance(t, (Lam, Pi)):
            first = go(t.annotation if isinstance(t, Lam) else t.domain)
            names.append(t.binder)
            try:
                second = go(t.body if isinstance(t, Lam) else t.codomain)
            finally:
                names.pop()
            return core.Lam(first, second) if isinstance(t, Lam) else core.Pi(first, second)
        if isinstance(t, App):
            return core.App(go(t.fun), go(t.arg))
        if isinstance(t, Brec):
            return core.Brec(go(t.motive), go(t.case0), go(t.case1))
        if isinstance(t, Univ):
            return core.Univ(t.level)
        if isinstance(t, BoolType):
            return core.BOOL
        if isinstance(t, BoolZero):
            return core.ZERO
        if isinstance(t, BoolOne):
            return core.ONE
        raise AssertionError(f"not a surface term: {t!r}")

    return go(t)


def elaborate(program: Program) -> List[ElaboratedDecl]:
    """Resolve every declaration, inlining earlier definitions into later ones."""
    defs: Dict[str, core.Term] = {}
    out = []
    for d in program.decls:
        ty = resolve([], d.declared_type, defs)
        body = resolve([], d.body, defs)
        defs[d.name] = body
        out.append(ElaboratedDecl(d.name, ty, body, d.location))
    return out


# -- pretty-printing --------------------------------------------------------

_TOP, _SPINE, _ATOM = 0, 1, 2


def pretty(t: core.Term, hints: Sequence[str] = ()) -> str:
    """Render ``t`` in surface syntax.

    ``hints`` names the free variables (innermost last). Binders are named
    ``x<depth>``, skipping any name already in use, so output depends only on
    the term and the hints.
    """
    taken = set(hints)
    names = list(hints)

    def binder() -> str:
        i = len(names)
        while f"x{i}" in taken:
            i += 1
        return f"x{i}"

    def bind(x: str, t: core.Term) -> str:
        names.append(x)
        taken.add(x)
        try:
            return go(t, _TOP)
        finally:
            names.pop()
            taken.discard(x)

    def paren(s: str, needed: bool) -> str:
        return f"({s})" if needed else s

    def go(t: core.Term, prec: int) -> str:
        if isinstance(t, core.Ix):
            assert t.index < len(names), f"{t} is not bound"
            return names[len(names) - 1 - t.index]
        if isinstance(t, core.Lam):
            x = binder()
            s = f"fun ({x} : {go(t.annotation, _TOP)}) => {bind(x, t.body)}"
            return paren(s, prec > _TOP)
        if isinstance(t, core.Pi):
            x = binder()
            s = f"({x} : {go(t.domain, _TOP)}) -> {bind(x, t.codomain)}"
            return paren(s, prec > _TOP)
        if isinstance(t, core.App):
            return paren(f"{go(t.fun, _SPINE)} {go(t.arg, _ATOM)}", prec > _SPINE)
        if isinstance(t, core.Brec):
            s = f"brec {go(t.motive, _ATOM)} {go(t.case0, _ATOM)} {go(t.case1, _ATOM)}"
            return paren(s, prec > _SPINE)
        if isinstance(t, core.Univ):
            return f"U{t.level}"
        if isinstance(t, core.Bool):
            return "N2"
        if isinstance(t, core.Zero):
            return "0"
        if isinstance(t, core.One):
            return "1"
        raise AssertionError(f"not a core term: {t!r}")

    return go(t, _TOP)
