"""Surface-language parser.

Grammar (ASCII keywords; the Unicode aliases forall/∀, ->/→ and fun/λ are
accepted on input, ASCII is emitted on output):

    program  := { decl }
    decl     := "def" NAME [ ":" term ] ":=" term "."
              | "axiom" NAME ":" term "."
              | "assume" NAME ":" term "."
              | "#check" term "."
              | "#reduce" term "."
    term     := "forall" binder "," term | "fun" binder "," term
              | term "->" term            (right associative)
              | app
    app      := atom { atom }             (left associative)
    atom     := NAME | "Prop" | "Type" | "(" term ")"
              | "Eq" atom atom atom | "refl" atom atom
              | "Eq_rec" atom atom atom atom atom atom
              | "cast" atom atom atom atom | "J" atom atom atom
    binder   := "(" NAME ":" term ")"
    comment  := "--" to end of line

The primitive forms must be fully applied; under-application is an arity
error, since the reduction rules only ever match saturated nodes.  Scope is
resolved during parsing: binders become de Bruijn indices, known globals
become Global references, anything else is an unbound-identifier error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .syntax import (
    KIND, PROP, TYPE,
    App, Cast, Eq, EqRec, Global, J, Lam, Pi, Refl, SortT, Term, Var, shift,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Def:
    name: str
    stated_type: Term | None
    body: Term


@dataclass(frozen=True)
class Axiom:
    name: str
    type_: Term


@dataclass(frozen=True)
class Assume:
    name: str
    type_: Term


@dataclass(frozen=True)
class PragmaCheck:
    term: Term


@dataclass(frozen=True)
class PragmaReduce:
    term: Term
    strategy: str | None = None  # no surface syntax; set programmatically


Declaration = Def | Axiom | Assume | PragmaCheck | PragmaReduce


@dataclass(frozen=True)
class Program:
    declarations: tuple[Declaration, ...]


KEYWORDS = {
    "def", "axiom", "assume", "forall", "fun",
    "Prop", "Type", "Kind", "Eq", "refl", "Eq_rec", "cast", "J",
}

PRIM_ARITY = {"Eq": 3, "refl": 2, "Eq_rec": 6, "cast": 4, "J": 3}

_ALIASES = {"∀": "forall", "λ": "fun"}


@dataclass(frozen=True)
class Token:
    kind: str  # NAME KEYWORD PRAGMA LPAREN RPAREN COLON COLONEQ COMMA DOT ARROW EOF
    value: str
    line: int
    col: int


def _is_name_start(c: str) -> bool:
    return c.isascii() and (c.isalpha() or c == "_")


def _is_name_char(c: str) -> bool:
    return c.isascii() and (c.isalnum() or c == "_")


def tokenize(src: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(src)

    def advance(k: int = 1) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if i < n and src[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = src[i]
        if c in " \t\r\n":
            advance()
            continue
        if src.startswith("--", i):
            while i < n and src[i] != "\n":
                advance()
            continue
        start_line, start_col = line, col
        if c == "#":
            j = i + 1
            while j < n and _is_name_char(src[j]):
                j += 1
            word = src[i:j]
            if word not in ("#check", "#reduce"):
                raise ParseError(f"unknown pragma {word!r}", start_line, start_col)
            toks.append(Token("PRAGMA", word, start_line, start_col))
            advance(j - i)
            continue
        if src.startswith("->", i) or c == "→":
            width = 2 if src.startswith("->", i) else 1
            toks.append(Token("ARROW", "->", start_line, start_col))
            advance(width)
            continue
        if src.startswith(":=", i):
            toks.append(Token("COLONEQ", ":=", start_line, start_col))
            advance(2)
            continue
        if c in _ALIASES:
            toks.append(Token("KEYWORD", _ALIASES[c], start_line, start_col))
            advance()
            continue
        simple = {"(": "LPAREN", ")": "RPAREN", ":": "COLON", ",": "COMMA", ".": "DOT"}
        if c in simple:
            toks.append(Token(simple[c], c, start_line, start_col))
            advance()
            continue
        if _is_name_start(c):
            j = i
            while j < n and _is_name_char(src[j]):
                j += 1
            word = src[i:j]
            kind = "KEYWORD" if word in KEYWORDS else "NAME"
            toks.append(Token(kind, word, start_line, start_col))
            advance(j - i)
            continue
        raise ParseError(f"unexpected character {c!r}", start_line, start_col)
    toks.append(Token("EOF", "", line, col))
    return toks


_ATOM_START = {"NAME", "LPAREN"}
_ATOM_KEYWORDS = {"Prop", "Type", "Kind", "Eq", "refl", "Eq_rec", "cast", "J"}


class _Parser:
    def __init__(self, toks: list[Token], globals_in_scope: Iterable[str]) -> None:
        self.toks = toks
        self.pos = 0
        self.globals = set(globals_in_scope)
        self.locals: list[str] = []  # innermost last

    @property
    def cur(self) -> Token:
        return self.toks[self.pos]

    def bump(self) -> Token:
        tok = self.cur
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        if self.cur.kind != kind:
            raise ParseError(
                f"expected {what}, found {self.cur.value or 'end of input'!r}",
                self.cur.line, self.cur.col)
        return self.bump()

    def at_atom_start(self) -> bool:
        tok = self.cur
        if tok.kind in _ATOM_START:
            return True
        return tok.kind == "KEYWORD" and tok.value in _ATOM_KEYWORDS

    # term := forall/fun binder "," term | term "->" term | app
    def parse_term(self) -> Term:
        tok = self.cur
        if tok.kind == "KEYWORD" and tok.value in ("forall", "fun"):
            self.bump()
            name, dom = self.parse_binder()
            self.expect("COMMA", "','")
            self.locals.append(name)
            try:
                body = self.parse_term()
            finally:
                self.locals.pop()
            node = Pi if tok.value == "forall" else Lam
            return node(dom, body, name=name)
        lhs = self.parse_app()
        if self.cur.kind == "ARROW":
            self.bump()
            rhs = self.parse_term()
            # non-dependent function space: the binder is unused, so indices
            # in the codomain step over it
            return Pi(lhs, shift(rhs, 0, 1), name="_")
        return lhs

    def parse_binder(self) -> tuple[str, Term]:
        self.expect("LPAREN", "'('")
        name = self.expect("NAME", "binder name").value
        self.expect("COLON", "':'")
        ty = self.parse_term()
        self.expect("RPAREN", "')'")
        return name, ty

    def parse_app(self) -> Term:
        t = self.parse_atom()
        while self.at_atom_start():
            t = App(t, self.parse_atom())
        return t

    def parse_atom(self) -> Term:
        tok = self.cur
        if tok.kind == "LPAREN":
            self.bump()
            t = self.parse_term()
            self.expect("RPAREN", "')'")
            return t
        if tok.kind == "NAME":
            self.bump()
            return self.resolve(tok)
        if tok.kind == "KEYWORD":
            if tok.value in ("Prop", "Type", "Kind"):
                self.bump()
                return SortT({"Prop": PROP, "Type": TYPE, "Kind": KIND}[tok.value])
            if tok.value in PRIM_ARITY:
                self.bump()
                args = self.parse_prim_args(tok)
                match tok.value:
                    case "Eq":
                        return Eq(*args)
                    case "refl":
                        return Refl(*args)
                    case "Eq_rec":
                        return EqRec(*args)
                    case "cast":
                        return Cast(*args)
                    case "J":
                        return J(*args)
        raise ParseError(
            f"expected a term, found {tok.value or 'end of input'!r}",
            tok.line, tok.col)

    def parse_prim_args(self, kw: Token) -> list[Term]:
        want = PRIM_ARITY[kw.value]
        args: list[Term] = []
        for _ in range(want):
            if not self.at_atom_start():
                raise ParseError(
                    f"{kw.value} expects {want} arguments, got {len(args)}",
                    kw.line, kw.col)
            args.append(self.parse_atom())
        return args

    def resolve(self, tok: Token) -> Term:
        for depth, name in enumerate(reversed(self.locals)):
            if name == tok.value:
                return Var(depth)
        if tok.value in self.globals:
            return Global(tok.value)
        raise ParseError(f"unbound identifier {tok.value!r}", tok.line, tok.col)


def parse_term(src: str, scope: Iterable[str] = ()) -> Term:
    """Parse a single term; ``scope`` lists the global names in scope."""
    p = _Parser(tokenize(src), scope)
    t = p.parse_term()
    p.expect("EOF", "end of input")
    return t


def parse_program(src: str) -> Program:
    toks = tokenize(src)
    decls: list[Declaration] = []
    names: set[str] = set()
    p = _Parser(toks, ())
    p.globals = names  # live alias: each declaration extends the scope
    while p.cur.kind != "EOF":
        tok = p.cur
        if tok.kind == "KEYWORD" and tok.value in ("def", "axiom", "assume"):
            p.bump()
            name_tok = p.expect("NAME", "declaration name")
            if name_tok.value in names:
                raise ParseError(f"duplicate name {name_tok.value!r}",
                                 name_tok.line, name_tok.col)
            if tok.value == "def":
                stated: Term | None = None
                if p.cur.kind == "COLON":
                    p.bump()
                    stated = p.parse_term()
                p.expect("COLONEQ", "':='")
                body = p.parse_term()
                decls.append(Def(name_tok.value, stated, body))
            else:
                p.expect("COLON", "':'")
                ty = p.parse_term()
                cls = Axiom if tok.value == "axiom" else Assume
                decls.append(cls(name_tok.value, ty))
            names.add(name_tok.value)
        elif tok.kind == "PRAGMA":
            p.bump()
            term = p.parse_term()
            decls.append(PragmaCheck(term) if tok.value == "#check"
                         else PragmaReduce(term))
        else:
            raise ParseError(
                f"expected a declaration, found {tok.value or 'end of input'!r}",
                tok.line, tok.col)
        p.expect("DOT", "'.'")
    return Program(tuple(decls))
