"""Concrete syntax for terms.

Lexical classes::

    $x        variable          #c      constant
    a, f      atom / relation   C, Top  concept (Top and Bot are distinguished)

Grammar (``&`` is left associative and binds loosest)::

    term   ::= unary { "&" unary }
    unary  ::= "(" term ")"
             | "!" prim
             | prim
             | "some" REL ":" unary
             | "all" REL ":" unary
             | REL "(" VAR ")" "!=" REL "(" VAR ")"
             | REL ":" body
    body   ::= "{" term { "," term } "}" [ "=" ]
             | ">=" REL "(" VAR ")"
             | REL "(" VAR ")" ( "union" | "isect" | "dunion" ) REL "(" VAR ")"
             | unary
    corpus ::= { NAME "=" term "." }

``%`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .terms import (
    BOT,
    TOP,
    Atom,
    Concept,
    Conj,
    Const,
    DisjointUnion,
    Disjointness,
    Exists,
    Feature,
    FixedSet,
    Forall,
    Intersection,
    KindError,
    Not,
    SetDesc,
    Signature,
    Superset,
    Term,
    Union,
    Var,
    validate,
)

KEYWORDS = {"some", "all", "union", "isect", "dunion"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<var>\$[A-Za-z0-9_][\w\-]*)
  | (?P<const>\#[A-Za-z0-9_][\w\-]*)
  | (?P<ident>[A-Za-z_][\w\-]*)
  | (?P<op>!=|>=|[:{}(),=&!.])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0, origin: str = "<string>"):
        self.message = message
        self.line = line
        self.col = col
        self.origin = origin
        super().__init__(f"{origin}:{line}:{col}: {message}")


class TermKindError(ParseError):
    pass


class TermValidationError(ParseError):
    def __init__(self, violations, origin: str = "<string>"):
        self.violations = violations
        text = "; ".join(str(v) for v in violations)
        super().__init__(f"ill-formed term: {text}", 0, 0, origin)


@dataclass(frozen=True)
class SourceText:
    text: str
    origin: str = "<string>"


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    line: int
    col: int


def _tokenize(src: SourceText) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    text = src.text
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, src.origin)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            if kind == "ident" and value in KEYWORDS:
                kind = "kw"
            toks.append(_Tok(kind, value, line, pos - line_start + 1))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, src: SourceText, sig: Signature | None):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0
        self.sig = sig if sig is not None else Signature()

    # token helpers

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, value: str) -> bool:
        return self.tok.kind in ("op", "kw") and self.tok.value == value

    def error(self, message: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col, self.src.origin)

    def expect(self, value: str) -> _Tok:
        if not self.at(value):
            found = self.tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")
        tok = self.tok
        self.i += 1
        return tok

    def declare(self, kind: str, name: str, tok: _Tok) -> str:
        try:
            self.sig = self.sig.declare(kind, name)
        except KindError as exc:
            raise TermKindError(str(exc), tok.line, tok.col, self.src.origin) from None
        return name

    def relation(self) -> str:
        tok = self.tok
        if tok.kind != "ident" or tok.value[0].isupper():
            raise self.error(f"expected a relation symbol, found {tok.value or 'end of input'!r}")
        self.i += 1
        return self.declare("relation", tok.value, tok)

    def variable(self) -> str:
        tok = self.tok
        if tok.kind != "var":
            raise self.error(f"expected a variable, found {tok.value or 'end of input'!r}")
        self.i += 1
        return self.declare("variable", tok.value[1:], tok)

    def rel_of_var(self) -> tuple[str, str]:
        rel = self.relation()
        self.expect("(")
        var = self.variable()
        self.expect(")")
        return rel, var

    # grammar

    def term(self) -> Term:
        left = self.unary()
        while self.at("&"):
            self.i += 1
            left = Conj(left, self.unary())
        return left

    def primitive(self) -> Term | None:
        tok = self.tok
        if tok.kind == "var":
            self.i += 1
            return Var(self.declare("variable", tok.value[1:], tok))
        if tok.kind == "const":
            self.i += 1
            return Const(self.declare("constant", tok.value[1:], tok))
        if tok.kind == "ident" and tok.value[0].isupper():
            self.i += 1
            return Concept(self.declare("concept", tok.value, tok))
        if tok.kind == "ident" and not (self.peek().kind == "op" and self.peek().value in (":", "(")):
            self.i += 1
            return Atom(self.declare("atom", tok.value, tok))
        return None

    def unary(self) -> Term:
        tok = self.tok
        if self.at("("):
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        if self.at("!"):
            self.i += 1
            prim = self.primitive()
            if prim is None:
                raise self.error("negation applies only to variables, atoms, constants and concepts")
            return Not(prim)
        if self.at("some") or self.at("all"):
            self.i += 1
            rel = self.relation()
            self.expect(":")
            body = self.unary()
            return Exists(rel, body) if tok.value == "some" else Forall(rel, body)
        prim = self.primitive()
        if prim is not None:
            return prim
        if tok.kind == "ident":
            if self.peek().value == "(":
                return self.disjointness()
            rel = self.relation()
            self.expect(":")
            return self.body(rel)
        raise self.error(f"unexpected {tok.value or 'end of input'!r}")

    def disjointness(self) -> Term:
        g, x = self.rel_of_var()
        self.expect("!=")
        h, y = self.rel_of_var()
        return Disjointness(g, x, h, y)

    def body(self, rel: str) -> Term:
        if self.at("{"):
            self.i += 1
            elems = [self.term()]
            while self.at(","):
                self.i += 1
                elems.append(self.term())
            self.expect("}")
            if self.at("="):
                self.i += 1
                return FixedSet(rel, tuple(elems))
            return SetDesc(rel, tuple(elems))
        if self.at(">="):
            self.i += 1
            g, x = self.rel_of_var()
            return Superset(rel, g, x)
        if self.tok.kind == "ident" and self.peek().value == "(":
            g, x = self.rel_of_var()
            if self.at("!="):
                self.i += 1
                h, y = self.rel_of_var()
                return Feature(rel, Disjointness(g, x, h, y))
            for kw, cls in (("union", Union), ("isect", Intersection), ("dunion", DisjointUnion)):
                if self.at(kw):
                    self.i += 1
                    h, y = self.rel_of_var()
                    return cls(rel, g, x, h, y)
            raise self.error("expected 'union', 'isect', 'dunion' or '!='")
        return Feature(rel, self.unary())


def _as_source(src: SourceText | str, origin: str) -> SourceText:
    return src if isinstance(src, SourceText) else SourceText(src, origin)


def parse(src: SourceText | str, sig: Signature | None = None, *, origin: str = "<string>",
          check: bool = True) -> Term:
    """Parse one term.

    Undeclared names are declared on first use with the kind given by their
    lexical class; reusing a name at another kind raises TermKindError.
    With ``check`` the result is validated and TermValidationError raised
    on any violation.
    """
    term, _ = parse_with_signature(src, sig, origin=origin, check=check)
    return term


def parse_with_signature(src: SourceText | str, sig: Signature | None = None, *,
                         origin: str = "<string>", check: bool = True) -> tuple[Term, Signature]:
    source = _as_source(src, origin)
    p = _Parser(source, sig)
    term = p.term()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.value!r} after term")
    if check:
        violations = validate(term, p.sig)
        if violations:
            raise TermValidationError(violations, source.origin)
    return term, p.sig


def parse_corpus(src: SourceText | str, sig: Signature | None = None, *,
                 origin: str = "<string>") -> dict[str, Term]:
    """Parse ``name = term.`` clauses; names must be unique."""
    source = _as_source(src, origin)
    p = _Parser(source, sig)
    out: dict[str, Term] = {}
    while p.tok.kind != "eof":
        tok = p.tok
        if tok.kind != "ident":
            raise p.error("expected a clause name")
        if tok.value in out:
            raise p.error(f"duplicate clause {tok.value!r}")
        p.i += 1
        p.expect("=")
        term = p.term()
        p.expect(".")
        violations = validate(term, p.sig)
        if violations:
            raise TermValidationError(violations, source.origin)
        out[tok.value] = term
    return out


def load(path, sig: Signature | None = None) -> dict[str, Term] | Term:
    """Read a term file: a corpus of clauses, or a single bare term."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    source = SourceText(text, str(path))
    if re.match(r"\s*(%[^\n]*\s*)*[A-Za-z_][\w\-]*\s*=(?!=)", text):
        return parse_corpus(source, sig)
    return parse(source, sig)


def _prim(term: Term) -> str:
    if isinstance(term, Var):
        return "$" + term.name
    if isinstance(term, Const):
        return "#" + term.name
    if isinstance(term, (Atom, Concept)):
        return term.name
    raise TypeError(f"not a primitive: {term!r}")


def render(term: Term) -> str:
    """Print ``term`` so that ``parse(render(t)) == t``."""
    if isinstance(term, (Var, Const, Atom, Concept)):
        return _prim(term)
    if isinstance(term, Not):
        if isinstance(term.arg, (Var, Const, Atom, Concept)):
            return "!" + _prim(term.arg)
        raise ValueError("negation of a compound term has no surface form")
    if isinstance(term, Feature):
        return f"{term.rel}: {render(term.body)}"
    if isinstance(term, Exists):
        return f"some {term.rel}: {render(term.body)}"
    if isinstance(term, Forall):
        return f"all {term.rel}: {render(term.body)}"
    if isinstance(term, SetDesc):
        return f"{term.rel}: {{{', '.join(render(e) for e in term.elems)}}}"
    if isinstance(term, FixedSet):
        return f"{term.rel}: {{{', '.join(render(e) for e in term.elems)}}}="
    if isinstance(term, (Union, Intersection, DisjointUnion)):
        op = {Union: "union", Intersection: "isect", DisjointUnion: "dunion"}[type(term)]
        return f"{term.rel}: {term.left_rel}(${term.left_var}) {op} {term.right_rel}(${term.right_var})"
    if isinstance(term, Superset):
        return f"{term.rel}: >= {term.sub_rel}(${term.var})"
    if isinstance(term, Disjointness):
        return f"{term.left_rel}(${term.left_var}) != {term.right_rel}(${term.right_var})"
    if isinstance(term, Conj):
        return f"({render(term.left)} & {render(term.right)})"
    raise TypeError(f"not a term: {term!r}")


__all__ = [
    "BOT", "TOP", "ParseError", "SourceText", "TermKindError", "TermValidationError",
    "load", "parse", "parse_corpus", "parse_with_signature", "render",
]
