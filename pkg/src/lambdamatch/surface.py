"""Concrete syntax for both calculi.

Grammar (application binds tighter than ``->``; binders extend right)::

    term := "Prop" | "Nat" | "O" | "S" | "Rec" "[" term "]" | ident
          | term term | "fun" ident ":" term "." term
          | "Pi" ident ":" term "." term | term "->" term | "(" term ")"

Under System F, ``Nat`` is sugar for ``Pi P:Prop. P -> (P -> P) -> P`` and
the printer folds that product back into ``Nat``.
"""

from __future__ import annotations

import re
from typing import List, Optional, Sequence

from .terms import (
    CHURCH_NAT, App, Context, KernelError, Lam, NAT_T, NatT, Pi, PROP, RecT, Sort, SUCC,
    SuccT, SystemTag, Term, Var, WrongCalculusError, ZERO, ZeroT, occurs,
    spine,
)

KEYWORDS = frozenset({"Prop", "Nat", "O", "S", "Rec", "fun", "Pi"})

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<arrow>->)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<punct>[()\[\]:.;])"
)


class ParseError(KernelError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}" if line else message)


class UnboundIdentifierError(ParseError):
    pass


class WrongCalculusSyntax(ParseError, WrongCalculusError):
    """A constructor of the other calculus appeared in the source."""


class _Lexer:
    def __init__(self, source: str):
        self.tokens = []
        pos, line, line_start = 0, 1, 0
        while pos < len(source):
            m = _TOKEN_RE.match(source, pos)
            if m is None:
                raise ParseError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1)
            kind = m.lastgroup
            text = m.group()
            if kind == "ws":
                for i, ch in enumerate(text):
                    if ch == "\n":
                        line += 1
                        line_start = pos + i + 1
            else:
                self.tokens.append((kind if kind != "punct" else text, text, line, pos - line_start + 1))
            pos = m.end()
        self.tokens.append(("eof", "", line, pos - line_start + 1))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2], tok[3])
        return tok


class _Parser:
    def __init__(self, source: str, system: SystemTag, scope: Sequence[str]):
        self.lex = _Lexer(source)
        self.system = system
        # innermost binder last
        self.scope: List[str] = list(scope)

    def error(self, message, tok, cls=ParseError):
        return cls(message, tok[2], tok[3])

    def parse_all(self) -> Term:
        t = self.term()
        tok = self.lex.peek()
        if tok[0] != "eof":
            raise self.error(f"unexpected {tok[1]!r}", tok)
        return t

    def term(self) -> Term:
        tok = self.lex.peek()
        if tok[0] == "ident" and tok[1] in ("fun", "Pi"):
            return self.binder()
        left = self.application()
        if self.lex.peek()[0] == "arrow":
            self.lex.next()
            self.scope.append("")  # unnameable placeholder for the arrow binder
            try:
                right = self.term()
            finally:
                self.scope.pop()
            return Pi("_", left, right)
        return left

    def binder(self) -> Term:
        kw = self.lex.next()
        name_tok = self.lex.expect("ident")
        name = name_tok[1]
        if name in KEYWORDS:
            raise self.error(f"keyword {name!r} cannot be bound", name_tok)
        self.lex.expect(":")
        ann = self.term()
        self.lex.expect(".")
        self.scope.append(name)
        try:
            body = self.term()
        finally:
            self.scope.pop()
        if kw[1] == "fun":
            return Lam(name, ann, body)
        return Pi(name, ann, body)

    def application(self) -> Term:
        t = self.atom()
        while True:
            tok = self.lex.peek()
            if tok[0] == "ident" and tok[1] in ("fun", "Pi"):
                return App(t, self.binder())
            if tok[0] in ("ident", "("):
                t = App(t, self.atom())
            else:
                return t

    def atom(self) -> Term:
        tok = self.lex.next()
        kind, text = tok[0], tok[1]
        if kind == "(":
            t = self.term()
            self.lex.expect(")")
            return t
        if kind != "ident":
            raise self.error(f"unexpected {text or 'end of input'!r}", tok)
        if text in ("fun", "Pi"):
            raise self.error(f"{text!r} needs parentheses here", tok)
        if text == "Prop":
            if self.system is SystemTag.T:
                raise self.error("Prop is not part of System T", tok, WrongCalculusSyntax)
            return PROP
        if text == "Nat":
            return NAT_T if self.system is SystemTag.T else CHURCH_NAT
        if text in ("O", "S", "Rec"):
            if self.system is SystemTag.F:
                raise self.error(f"{text!r} is a System T constructor", tok, WrongCalculusSyntax)
            if text == "O":
                return ZERO
            if text == "S":
                return SUCC
            self.lex.expect("[")
            motive = self.term()
            self.lex.expect("]")
            return RecT(motive)
        for depth, name in enumerate(reversed(self.scope)):
            if name == text:
                return Var(depth, text)
        raise self.error(f"unbound identifier {text!r}", tok, UnboundIdentifierError)


def parse_term(source: str, system=SystemTag.F, context: Optional[Context] = None) -> Term:
    """Parse ``source``; free identifiers resolve against ``context``."""
    system = SystemTag.coerce(system)
    scope = context.names() if context is not None else []
    return _Parser(source, system, scope).parse_all()


def parse_context(source: str, system=SystemTag.F) -> Context:
    """Parse ``[x:T; y:U]`` (each type may mention earlier names)."""
    system = SystemTag.coerce(system)
    p = _Parser(source, system, [])
    lex = p.lex
    lex.expect("[")
    entries = []
    if lex.peek()[0] != "]":
        while True:
            name_tok = lex.expect("ident")
            if name_tok[1] in KEYWORDS:
                raise p.error(f"keyword {name_tok[1]!r} cannot be declared", name_tok)
            lex.expect(":")
            ty = p.term()
            entries.append((name_tok[1], ty))
            p.scope.append(name_tok[1])
            if lex.peek()[0] == ";":
                lex.next()
                continue
            break
    lex.expect("]")
    tok = lex.peek()
    if tok[0] != "eof":
        raise p.error(f"unexpected {tok[1]!r}", tok)
    return Context(tuple(entries), system)


# ---------------------------------------------------------------------------
# Printing


def _fresh(hint: str, taken) -> str:
    base = hint if hint and re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", hint) and hint not in KEYWORDS else "x"
    if base not in taken:
        return base
    stem = base.rstrip("0123456789") or base
    i = 1
    while f"{stem}{i}" in taken:
        i += 1
    return f"{stem}{i}"


class _Printer:
    def __init__(self, names: Sequence[str]):
        self.names = list(names)

    def name_of(self, index: int) -> str:
        if index < len(self.names):
            return self.names[-1 - index]
        return f"?{index - len(self.names)}"

    def binder_name(self, hint: str) -> str:
        return _fresh(hint, set(self.names))

    # precedence: 0 = binder/arrow, 1 = application, 2 = atom
    def show(self, t: Term, prec: int = 0) -> str:
        if t == CHURCH_NAT:
            return "Nat"
        if isinstance(t, Sort):
            return "Prop"
        if isinstance(t, NatT):
            return "Nat"
        if isinstance(t, ZeroT):
            return "O"
        if isinstance(t, SuccT):
            return "S"
        if isinstance(t, Var):
            return self.name_of(t.index)
        if isinstance(t, RecT):
            return f"Rec[{self.show(t.motive)}]"
        if isinstance(t, App):
            head, args = spine(t)
            parts = [self.show(head, 2)] + [self.show(a, 2) for a in args]
            return self.paren(" ".join(parts), prec > 1)
        if isinstance(t, Pi) and not occurs(t.cod, 0):
            dom = self.show(t.dom, 1)
            self.names.append("")
            try:
                cod = self.show(t.cod, 0)
            finally:
                self.names.pop()
            return self.paren(f"{dom} -> {cod}", prec > 0)
        if isinstance(t, (Lam, Pi)):
            kw = "fun" if isinstance(t, Lam) else "Pi"
            ann = t.ann if isinstance(t, Lam) else t.dom
            body = t.body if isinstance(t, Lam) else t.cod
            ann_s = self.show(ann, 0)
            name = self.binder_name(t.hint)
            self.names.append(name)
            try:
                body_s = self.show(body, 0)
            finally:
                self.names.pop()
            return self.paren(f"{kw} {name}:{ann_s}. {body_s}", prec > 0)
        raise TypeError(f"not a term: {t!r}")

    @staticmethod
    def paren(s: str, wrap: bool) -> str:
        return f"({s})" if wrap else s


def print_term(t: Term, context: Optional[Context] = None) -> str:
    """Render ``t``; free indices are named from ``context`` when given."""
    names = context.names() if context is not None else []
    return _Printer(names).show(t)


def print_context(g: Context) -> str:
    parts = []
    for i, (name, ty) in enumerate(g.entries):
        parts.append(f"{name}:{_Printer([n for n, _ in g.entries[:i]]).show(ty)}")
    return "[" + "; ".join(parts) + "]"
