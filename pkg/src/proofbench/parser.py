"""Concrete syntax: parse and render formulas and terms.

Grammar (loosest to tightest):

    implication   ->   right-associative
    equivalence   <->  left-associative
    disjunction   \\/   left-associative
    conjunction   /\\   left-associative
    prefixes      ~F, (Ax1)F, (Ex1)F
    atoms         t = t, t < t, parenthesized formulas

Terms: ``+`` and ``*`` are left-associative with ``*`` binding tighter; ``S``
is applied as ``S(t)``; variables are ``x1, x2, ...``; constants ``0``/``1``.
``#`` starts a comment running to end of line.

:func:`render` produces the minimal-paren form that :func:`parse` reads back
to an equal tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    And,
    App,
    Atom,
    Const,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Term,
    Var,
)


class ParseError(ValueError):
    """Raised on malformed input, with a character position."""

    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<var>x[0-9]+)
  | (?P<const>[01])
  | (?P<name>[SAE])
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<and>/\\)
  | (?P<or>\\/)
  | (?P<not>~)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<plus>\+)
  | (?P<star>\*)
  | (?P<eq>=)
  | (?P<lt><)
  | (?P<comma>,)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup or ""
        if kind != "ws":
            out.append(_Token(kind, m.group(), pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[_Token], length: int) -> None:
        self.toks = tokens
        self.pos = 0
        self.length = length

    # -- token helpers -------------------------------------------------

    def _peek(self, ahead: int = 0) -> _Token | None:
        i = self.pos + ahead
        return self.toks[i] if i < len(self.toks) else None

    def _next(self) -> _Token:
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.length)
        self.pos += 1
        return tok

    def _expect(self, kind: str, what: str) -> _Token:
        tok = self._peek()
        if tok is None or tok.kind != kind:
            at = tok.pos if tok else self.length
            got = repr(tok.text) if tok else "end of input"
            raise ParseError(f"expected {what}, got {got}", at)
        self.pos += 1
        return tok

    def _here(self) -> int:
        tok = self._peek()
        return tok.pos if tok else self.length

    # -- formulas ------------------------------------------------------

    def formula(self) -> Formula:
        left = self.equivalence()
        tok = self._peek()
        if tok and tok.kind == "imp":
            self._next()
            right = self.formula()  # right-associative
            return Implies(left, right)
        return left

    def equivalence(self) -> Formula:
        left = self.disjunction()
        while (tok := self._peek()) and tok.kind == "iff":
            self._next()
            left = Iff(left, self.disjunction())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while (tok := self._peek()) and tok.kind == "or":
            self._next()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while (tok := self._peek()) and tok.kind == "and":
            self._next()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.length)
        if tok.kind == "not":
            self._next()
            return Not(self.unary())
        if tok.kind == "lpar" and self._is_quantifier():
            self._next()  # (
            q = self._next()  # A or E
            v = self._next()  # var
            self._expect("rpar", "')'")
            body = self.unary()
            var_id = int(v.text[1:])
            return Forall(var_id, body) if q.text == "A" else Exists(var_id, body)
        return self.atom_or_group()

    def _is_quantifier(self) -> bool:
        q = self._peek(1)
        v = self._peek(2)
        r = self._peek(3)
        return (
            q is not None
            and q.kind == "name"
            and q.text in ("A", "E")
            and v is not None
            and v.kind == "var"
            and r is not None
            and r.kind == "rpar"
        )

    def atom_or_group(self) -> Formula:
        start = self.pos
        try:
            return self._atom()
        except ParseError:
            self.pos = start
        self._expect("lpar", "'('")
        inner = self.formula()
        self._expect("rpar", "')'")
        return inner

    def _atom(self) -> Formula:
        left = self.term()
        tok = self._peek()
        if tok is None or tok.kind not in ("eq", "lt"):
            raise ParseError("expected '=' or '<'", self._here())
        self._next()
        right = self.term()
        return Atom("=" if tok.kind == "eq" else "<", (left, right))

    # -- terms ---------------------------------------------------------

    def term(self) -> Term:
        left = self.product()
        while (tok := self._peek()) and tok.kind == "plus":
            self._next()
            left = App("+", (left, self.product()))
        return left

    def product(self) -> Term:
        left = self.term_primary()
        while (tok := self._peek()) and tok.kind == "star":
            self._next()
            left = App("*", (left, self.term_primary()))
        return left

    def term_primary(self) -> Term:
        tok = self._peek()
        if tok is None:
            raise ParseError("expected a term", self.length)
        if tok.kind == "var":
            self._next()
            return Var(int(tok.text[1:]))
        if tok.kind == "const":
            self._next()
            return Const(tok.text)
        if tok.kind == "name" and tok.text == "S":
            self._next()
            self._expect("lpar", "'(' after S")
            inner = self.term()
            self._expect("rpar", "')'")
            return App("S", (inner,))
        if tok.kind == "lpar":
            self._next()
            inner = self.term()
            self._expect("rpar", "')'")
            return inner
        raise ParseError(f"expected a term, got {tok.text!r}", tok.pos)


def parse(text: str) -> Formula:
    """Parse ``text`` as a formula; raises :class:`ParseError` on junk."""
    p = _Parser(_tokenize(text), len(text))
    f = p.formula()
    tok = p._peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok.text!r}", tok.pos)
    return f


def parse_term(text: str) -> Term:
    """Parse ``text`` as a term."""
    p = _Parser(_tokenize(text), len(text))
    t = p.term()
    tok = p._peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok.text!r}", tok.pos)
    return t


# -- rendering ---------------------------------------------------------

_PREC_IMP = 0
_PREC_IFF = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_UNARY = 4


def render_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.id}"
    if isinstance(t, Const):
        return t.name
    if isinstance(t, App):
        if t.func == "S":
            return f"S({render_term(t.args[0])})"
        if t.func == "+":
            left = render_term(t.args[0])
            right_raw = t.args[1]
            right = render_term(right_raw)
            # + is left-associative; a + on the right needs parens
            if isinstance(right_raw, App) and right_raw.func == "+":
                right = f"({right})"
            return f"{left} + {right}"
        if t.func == "*":
            lraw, rraw = t.args
            left = render_term(lraw)
            if isinstance(lraw, App) and lraw.func == "+":
                left = f"({left})"
            right = render_term(rraw)
            if isinstance(rraw, App) and rraw.func in ("+", "*"):
                right = f"({right})"
            return f"{left} * {right}"
    raise TypeError(f"not a term: {t!r}")


def _render(f: Formula, ctx: int) -> str:
    if isinstance(f, Atom):
        op = " = " if f.pred == "=" else " < "
        s = render_term(f.args[0]) + op + render_term(f.args[1])
        # under a prefix (~ or a quantifier) an atom needs parens to read back
        return f"({s})" if ctx >= _PREC_UNARY else s
    if isinstance(f, Not):
        return "~" + _render(f.body, _PREC_UNARY)
    if isinstance(f, Forall):
        return f"(Ax{f.var})" + _render(f.body, _PREC_UNARY)
    if isinstance(f, Exists):
        return f"(Ex{f.var})" + _render(f.body, _PREC_UNARY)
    if isinstance(f, Implies):
        s = _render(f.left, _PREC_IFF) + " -> " + _render(f.right, _PREC_IMP)
        return f"({s})" if ctx > _PREC_IMP else s
    if isinstance(f, Iff):
        s = _render(f.left, _PREC_IFF) + " <-> " + _render(f.right, _PREC_OR)
        return f"({s})" if ctx > _PREC_IFF else s
    if isinstance(f, Or):
        s = _render(f.left, _PREC_OR) + " \\/ " + _render(f.right, _PREC_AND)
        return f"({s})" if ctx > _PREC_OR else s
    if isinstance(f, And):
        s = _render(f.left, _PREC_AND) + " /\\ " + _render(f.right, _PREC_UNARY)
        return f"({s})" if ctx > _PREC_AND else s
    raise TypeError(f"not a formula: {f!r}")


def render(f: Formula) -> str:
    """Minimal-paren concrete syntax; ``parse(render(f)) == f``."""
    return _render(f, _PREC_IMP)
