"""Text syntax for words and polynomials.

Grammar::

    poly  := term { ("+" | "-") term } | "0"
    term  := ["-"] [rational ["*"]] word
    word  := atom { atom }
    atom  := "D" ["^" nat] "(" inner ")" | op "(" inner { "," inner } ")"
           | generator | "*STAR*"

``inner`` is a word when parsing words and a polynomial otherwise; in
polynomial context ``D`` and operators extend linearly, so ``D(x y)`` expands
by the weight-lambda Leibniz rule.  Printing is the inverse on canonical forms.
"""

from __future__ import annotations

import re

from .diff import d_power, op_apply
from .poly import Poly, format_poly, poly_mul
from .terms import (
    Q,
    STAR,
    STAR_TOKEN,
    OpApp,
    Signature,
    SignatureError,
    Word,
    format_word,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<star>\*STAR\*)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[()^,+*-])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None, text: str = ""):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind if kind != "sym" else m.group(), m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature, *, word_only: bool, allow_star: bool):
        self.text = text
        self.sig = sig
        self.lam = sig.lam
        self.word_only = word_only
        self.allow_star = allow_star
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers
    def peek(self, k: int = 0):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def take(self, kind: str | None = None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok)
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], self.text)

    def _starts_atom(self) -> bool:
        kind = self.peek()[0]
        return kind in ("ident", "star")

    # grammar
    def parse_poly(self) -> Poly:
        if self.peek()[0] == "num" and self.peek()[1] == "0" and self.peek(1)[0] in ("eof", ")", ","):
            self.take()
            return Poly.zero()
        acc = self.parse_term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            term = self.parse_term()
            acc = acc + term if op == "+" else acc - term
        return acc

    def parse_term(self) -> Poly:
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        coef = Q(sign)
        if self.peek()[0] == "num":
            tok = self.take()
            try:
                coef *= Q(tok[1])
            except ZeroDivisionError:
                self.fail("zero denominator", tok)
            if self.peek()[0] == "*":
                self.take()
            if not self._starts_atom():
                self.fail("a coefficient must multiply a word (there is no identity element)")
        return self.parse_word_poly().scale(coef)

    def parse_word_poly(self) -> Poly:
        if not self._starts_atom():
            self.fail("expected a word")
        acc = self.parse_atom()
        while self._starts_atom():
            acc = poly_mul(acc, self.parse_atom())
        return acc

    def parse_inner(self) -> Poly:
        if self.word_only:
            if not self._starts_atom():
                self.fail("empty word")
            return self.parse_word_poly()
        if self.peek()[0] == ")":
            self.fail("empty word")
        return self.parse_poly()

    def parse_atom(self) -> Poly:
        tok = self.peek()
        if tok[0] == "star":
            self.take()
            if not self.allow_star:
                self.fail(f"{STAR_TOKEN} is only allowed in star-words", tok)
            return Poly.word(Word.of(STAR))
        name = tok[1]
        self.take("ident")
        if name == "D":
            power = 1
            if self.peek()[0] == "^":
                self.take()
                if self.peek()[0] == "-":
                    self.fail("D applied with negative exponent")
                ntok = self.take("num")
                if "/" in ntok[1]:
                    self.fail("D exponent must be a natural number", ntok)
                power = int(ntok[1])
            self.take("(")
            inner = self.parse_inner()
            self.take(")")
            if self.word_only:
                w = inner.as_word()
                if len(w.atoms) != 1:
                    self.fail("D of a multi-atom word is a polynomial, not a word", tok)
                return Poly.word(Word((w.atoms[0].bumped(power),)))
            return d_power(inner, power, self.lam)
        if self.sig.has_op(name):
            op = self.sig.op(name)
            if self.peek()[0] != "(":
                self.fail(f"operator {name} needs arguments", tok)
            self.take("(")
            args = [self.parse_inner()]
            while self.peek()[0] == ",":
                self.take()
                args.append(self.parse_inner())
            self.take(")")
            if len(args) != op.arity:
                self.fail(f"operator {name} has arity {op.arity}, got {len(args)}", tok)
            if self.word_only:
                return Poly.word(Word.of(OpApp(op, [a.as_word() for a in args])))
            return op_apply(op, args)
        if self.sig.has_gen(name):
            if self.peek()[0] == "(" :
                self.fail(f"generator {name} cannot take arguments", tok)
            return Poly.word(Word.of(self.sig.gen(name)))
        self.fail(f"unknown symbol {name!r}", tok)

    def finish(self):
        if self.peek()[0] != "eof":
            self.fail(f"unexpected {self.peek()[1]!r}")


def parse_poly(text: str, sig: Signature, *, allow_star: bool = False) -> Poly:
    p = _Parser(text, sig, word_only=False, allow_star=allow_star)
    if p.peek()[0] == "eof":
        p.fail("empty input")
    try:
        out = p.parse_poly()
    except SignatureError as exc:
        raise ParseError(str(exc)) from None
    p.finish()
    return out


def parse_word(text: str, sig: Signature, *, allow_star: bool = False) -> Word:
    p = _Parser(text, sig, word_only=True, allow_star=allow_star)
    if p.peek()[0] == "eof":
        p.fail("empty word")
    out = p.parse_word_poly()
    p.finish()
    return out.as_word()


def print_word(w: Word) -> str:
    return format_word(w)


def print_poly(p: Poly) -> str:
    return format_poly(p)


def dump_polys(polys) -> str:
    return "".join(format_poly(p) + "\n" for p in polys)


def load_polys(text: str, sig: Signature) -> list[Poly]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_poly(line, sig))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return out
