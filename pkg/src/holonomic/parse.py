"""Text form of operators.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INT)?
    atom   := INT ("/" INT)? | NAME | "(" expr ")"

``d<name>`` denotes the derivation of the declared variable ``<name>``; ``*`` is
the noncommutative product, evaluated left to right and normally ordered on
the fly.  :func:`format_element` prints in the same grammar, grouped by
derivation monomial, so that ``parse_operator(format_element(P)) == P``.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from .weyl import VarTable, WeylElement, _grevlex_key

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    """Syntax error or undeclared name; ``pos`` is the offending offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))
        self.pos = pos


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", pos, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()/":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            out.append(("op", ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, ring: VarTable, text: str):
        self.ring = ring
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[0] != "op" or t[1] != value:
            raise ParseError(f"expected {value!r}", t[2], self.text)

    def parse(self):
        e = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError("unexpected token", t[2], self.text)
        return e

    def expr(self):
        e = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                r = self.term()
                e = e + r if t[1] == "+" else e - r
            else:
                return e

    def term(self):
        e = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                e = e * self.unary()
            else:
                return e

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            e = self.unary()
            return -e if t[1] == "-" else e
        return self.power()

    def power(self):
        e = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            n = self.take()
            if n[0] != "int":
                raise ParseError("expected an integer exponent", n[2], self.text)
            e = e ** n[1]
        return e

    def atom(self):
        t = self.take()
        if t[0] == "int":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "int" or d[1] == 0:
                    raise ParseError("expected a nonzero integer denominator", d[2], self.text)
                return self.ring.const(mpq(t[1], d[1]))
            return self.ring.const(t[1])
        if t[0] == "name":
            if not self.ring.has(t[1]):
                raise ParseError(f"undeclared name {t[1]!r}", t[2], self.text)
            return self.ring.gen(t[1])
        if t[0] == "op" and t[1] == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError("unexpected token", t[2], self.text)


def parse_operator(text: str, ring: VarTable) -> WeylElement:
    return _Parser(ring, text).parse()


def parse_polynomial(text: str, ring: VarTable) -> WeylElement:
    p = parse_operator(text, ring)
    if not p.derivation_free():
        raise ValueError(f"{text!r} is not a polynomial (it contains derivations)")
    return p


def _fmt_coef(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _fmt_mono(names, e) -> str:
    parts = []
    for n, k in zip(names, e):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return "*".join(parts)


def _fmt_sum(names, terms) -> str:
    """Signed sum; returns text starting with '-' when the first term is negative."""
    out = []
    for e, c in sorted(terms.items(), key=lambda kv: _grevlex_key(kv[0]), reverse=True):
        mono = _fmt_mono(names, e)
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{_fmt_coef(a)}*{mono}"
        else:
            body = _fmt_coef(a)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def format_element(p: WeylElement) -> str:
    r = p.ring
    if not p.terms:
        return "0"
    N = r.N
    names = r.slot_names
    cnames = names[:N] + names[2 * N:]
    dnames = names[N:2 * N]
    groups: dict = {}
    for e, c in p.terms.items():
        d = tuple(e[N:2 * N])
        groups.setdefault(d, {})[tuple(e[:N]) + tuple(e[2 * N:])] = c
    pieces = []
    for d in sorted(groups, key=lambda d: (sum(d),) + tuple(d), reverse=True):
        coef = groups[d]
        dm = _fmt_mono(dnames, d)
        if not dm:
            s = _fmt_sum(cnames, coef)
            neg = s.startswith("-")
            body = s[1:] if neg else s
            pieces.append((neg, body))
            continue
        if len(coef) == 1:
            (e, c), = coef.items()
            cm = _fmt_mono(cnames, e)
            a = abs(c)
            lead = []
            if a != 1:
                lead.append(_fmt_coef(a))
            if cm:
                lead.append(cm)
            lead.append(dm)
            pieces.append((c < 0, "*".join(lead)))
        else:
            pieces.append((False, f"({_fmt_sum(cnames, coef)})*{dm}"))
    out = []
    for k, (neg, body) in enumerate(pieces):
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
