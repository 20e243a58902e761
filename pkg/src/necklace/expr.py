"""Parser for the textual element syntax used by the CLI.

    element  := ["-"] term (("+" | "-") term)*
    term     := [rational] ["h" ["^" int]] ["*"] [monomial]
    monomial := factor ("&" factor)* | "1"
    factor   := "(" edge+ ")" | "@" vertex | ("(" edge "," height ")")+

The last factor form is a height-labelled necklace; an expression either
uses it everywhere (a heighted element) or nowhere.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .heights import HeightedElement, heighted
from .hpoly import HPoly
from .necklaces import canonical_necklace, idempotent, make_monomial
from .quiver import DoubleQuiver
from .symalg import SymLElement, add_into


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.pos = pos


_NUM = re.compile(r"\d+(?:/\d+)?")
_INT = re.compile(r"\d+")
_NAME = re.compile(r"[A-Za-z0-9_]+\*?")
_H = re.compile(r"h(?![A-Za-z0-9_])")


class _Scanner:
    def __init__(self, dq: DoubleQuiver, text: str):
        self.dq, self.text, self.pos = dq, text, 0

    def error(self, msg):
        raise ParseError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, pattern):
        self.skip()
        m = pattern.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return m.group()
        return None

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def edge(self) -> int:
        name = self.take(_NAME)
        if name is None:
            self.error("expected an edge name")
        if name not in self.dq.edge_index:
            self.pos -= len(name)
            self.error(f"unknown edge {name!r}")
        return self.dq.edge_index[name]

    def factor(self):
        """Returns ``("plain", necklace)`` or ``("labelled", word)``."""
        start = self.pos
        if self.peek() == "@":
            self.pos += 1
            name = self.take(_NAME)
            if name is None or name not in self.dq.vertex_index:
                self.pos = start
                self.error(f"unknown vertex {name!r}")
            return "plain", idempotent(self.dq.vertex_index[name])
        self.expect("(")
        first = self.edge()
        if self.peek() == ",":
            self.pos += 1
            word = [(first, self.height())]
            self.expect(")")
            while self.peek() == "(":
                self.pos += 1
                e = self.edge()
                self.expect(",")
                word.append((e, self.height()))
                self.expect(")")
            return "labelled", tuple(word)
        word = [first]
        while self.peek() != ")":
            if not self.peek():
                self.error("unterminated necklace")
            word.append(self.edge())
        self.pos += 1
        try:
            return "plain", canonical_necklace(self.dq, word)
        except ValueError as exc:
            self.pos = start
            self.error(str(exc))

    def height(self) -> int:
        tok = self.take(_INT)
        if tok is None:
            self.error("expected a height")
        return int(tok)

    def coefficient(self):
        q = None
        tok = self.take(_NUM)
        if tok is not None:
            q = Fraction(tok)
        k = 0
        self.skip()
        m = _H.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            k = 1
            if self.peek() == "^":
                self.pos += 1
                tok = self.take(_INT)
                if tok is None:
                    self.error("expected an exponent")
                k = int(tok)
        if q is None and not m:
            return None
        return HPoly.monomial(k, 1 if q is None else q)

    def term(self):
        start = self.pos
        coeff = self.coefficient()
        if coeff is not None and self.peek() == "*":
            self.pos += 1
        factors = []
        if self.peek() in ("(", "@"):
            while True:
                factors.append(self.factor())
                if self.peek() != "&":
                    break
                self.pos += 1
        elif coeff is None:
            self.pos = start
            self.error("expected a term")
        return (HPoly.const(1) if coeff is None else coeff), factors

    def element(self):
        terms = []
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        while True:
            c, factors = self.term()
            terms.append((c * sign, factors))
            op = self.peek()
            if op == "":
                return terms
            if op not in "+-":
                self.error("expected '+' or '-'")
            self.pos += 1
            sign = 1 if op == "+" else -1


def _scan(dq: DoubleQuiver, text: str):
    sc = _Scanner(dq, text)
    if not sc.peek():
        sc.error("empty expression")
    return sc.element()


def parse_element(dq: DoubleQuiver, text: str) -> SymLElement:
    """Parse an element of Sym L[h]; ``1`` alone is the unit."""
    acc: dict = {}
    for c, factors in _scan(dq, text):
        if any(kind == "labelled" for kind, _ in factors):
            raise ParseError("height labels are not allowed here", text, 0)
        add_into(acc, make_monomial([f for _, f in factors]), c)
    return SymLElement(dq, acc)


def parse_heighted(dq: DoubleQuiver, text: str) -> HeightedElement:
    """Parse a combination of height-labelled collections such as ``(e,1)(e*,2)&@v``."""
    acc: dict = {}
    for c, factors in _scan(dq, text):
        words = [f for kind, f in factors if kind == "labelled"]
        idems = [f for kind, f in factors if kind == "plain"]
        if any(f[0] >= 0 for f in idems):
            raise ParseError("every necklace needs height labels", text, 0)
        try:
            key = heighted(words, idems)
        except ValueError as exc:
            raise ParseError(str(exc), text, 0) from None
        for w in words:
            try:
                canonical_necklace(dq, [a for a, _ in w])
            except ValueError as exc:
                raise ParseError(str(exc), text, 0) from None
        add_into(acc, key, c)
    out = HeightedElement(dq)
    out.terms = acc
    return out


def is_heighted(text: str) -> bool:
    return re.search(r"\([^()]*,", text) is not None
