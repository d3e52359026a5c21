"""Text expressions to NCPoly.

Grammar::

    expr    := term (('+'|'-') term)*
    term    := factor (['*'] factor)*        juxtaposition multiplies
    factor  := ('+'|'-') factor | power
    power   := primary ['^' ['-'] INT]       negative powers need a scalar base
    primary := NUMBER | NAME | '(' expr ')' | '[' expr ',' expr ']'

NAME is one of x0..x3, P0..P3, xh0..xh3, ph0..ph3, M[i,j], L[m,n], i,
hbar, lam.  M[i,j] with i > j is read as -M[j,i].  The brackets are a free
commutator; nothing is normal-ordered unless a rewrite system is passed.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..alphabet import P, PH, X, XH, m_index
from ..ncalg import NCPoly
from ..scalars import HBAR, I, LAM, NotInvertible, Scalar

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<idx>[ML]\[\s*\d+\s*,\s*\d+\s*\])
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^(),\[\]])
""", re.VERBOSE)

_SCALAR_NAMES = {"i": I, "hbar": HBAR, "lam": LAM}
_GENERATOR_NAMES = set(X) | set(P) | set(XH) | set(PH)


class ParseError(ValueError):
    def __init__(self, message, text="", pos=0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__("%s at line %d, column %d" % (message, line, col))
        self.line = line
        self.column = col
        self.pos = pos


def tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character %r" % text[pos], text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _indexed(tok, text, pos):
    head = tok[0]
    a, b = (int(v) for v in re.findall(r"\d+", tok))
    if a > 3 or b > 3:
        raise ParseError("index out of range in %s" % tok, text, pos)
    if head == "L":
        return NCPoly.gen("L%d%d" % (a, b))
    sign, gid = m_index(a, b)
    if not sign:
        raise ParseError("M[%d,%d] is not a generator" % (a, b), text, pos)
    return NCPoly.gen(gid, Scalar.coerce(sign))


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            want = repr(value)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError("expected %s, got %s" % (want, got), self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        out = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def _starts_primary(self, tok):
        return tok[0] in ("num", "idx", "name") or (tok[0] == "op" and tok[1] in ("(", "["))

    def term(self):
        out = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                out = out * self.factor()
            elif self._starts_primary(tok):
                out = out * self.power()
            else:
                return out

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            return -self.factor() if tok[1] == "-" else self.factor()
        return self.power()

    def power(self):
        pos = self.peek()[2]
        base = self.primary()
        if not (self.peek()[0] == "op" and self.peek()[1] == "^"):
            return base
        self.take()
        neg = False
        if self.peek()[1] == "-":
            self.take()
            neg = True
        tok = self.take()
        if tok[0] != "num" or "/" in tok[1]:
            raise ParseError("exponent must be an integer", self.text, tok[2])
        n = int(tok[1])
        if not neg:
            return base ** n
        if base.generators() or len(base) != 1:
            raise ParseError("negative power of a non-scalar", self.text, pos)
        try:
            inv = base[()].inverse()
        except NotInvertible as exc:
            raise ParseError("cannot invert: %s" % exc, self.text, pos) from None
        return NCPoly.const(inv) ** n

    def primary(self):
        kind, value, pos = self.take()
        if kind == "num":
            return NCPoly.const(Scalar.coerce(Fraction(value)))
        if kind == "idx":
            return _indexed(value, self.text, pos)
        if kind == "name":
            if value in _SCALAR_NAMES:
                return NCPoly.const(_SCALAR_NAMES[value])
            if value in _GENERATOR_NAMES:
                return NCPoly.gen(value)
            raise ParseError("unknown generator %r" % value, self.text, pos)
        if value == "(":
            out = self.expr()
            self.take(")")
            return out
        if value == "[":
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            return a * b - b * a
        what = "end of input" if kind == "end" else repr(value)
        raise ParseError("unexpected %s" % what, self.text, pos)


def parse(text, rs=None):
    """Parse an expression; normal-order it in ``rs`` when given."""
    p = _Parser(text)
    out = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError("unexpected %r" % tok[1], text, tok[2])
    return rs.normal_order(out) if rs is not None else out
