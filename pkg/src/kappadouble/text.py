"""Canonical text rendering.

A term renders as ``coefficient hbar^a lam^b word`` where the coefficient is
a rational, or ``(a+bi)`` when it has an imaginary part.  Terms are sorted
by word (generator order), then by lam power, then by hbar power.  The
output is accepted back by :func:`kappadouble.cli.parser.parse`.
"""

from __future__ import annotations

from fractions import Fraction

from .alphabet import SYMBOLS, word_key


def _rat(q):
    return str(Fraction(q))


def _coefficient_text(re, im):
    """Return (sign, body) where body is '' for a unit coefficient."""
    if im == 0:
        if re < 0:
            return "-", ("" if re == -1 else _rat(-re))
        return "+", ("" if re == 1 else _rat(re))
    if re == 0:
        if im < 0:
            return "-", "(%si)" % ("" if im == -1 else _rat(-im))
        return "+", "(%si)" % ("" if im == 1 else _rat(im))
    sign = "-" if im < 0 else "+"
    return "+", "(%s%s%si)" % (_rat(re), sign, "" if abs(im) == 1 else _rat(abs(im)))


def render_word(word):
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        sym = SYMBOLS.get(word[i], word[i])
        parts.append(sym if j - i == 1 else "%s^%d" % (sym, j - i))
        i = j
    return " ".join(parts)


def _term_pieces(word_text, scalar):
    pieces = []
    for (a, b), (re, im) in scalar.sorted_terms():
        sign, body = _coefficient_text(re, im)
        factors = []
        if body:
            factors.append(body)
        if a:
            factors.append("hbar" if a == 1 else "hbar^%d" % a)
        if b:
            factors.append("lam" if b == 1 else "lam^%d" % b)
        if word_text:
            factors.append(word_text)
        if not factors:
            factors.append("1")
        pieces.append((sign, " ".join(factors)))
    return pieces


def _join(pieces):
    if not pieces:
        return "0"
    out = []
    for idx, (sign, text) in enumerate(pieces):
        if idx == 0:
            out.append(text if sign == "+" else "-" + text)
        else:
            out.append(("+ " if sign == "+" else "- ") + text)
    return " ".join(out)


def render_scalar(s):
    return _join(_term_pieces("", s))


def render_poly(p):
    pieces = []
    for word in sorted(p.words(), key=word_key):
        pieces.extend(_term_pieces(render_word(word), p[word]))
    return _join(pieces)


def render_tensor(t):
    pieces = []
    for words in sorted(t.keys(), key=lambda ws: tuple(word_key(w) for w in ws)):
        legs = " (x) ".join(render_word(w) or "1" for w in words)
        for sign, text in _term_pieces("", t[words]):
            pieces.append((sign, "%s [%s]" % (text, legs)))
    return _join(pieces)
