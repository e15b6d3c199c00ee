"""Text form of elements and chains.

Grammar (``n = 1``)::

    chain    := term (('+' | '-') term)*
    term     := ['-'] [rational] word
    word     := factor ('&' factor)*
    factor   := mono? gen | '1'
    mono     := 'x' ['^' nat]  (repeated, e.g. 'x1^2 x3' when n > 1)
    gen      := 'd/dx' | 'dx' | <empty>   ('d/dx2', 'dx1*dx3' when n > 1)

An element is a chain whose words all have a single factor.  A lone
constant ``1`` factor is absorbed into the coefficient on output, so
``3 * 1`` prints as ``3``.
"""

import re
from fractions import Fraction

from .algebra import Element, Generator

MAX_EXPONENT = 10_000

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<vf>d/dx(?P<vfi>\d+)?)
  | (?P<dx>dx(?P<dxi>\d+)?)
  | (?P<x>x(?P<xi>\d+)?(?:\^(?P<xe>\d+))?)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<op>[-+&*])
""", re.VERBOSE)


class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def _fmt_rational(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(exps):
    n = len(exps)
    parts = []
    for k, e in enumerate(exps, 1):
        if not e:
            continue
        var = "x" if n == 1 else f"x{k}"
        parts.append(var if e == 1 else f"{var}^{e}")
    return " ".join(parts)


def format_generator(g):
    n = g.n
    if g.direction:
        gen = "d/dx" if n == 1 else f"d/dx{g.direction}"
    else:
        gen = "*".join("dx" if n == 1 else f"dx{k}" for k in g.dx)
    mono = format_monomial(g.exps)
    text = " ".join(p for p in (mono, gen) if p)
    return text or "1"


def format_word(word):
    return " & ".join(format_generator(g) for g in word)


def _format_terms(items, fmt):
    if not items:
        return "0"
    out = []
    for i, (key, c) in enumerate(items):
        body = fmt(key)
        mag = abs(c)
        if mag == 1:
            text = body
        elif body == "1":
            text = _fmt_rational(mag)
        else:
            text = f"{_fmt_rational(mag)} {body}"
        if i == 0:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append((" - " if c < 0 else " + ") + text)
    return "".join(out)


def format_element(e):
    return _format_terms(list(e), format_generator)


def format_chain(c):
    """Chain text, highest word first (the order used in worked examples)."""
    return _format_terms(list(c)[::-1], format_word)


# -- parsing --------------------------------------------------------------------

def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup if m.lastgroup in ("ws", "op", "num") else None
        for name in ("vf", "dx", "x"):
            if m.group(name) is not None:
                kind = name
                break
        if kind != "ws":
            tokens.append((kind, m, pos))
        pos = m.end()
    tokens.append(("end", None, pos))
    return tokens


class _Parser:
    def __init__(self, text, n):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.n = n
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def is_op(self, ch):
        kind, m, _ = self.peek()
        return kind == "op" and m.group() == ch

    def index(self, raw, pos):
        if raw is None:
            if self.n != 1:
                raise ParseError("coordinate index required when n > 1", pos)
            return 1
        k = int(raw)
        if not 1 <= k <= self.n:
            raise ParseError(f"unknown coordinate index {k} for n={self.n}", pos)
        return k

    def factor_starts(self):
        kind, m, _ = self.peek()
        return kind in ("x", "vf", "dx") or (kind == "num" and m.group() == "1")

    def factor(self):
        """Parse one generator; returns None when nothing factor-like follows."""
        exps = [0] * self.n
        seen = False
        kind, m, pos = self.peek()
        if kind == "num" and m.group() == "1":
            self.take()
            return Generator(0, (), tuple(exps))
        while self.peek()[0] == "x":
            _, m, pos = self.take()
            k = self.index(m.group("xi"), pos)
            e = int(m.group("xe")) if m.group("xe") is not None else 1
            exps[k - 1] += e
            if exps[k - 1] > MAX_EXPONENT:
                raise ParseError(f"exponent overflow (> {MAX_EXPONENT})", pos)
            seen = True
        kind, m, pos = self.peek()
        if kind == "vf":
            self.take()
            return Generator(self.index(m.group("vfi"), pos), (), tuple(exps))
        if kind == "dx":
            idx = []
            while True:
                _, m, pos = self.take()
                k = self.index(m.group("dxi"), pos)
                if idx and k <= idx[-1]:
                    raise ParseError("form indices must increase strictly", pos)
                idx.append(k)
                if self.is_op("*") and self.tokens[self.i + 1][0] == "dx":
                    self.take()
                    continue
                break
            return Generator(0, tuple(idx), tuple(exps))
        if seen:
            return Generator(0, (), tuple(exps))
        return None

    def term(self, allow_wedge):
        sign = 1
        if self.is_op("-"):
            self.take()
            sign = -1
        coeff = Fraction(1)
        kind, m, pos = self.peek()
        word = []
        if kind == "num":
            self.take()
            if "/" in m.group() and int(m.group().split("/")[1]) == 0:
                raise ParseError("zero denominator", pos)
            coeff = Fraction(m.group())
            g = self.factor() if self.factor_starts() else None
            if g is None:
                g = Generator(0, (), (0,) * self.n)
            word.append(g)
        else:
            g = self.factor()
            if g is None:
                raise ParseError("expected a term", pos)
            word.append(g)
        while self.is_op("&"):
            _, _, pos = self.take()
            if not allow_wedge:
                raise ParseError("'&' is not allowed in an element", pos)
            g = self.factor()
            if g is None:
                raise ParseError("expected a factor after '&'", self.peek()[2])
            word.append(g)
        return sign * coeff, word

    def parse(self, allow_wedge):
        terms = [self.term(allow_wedge)]
        while self.peek()[0] == "op" and self.peek()[1].group() in "+-":
            _, m, _ = self.take()
            c, word = self.term(allow_wedge)
            terms.append((-c if m.group() == "-" else c, word))
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("unexpected trailing input", pos)
        return terms


def parse_element(text, n=1):
    """Parse an element such as ``"3/2 x dx - x^2 d/dx"``."""
    out = Element()
    for c, word in _Parser(text, n).parse(allow_wedge=False):
        out = out + Element({word[0]: c})
    return out


def parse_generator(text, n=1):
    e = parse_element(text, n)
    if len(e) != 1 or next(iter(e.terms.values())) != 1:
        raise ValueError(f"{text!r} is not a single generator")
    return next(iter(e.terms))


def parse_chain(text, n=1):
    """Parse a chain such as ``"1 & 1 - d/dx & dx"``; words are canonicalized."""
    from .chains import Chain, chain_from_factors
    out = Chain()
    for c, word in _Parser(text, n).parse(allow_wedge=True):
        out = out + c * chain_from_factors(word)
    return out
