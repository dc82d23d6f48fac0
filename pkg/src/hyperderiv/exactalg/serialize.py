"""Canonical text form of polynomials, its parser, and a LaTeX renderer.

Grammar (whitespace is insignificant)::

    poly   := "0" | ["-"] term (("+" | "-") term)*
    term   := coef | [coef "*"] factor ("*" factor)*
    factor := var ["^" exp]
    var    := "x[" i "," j "]" | "l[" 2s "]" | "w[" a "," b "]" | "f(" n ")"
    coef   := integer | integer "/" positive-integer
"""

from __future__ import annotations

import re
from fractions import Fraction

from .polynomial import Polynomial, order_key
from .variables import FREE, LAMBDA, W, X, VarId


class PolynomialParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _coef_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mono_text(m) -> str:
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in m)


def serialize(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for k, m in enumerate(sorted(p.terms, key=order_key)):
        c = p.terms[m]
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = _coef_text(a)
        elif a == 1:
            body = _mono_text(m)
        else:
            body = f"{_coef_text(a)}*{_mono_text(m)}"
        if k == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<x>x\[\s*(\d+)\s*,\s*(\d+)\s*\])
  | (?P<l>l\[\s*(\d+)\s*\])
  | (?P<w>w\[\s*(\d+)\s*,\s*(\d+)\s*\])
  | (?P<f>f\(\s*(\d+)\s*\))
  | (?P<int>\d+)
  | (?P<op>[-+*/^])
""", re.VERBOSE)


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise PolynomialParseError(f"unexpected character {text[pos]!r}", pos)
        kind = mt.lastgroup
        if kind != "ws":
            if kind == "x":
                g = mt.groups()
                toks.append(("var", VarId(X, int(g[2]), int(g[3])), pos))
            elif kind == "l":
                toks.append(("var", VarId(LAMBDA, int(mt.group(6))), pos))
            elif kind == "w":
                a, b = int(mt.group(8)), int(mt.group(9))
                toks.append(("var", VarId(W, a, b), pos))
            elif kind == "f":
                toks.append(("var", VarId(FREE, int(mt.group(11))), pos))
            elif kind == "int":
                toks.append(("int", int(mt.group()), pos))
            else:
                toks.append(("op", mt.group(), pos))
        pos = mt.end()
    toks.append(("end", None, len(text)))
    return toks


def parse(text: str, genus: int | None = None) -> Polynomial:
    """Parse the canonical grammar; variables are validated against ``genus``."""
    toks = _tokenize(text)
    k = 0

    def peek():
        return toks[k]

    def take(kind, value=None):
        nonlocal k
        t = toks[k]
        if t[0] != kind or (value is not None and t[1] != value):
            want = value if value is not None else kind
            raise PolynomialParseError(f"expected {want!r}", t[2])
        k += 1
        return t

    def factor():
        t = take("var")
        v = t[1]
        if not v.in_genus(genus):
            raise PolynomialParseError(f"variable {v} not in genus-{genus} alphabet", t[2])
        e = 1
        if peek()[:2] == ("op", "^"):
            take("op", "^")
            e = take("int")[1]
            if e < 1:
                raise PolynomialParseError("exponent must be positive", toks[k - 1][2])
        return v, e

    def term():
        coef = Fraction(1)
        exps: dict = {}
        if peek()[0] == "int":
            num = take("int")[1]
            if peek()[:2] == ("op", "/"):
                take("op", "/")
                t = take("int")
                if t[1] == 0:
                    raise PolynomialParseError("zero denominator", t[2])
                coef = Fraction(num, t[1])
            else:
                coef = Fraction(num)
            if peek()[:2] != ("op", "*"):
                return coef, ()
            take("op", "*")
        while True:
            v, e = factor()
            exps[v] = exps.get(v, 0) + e
            if peek()[:2] == ("op", "*"):
                take("op", "*")
                continue
            break
        return coef, tuple(sorted(exps.items()))

    terms: dict = {}
    sign = 1
    if peek()[:2] == ("op", "-"):
        take("op", "-")
        sign = -1
    while True:
        c, m = term()
        terms[m] = terms.get(m, 0) + sign * c
        t = peek()
        if t[0] == "end":
            break
        if t[0] == "op" and t[1] in "+-":
            take("op")
            sign = 1 if t[1] == "+" else -1
            continue
        raise PolynomialParseError(f"unexpected token {t[1]!r}", t[2])
    return Polynomial(terms, genus)


def _latex_var(v: VarId, e: int) -> str:
    if v.kind == X:
        s = rf"\wp_{{{v.a};{v.b}}}"
    elif v.kind == LAMBDA:
        s = rf"\lambda_{{{v.a}}}"
    elif v.kind == W:
        s = rf"\wp_{{0;{v.a},{v.b}}}"
    else:
        s = rf"f^{{({v.a})}}"
    if e == 1:
        return s
    return f"{s}^{e}" if e < 10 else f"{s}^{{{e}}}"


def to_latex(p: Polynomial) -> str:
    """Render with the coordinates shown as the wp-functions they stand for."""
    if not p.terms:
        return "0"
    parts = []
    for k, m in enumerate(sorted(p.terms, key=order_key)):
        c = p.terms[m]
        neg = c < 0
        a = -c if neg else c
        if a.denominator == 1:
            coef = str(a.numerator)
        else:
            coef = rf"\tfrac{{{a.numerator}}}{{{a.denominator}}}"
        if m and a == 1:
            coef = ""
        body = coef + "".join(_latex_var(v, e) for v, e in m)
        if k == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)
