"""Independent reference computations (sympy) for the exact kernel."""

import sympy as sp

from hyperderiv.exactalg import Polynomial, VarId
from hyperderiv.exactalg.variables import FREE

_u = sp.Function("u")
xsym = sp.Symbol("s")


def symbol(v: VarId) -> sp.Symbol:
    return sp.Symbol(str(v).replace("[", "_").replace("]", "").replace(",", "_"))


def to_sympy(p: Polynomial, free_as_function: bool = False) -> sp.Expr:
    """Free-ring variables f(n) become d^n u/ds^n when ``free_as_function``."""
    out = sp.Integer(0)
    for mono, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for v, e in mono:
            if free_as_function and v.kind == FREE:
                base = _u(xsym) if v.a == 0 else sp.diff(_u(xsym), xsym, v.a)
            else:
                base = symbol(v)
            term *= base ** e
        out += term
    return sp.expand(out)
