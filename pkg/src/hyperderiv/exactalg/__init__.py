"""Exact arithmetic kernel: rationals, weighted polynomials, derivations, linear solves."""

from .derivation import Derivation, bracket
from .linalg import (LinearSolution, determinant, rank, solve_rational_linear_system,
                     solve_sparse)
from .polynomial import (GenusMismatch, Monomial, Polynomial, Rational, apply_images,
                         monomial_basis, mono_weight)
from .serialize import PolynomialParseError, parse, serialize, to_latex
from .variables import (FREE, LAMBDA, W, X, VarId, free_variables, fvar, lambda_variables,
                        lamvar, w_variables, wvar, x_coordinates, xvar)


def poly_arith(lhs: Polynomial, rhs: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown operation {op!r}")


def weight_of(p: Polynomial) -> int | None:
    return p.weight()


def apply_derivation(D: Derivation, p: Polynomial) -> Polynomial:
    return D.apply(p)


def canonical_serialize(p: Polynomial) -> str:
    return serialize(p)


def canonical_parse(text: str, genus: int | None = None) -> Polynomial:
    return parse(text, genus)


def x(i: int, j: int, g: int) -> Polynomial:
    """The coordinate x_{i,j}; indices past 2g-1 give the zero polynomial."""
    if j > 2 * g - 1:
        return Polynomial.zero(g)
    return Polynomial.var(xvar(i, j, g), g)


def lam(index: int, g: int) -> Polynomial:
    """lambda_{index}; subscripts outside {4, ..., 4g+2} give zero."""
    if index % 2 or not 4 <= index <= 4 * g + 2:
        return Polynomial.zero(g)
    return Polynomial.var(lamvar(index, g), g)


def f(n: int) -> Polynomial:
    return Polynomial.var(fvar(n), None)


__all__ = [
    "Derivation", "FREE", "GenusMismatch", "LAMBDA", "LinearSolution", "Monomial",
    "Polynomial", "PolynomialParseError", "Rational", "VarId", "W", "X", "apply_derivation",
    "apply_images", "bracket", "canonical_parse", "canonical_serialize", "determinant", "f",
    "free_variables", "fvar", "lam", "lambda_variables", "lamvar", "monomial_basis",
    "mono_weight", "parse", "poly_arith", "rank", "serialize", "solve_rational_linear_system",
    "solve_sparse", "to_latex", "w_variables", "weight_of", "wvar", "x", "x_coordinates",
    "xvar",
]
