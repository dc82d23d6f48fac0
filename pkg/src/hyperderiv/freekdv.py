"""KdV hierarchy in the free differential ring Q[f(0), f(1), ...].

Here f(n) stands for the n-th z_1-derivative of Phi_2 = wp_{1;1}. The
densities Phi_{2k} are produced by the recursion operator

    R = 1/4 D^2 - 2 f(0) - f(1) D^{-1},

with D^{-1} realised as an exact homogeneous antiderivative.
"""

from __future__ import annotations

from fractions import Fraction

from .exactalg import Polynomial, VarId, apply_images, f, monomial_basis
from .exactalg.ansatz import solve_polynomial_identities
from .exactalg.variables import FREE, LAMBDA, free_variables

DEFAULT_DEPTH = 6


class NotExact(ArithmeticError):
    """The argument of D^{-1} is not a total derivative."""


def _shift(v: VarId) -> Polynomial | None:
    # lambda parameters are constants of the free derivation
    return Polynomial.var(VarId(FREE, v.a + 1)) if v.kind == FREE else None


def _check_free(e: Polynomial) -> None:
    if e.genus is not None or any(v.kind not in (FREE, LAMBDA) for v in e.variables()):
        raise ValueError("expected an element of the free differential ring")


def max_order(e: Polynomial) -> int:
    """Highest derivative order present; -1 for constants."""
    return max((v.a for v in e.variables() if v.kind == FREE), default=-1)


def free_derive(e: Polynomial) -> Polynomial:
    _check_free(e)
    return apply_images(_shift, e)


def free_integrate(e: Polynomial) -> Polynomial:
    """The homogeneous F with D(F) == e, or raise NotExact."""
    _check_free(e)
    if e.is_zero():
        return e
    w = e.weight()
    if w is None:
        raise NotExact("argument is not weight-homogeneous")
    top = max_order(e)
    if w < 3 or top < 1:
        raise NotExact(f"no antiderivative of weight {w - 1} in the free ring")
    basis = monomial_basis(w - 1, free_variables(top - 1))
    if not basis:
        raise NotExact(f"no antiderivative of weight {w - 1} in the free ring")
    cols = [[free_derive(Polynomial.monomial(m))] for m in basis]
    sol = solve_polynomial_identities(cols, [-e])
    if not sol.consistent:
        raise NotExact("argument is not a total derivative")
    # D has no kernel in positive weight, so the antiderivative is unique
    assert sol.unique
    return Polynomial({m: c for m, c in zip(basis, sol.solution) if c})


def kdv_step(dphi: Polynomial, phi2prime: Polynomial | None = None) -> Polynomial:
    """Apply the recursion operator R to ``dphi`` (which must be exact)."""
    _check_free(dphi)
    if phi2prime is None:
        phi2prime = f(1)
    if dphi.is_zero():
        return dphi
    d2 = free_derive(free_derive(dphi))
    return d2 * Fraction(1, 4) - f(0) * dphi * 2 - phi2prime * free_integrate(dphi)


class HierarchyTable:
    """Lazily computed Phi_{2k}, k = 1 .. depth; each entry is computed once."""

    def __init__(self, depth: int = DEFAULT_DEPTH):
        self.depth = depth
        self._phi: dict[int, Polynomial] = {1: f(0)}

    def __getitem__(self, k: int) -> Polynomial:
        if k < 1:
            raise ValueError("hierarchy index starts at k = 1")
        if k > self.depth:
            raise ValueError(f"k = {k} exceeds hierarchy depth {self.depth}")
        for j in range(2, k + 1):
            if j not in self._phi:
                step = kdv_step(free_derive(self._phi[j - 1]))
                self._phi[j] = free_integrate(step)
        return self._phi[k]

    def items(self):
        return [(k, self[k]) for k in range(1, self.depth + 1)]


_DEFAULT_TABLE = HierarchyTable(12)


def kdv_phi(k: int) -> Polynomial:
    return _DEFAULT_TABLE[k]


def embed_to_x(e: Polynomial, g: int) -> Polynomial:
    """Evaluate a free-ring element on the wp-chain of genus ``g``.

    f(0), f(1), f(2) -> x[1,1], x[2,1], x[3,1];  f(n) -> L1^(n-2) x[3,1].
    Lambda parameters, if present, are kept as they are.
    """
    from .liegen import build_L1, chain_value

    _check_free(e)
    L1 = build_L1(g)
    mapping = {v: chain_value(v.a, L1) for v in e.variables() if v.kind == FREE}
    return e.subs(mapping, genus=g)


def chain_rule_flow(target: Polynomial, flow: Polynomial) -> Polynomial:
    """The image of ``target`` under the evolutionary flow  d f(0) = D(flow).

    Returns  sum_n d target / d f(n) * D^(n+1) flow.
    """
    out = Polynomial.zero()
    dflow = free_derive(flow)
    for n in range(max_order(target) + 1):
        part = target.diff(VarId(FREE, n))
        if part:
            out = out + part * dflow
        dflow = free_derive(dflow)
    return out
