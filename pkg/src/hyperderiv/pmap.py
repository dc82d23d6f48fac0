"""The polynomial projection p: C^{3g} -> C^{2g}.

The two families of identities between the wp-functions of a hyperelliptic
sigma function are linear in the parameters lambda and in the auxiliary
second derivatives w_{a,b} = wp_{0;a,b}. Eliminating those unknowns one at a
time expresses every lambda_{2s} (and every w_{a,b}) as a polynomial in the
coordinates x_{i,j}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .exactalg import Derivation, Polynomial, VarId, lam
from .exactalg.variables import LAMBDA, W, X, lambda_variables, w_variables

MAX_GENUS = 3


def _check_odd(i: int, g: int) -> None:
    if i % 2 == 0 or not 1 <= i <= 2 * g - 1:
        raise ValueError(f"index {i} is not an odd index of genus {g}")


def wp(i: int, ks: tuple[int, ...], g: int) -> Polynomial:
    """wp_{i;k_1,...,k_n} as a polynomial in the x/w alphabet.

    Mixed partials commute, so all subscripts 1 merge into the order i; any
    subscript above 2g-1 gives zero.
    """
    if any(k > 2 * g - 1 for k in ks):
        return Polynomial.zero(g)
    order = i + sum(1 for k in ks if k == 1)
    rest = sorted(k for k in ks if k != 1)
    if not rest:
        if not 2 <= order <= 4:
            raise ValueError(f"wp with {order} z_1-derivatives is not a coordinate")
        return Polynomial.var(VarId(X, order - 1, 1), g)
    if len(rest) == 1:
        if not 1 <= order <= 3:
            raise ValueError(f"wp_{{{order};{rest[0]}}} is not a coordinate")
        return Polynomial.var(VarId(X, order, rest[0]), g)
    if len(rest) == 2 and order == 0:
        return Polynomial.var(VarId(W, rest[0], rest[1]), g)
    raise ValueError(f"wp_{{{i};{ks}}} is outside the coordinate alphabet")


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


@dataclass(frozen=True)
class RelationInstance:
    poly: Polynomial
    tag: tuple

    def __str__(self):
        return f"{self.tag}: {self.poly} = 0"


def relation2_poly(i: int, g: int) -> RelationInstance:
    """wp_{3;i} - 6 wp_2 wp_{1;i} - 6 wp_{1;i+2} + 2 wp_{0;3,i} - 2 l4 delta_{i,1}."""
    _check_odd(i, g)
    p = (wp(3, (i,), g)
         - wp(2, (), g) * wp(1, (i,), g) * 6
         - wp(1, (i + 2,), g) * 6
         + wp(0, (3, i), g) * 2
         - lam(4, g) * (2 * _delta(i, 1)))
    return RelationInstance(p, (2, i))


def relation3_poly(i: int, k: int, g: int) -> RelationInstance:
    """The quadratic relation for wp_{2;i} wp_{2;k}, moved to the left-hand side."""
    _check_odd(i, g)
    _check_odd(k, g)
    if i > k:
        i, k = k, i

    def p1(m):
        return wp(1, (m,), g)

    def p0(a, b):
        return wp(0, (a, b), g)

    rhs = (wp(2, (), g) * p1(i) * p1(k) + p1(k) * p1(i + 2) + p1(i) * p1(k + 2)
           + p0(k + 2, i + 2)) * 4
    rhs = rhs - (p1(i) * p0(3, k) + p1(k) * p0(3, i) + p0(k, i + 4) + p0(i, k + 4)) * 2
    rhs = rhs + lam(4, g) * (p1(k) * _delta(i, 1) + p1(i) * _delta(k, 1)) * 2
    rhs = rhs + lam(i + k + 4, g) * (2 * (2 * _delta(i, k) + _delta(k, i - 2)
                                          + _delta(i, k - 2)))
    return RelationInstance(wp(2, (i,), g) * wp(2, (k,), g) - rhs, (3, i, k))


def all_relations(g: int) -> list[RelationInstance]:
    odd = range(1, 2 * g, 2)
    rels = [relation2_poly(i, g) for i in odd]
    rels += [relation3_poly(i, k, g) for i in odd for k in odd if i <= k]
    return rels


@dataclass
class PMapResult:
    genus: int
    lambda_polys: dict[int, Polynomial]
    w_polys: dict[tuple[int, int], Polynomial]
    trace: list[tuple[str, tuple]] = field(default_factory=list)

    def substitution(self) -> dict[VarId, Polynomial]:
        sub = {VarId(LAMBDA, s): p for s, p in self.lambda_polys.items()}
        sub.update({VarId(W, a, b): p for (a, b), p in self.w_polys.items()})
        return sub

    def pullback(self, p: Polynomial) -> Polynomial:
        """p* of a polynomial in lambda (and w): substitute the x-expressions."""
        return p.subs(self.substitution())


class EliminationStalled(RuntimeError):
    pass


def eliminate_pmap(g: int, rng: random.Random | None = None,
                   allow_higher_genus: bool = False) -> PMapResult:
    """Resolve lambda_4..lambda_{4g+2} and all w_{a,b} from the relations.

    Worklist: repeatedly take a relation with exactly one unresolved unknown
    and solve for it. Ties go to the lowest-weight unknown, then to relation
    order; ``rng`` randomizes the tie-breaking instead.
    """
    if g > MAX_GENUS and not allow_higher_genus:
        raise ValueError(f"elimination is validated for genus <= {MAX_GENUS}")
    unknowns = set(lambda_variables(g)) | set(w_variables(g))
    solved: dict[VarId, Polynomial] = {}
    pending = {r.tag: r.poly for r in all_relations(g)}
    order = list(pending)
    trace = []
    while unknowns - set(solved):
        cands = []
        for pos, tag in enumerate(order):
            if tag not in pending:
                continue
            left = pending[tag].variables() & (unknowns - set(solved))
            if len(left) == 1:
                (u,) = left
                cands.append((u.weight, pos, u, tag))
        if not cands:
            missing = sorted(unknowns - set(solved))
            raise EliminationStalled(f"cannot resolve {missing} at genus {g}")
        if rng is not None:
            _, _, u, tag = rng.choice(cands)
        else:
            _, _, u, tag = min(cands, key=lambda t: (t[0], t[1]))
        coeff, rest = pending.pop(tag).split_linear(u)
        if coeff.is_constant():
            value = rest * (-1 / coeff.constant_term())
        else:
            value = (-rest).exact_div(coeff)
        sub = {u: value}
        solved = {v: p.subs(sub) for v, p in solved.items()}
        solved[u] = value
        pending = {t: p.subs(sub) for t, p in pending.items()}
        trace.append((str(u), tag))
    for tag, p in pending.items():
        if p:
            raise EliminationStalled(f"relation {tag} is inconsistent: residual {p}")
    lambdas = {v.a: solved[v] for v in lambda_variables(g)}
    ws = {(v.a, v.b): solved[v] for v in w_variables(g)}
    return PMapResult(g, lambdas, ws, trace)


def back_substitute(r: PMapResult) -> dict[tuple, Polynomial]:
    """Residual of every relation after substituting the elimination result."""
    sub = r.substitution()
    return {rel.tag: rel.poly.subs(sub) for rel in all_relations(r.genus)}


def pmap_degree_report(r: PMapResult) -> dict[int, int]:
    degrees = {s: p.degree((X,)) for s, p in r.lambda_polys.items()}
    for s, d in degrees.items():
        if d > 3:
            raise AssertionError(f"p*lambda_{s} has degree {d} > 3")
    return degrees


def invariance_check(r: PMapResult, odds: list[Derivation]) -> dict[tuple[str, int], Polynomial]:
    """Residuals L_s(p*lambda_{2m}); all must be zero for the odd fields."""
    out = {}
    for D in odds:
        for s, p in r.lambda_polys.items():
            out[(D.label or f"w{D.weight}", s)] = D.apply(p)
    return out
