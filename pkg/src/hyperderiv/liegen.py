"""The 3g polynomial vector fields on C^{3g} and their polynomial Lie algebra.

Labels: odd fields L1, L3, ..., L_{2g-1} (zero pushforward, from the KdV
flows) and even fields L0, L2, ..., L_{4g-2} (pushforward L_{2k} on
lambda-space). The weight of L_s is s.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .curvegeom import LambdaField, build_lambda_field, discriminant_at, t_entry
from .exactalg import Derivation, Polynomial, VarId, bracket, monomial_basis, rank, x
from .exactalg.ansatz import solve_polynomial_identities
from .exactalg.variables import X, lambda_variables, x_coordinates
from .freekdv import chain_rule_flow, embed_to_x, kdv_phi
from .pmap import PMapResult, eliminate_pmap


class ConstructionError(RuntimeError):
    """The linear conditions defining an even field are inconsistent or ambiguous."""


class NotInModule(ValueError):
    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


# -- odd fields ---------------------------------------------------------------

@lru_cache(maxsize=None)
def build_L1(g: int) -> Derivation:
    images = {}
    for j in range(1, 2 * g, 2):
        images[VarId(X, 1, j)] = x(2, j, g)
        images[VarId(X, 2, j)] = x(3, j, g)
        images[VarId(X, 3, j)] = (x(1, 1, g) * x(2, j, g) * 2 + x(2, 1, g) * x(1, j, g)
                                  + x(2, j + 2, g)) * 4
    return Derivation(g, 1, images, "L1")


@lru_cache(maxsize=None)
def _pmap(g: int) -> PMapResult:
    return eliminate_pmap(g, allow_higher_genus=True)


_chain_cache: dict[tuple[int, int], Polynomial] = {}


def chain_value(n: int, L1: Derivation) -> Polynomial:
    """x-expression of the n-th z_1-derivative of wp_{1;1}."""
    g = L1.genus
    if n <= 2:
        return x(n + 1, 1, g)
    key = (g, n)
    if key not in _chain_cache:
        _chain_cache[key] = L1.apply(chain_value(n - 1, L1))
    return _chain_cache[key]


_density_cache: dict[tuple[int, int], Polynomial] = {}


def flow_density(m: int, g: int, pm: PMapResult | None = None) -> Polynomial:
    """Free-ring density X_m with  x[1,m] = X_m  on the wp-chain.

    X_m = Phi_{m+1} + sum_{j<(m+1)/2} c_j(lambda) Phi_{2j} + c(lambda): the z_m
    flow is the Phi_{m+1} flow of the hierarchy corrected by lambda-weighted
    lower flows. The coefficients are fixed by an exact identity in the
    x-ring after pulling lambda back through p.
    """
    key = (m, g)
    if key in _density_cache:
        return _density_cache[key]
    k = (m + 1) // 2
    base = kdv_phi(k)
    if k == 1:
        return base
    if pm is None:
        pm = _pmap(g)
    lam_alphabet = lambda_variables(g)
    terms = []
    for j in range(0, k):
        phi = kdv_phi(j) if j else Polynomial.const(1)
        for mono in monomial_basis(2 * (k - j), lam_alphabet):
            terms.append(Polynomial.monomial(mono) * phi)
    columns = [[pm.pullback(embed_to_x(t, g))] for t in terms]
    sol = solve_polynomial_identities(columns, [pm.pullback(embed_to_x(base, g)) - x(1, m, g)])
    if not sol.unique:
        raise ConstructionError(f"cannot match x[1,{m}] with a corrected KdV density")
    density = base
    for t, c in zip(terms, sol.solution):
        if c:
            density = density + t * c
    _density_cache[key] = density
    return density


def odd_flow_image(s: int, m: int, g: int) -> Polynomial:
    """L_s(x[1,m]): the flow of X_s acting on X_m, lambda held constant."""
    y = embed_to_x(chain_rule_flow(flow_density(m, g), flow_density(s, g)), g)
    return _pmap(g).pullback(y)


@lru_cache(maxsize=None)
def build_odd(s: int, g: int) -> Derivation:
    if s == 1:
        return build_L1(g)
    if s % 2 == 0 or not 3 <= s <= 2 * g - 1:
        raise ValueError(f"no odd field L{s} in genus {g}")
    L1 = build_L1(g)
    images = {
        VarId(X, 1, 1): x(2, s, g),
        VarId(X, 2, 1): x(3, s, g),
        VarId(X, 3, 1): L1.apply(x(3, s, g)),
    }
    for k in range(1, g):
        y = odd_flow_image(s, 2 * k + 1, g)
        images[VarId(X, 1, 2 * k + 1)] = y
        y1 = L1.apply(y)
        images[VarId(X, 2, 2 * k + 1)] = y1
        images[VarId(X, 3, 2 * k + 1)] = L1.apply(y1)
    return Derivation(g, s, images, f"L{s}")


# -- even fields --------------------------------------------------------------

def build_euler(g: int) -> Derivation:
    images = {v: Polynomial.var(v, g, v.weight) for v in x_coordinates(g)}
    return Derivation(g, 0, images, "L0")


@dataclass
class FieldSet:
    genus: int
    fields: dict[int, Derivation]
    pmap: PMapResult
    lambda_fields: dict[int, LambdaField] = field(default_factory=dict)

    @property
    def odd_labels(self) -> list[int]:
        return sorted(k for k in self.fields if k % 2)

    @property
    def even_labels(self) -> list[int]:
        return sorted(k for k in self.fields if k % 2 == 0)

    @property
    def labels(self) -> list[int]:
        return sorted(self.fields)

    def __getitem__(self, label: int) -> Derivation:
        return self.fields[label]

    def pushforward(self, label: int) -> LambdaField | None:
        return None if label % 2 else self.lambda_fields[label]


def com1_rhs(k: int, fields: FieldSet) -> Derivation:
    """Right-hand side of the bracket condition for [L1, L_{2k}]:

        sum_{m=1..k} x[1, 2(k-m)+1] * L_{2m-1}  -  L_{2k+1}

    with x[1,j] = 0 for j > 2g-1 and L_s = 0 for odd s > 2g-1.
    """
    g = fields.genus
    out = Derivation.zero(g, 2 * k + 1)
    for m in range(1, k + 1):
        s = 2 * m - 1
        j = 2 * (k - m) + 1
        if s in fields.fields and j <= 2 * g - 1:
            out = out + fields[s].times(x(1, j, g))
    if 2 * k + 1 in fields.fields:
        out = out - fields[2 * k + 1]
    return out


def _pullback_T(k: int, s: int, pm: PMapResult) -> Polynomial:
    return pm.pullback(t_entry(k + 1, s - 1, pm.genus))


def solve_even(k: int, g: int, pm: PMapResult, fields: FieldSet) -> Derivation:
    """The field L_{2k} fixed by [L1, L_{2k}] = com1_rhs(k) and projectability.

    The bracket condition on the first two rows of coordinates determines
    the images of x[2,j] and x[3,j] from those of x[1,j]; the unknowns are
    therefore the g images of the x[1,j], each a generic homogeneous
    polynomial, constrained by the third-row bracket condition and by
    L_{2k}(p*lambda_{2s}) = p*T_{2k+2,2s-2}.
    """
    if not 1 <= k <= 2 * g - 1:
        raise ValueError(f"no even field L{2 * k} in genus {g}")
    L1 = build_L1(g)
    R = com1_rhs(k, fields)
    odd_j = list(range(1, 2 * g, 2))
    coords = x_coordinates(g)
    lam_idx = sorted(pm.lambda_polys)
    L1x3 = {j: L1.images[VarId(X, 3, j)] for j in odd_j}
    d_L1x3 = {(j, v): L1x3[j].diff(v) for j in odd_j for v in coords}
    d_plam = {(s, v): pm.lambda_polys[s].diff(v) for s in lam_idx for v in coords}

    def constraints(a: dict, b: dict, c: dict, with_constant: bool) -> list[Polynomial]:
        imgs = {}
        for j in odd_j:
            imgs[VarId(X, 1, j)] = a[j]
            imgs[VarId(X, 2, j)] = b[j]
            imgs[VarId(X, 3, j)] = c[j]
        out = []
        for j in odd_j:
            e = L1.apply(c[j])
            for v, img in imgs.items():
                if img:
                    e = e - d_L1x3[(j, v)] * img
            if with_constant:
                e = e - R.images[VarId(X, 3, j)]
            out.append(e)
        for s in lam_idx:
            e = Polynomial.zero(g)
            for v, img in imgs.items():
                if img:
                    e = e + d_plam[(s, v)] * img
            if with_constant:
                e = e - _pullback_T(k, s // 2, pm)
            out.append(e)
        return out

    zero = Polynomial.zero(g)
    # constant part: a = 0
    a0 = {j: zero for j in odd_j}
    b0 = {j: -R.images[VarId(X, 1, j)] for j in odd_j}
    c0 = {j: L1.apply(b0[j]) - R.images[VarId(X, 2, j)] for j in odd_j}
    constant = constraints(a0, b0, c0, True)

    xs = [v for v in coords]
    unknowns = []
    columns = []
    for j in odd_j:
        for mono in monomial_basis(2 * k + 1 + j, xs):
            mu = Polynomial.monomial(mono, g)
            a = dict(a0)
            a[j] = mu
            b = {jj: zero for jj in odd_j}
            b[j] = L1.apply(mu)
            c = {jj: zero for jj in odd_j}
            c[j] = L1.apply(b[j])
            unknowns.append((j, mono))
            columns.append(constraints(a, b, c, False))
    sol = solve_polynomial_identities(columns, constant)
    if not sol.consistent:
        raise ConstructionError(f"no field L{2 * k} satisfies the bracket and projectability conditions")
    if not sol.unique:
        witness = {f"x[1,{j}]": str(Polynomial.monomial(m, g)) for (j, m), t
                   in zip(unknowns, sol.witness) if t}
        raise ConstructionError(f"L{2 * k} is not unique; kernel witness {witness}")
    a = {j: Polynomial.zero(g) for j in odd_j}
    for (j, mono), t in zip(unknowns, sol.solution):
        if t:
            a[j] = a[j] + Polynomial.monomial(mono, g, t)
    images = {}
    for j in odd_j:
        b = L1.apply(a[j]) - R.images[VarId(X, 1, j)]
        c = L1.apply(b) - R.images[VarId(X, 2, j)]
        images[VarId(X, 1, j)] = a[j]
        images[VarId(X, 2, j)] = b
        images[VarId(X, 3, j)] = c
    return Derivation(g, 2 * k, images, f"L{2 * k}")


def build_fieldset(g: int, pm: PMapResult | None = None) -> FieldSet:
    """Odd fields, then p, then L0 and the even fields in increasing weight."""
    if pm is None:
        pm = _pmap(g)
    fields = {s: build_odd(s, g) for s in range(1, 2 * g, 2)}
    fields[0] = build_euler(g)
    lfields = {2 * k: build_lambda_field(k, g) for k in range(2 * g)}
    fs = FieldSet(g, fields, pm, lfields)
    for k in range(1, 2 * g):
        fs.fields[2 * k] = solve_even(k, g, pm, fs)
    return fs


# -- Lie algebra ----------------------------------------------------------------

def express_in_module_basis(B: Derivation, fields: FieldSet) -> dict[int, Polynomial]:
    """Polynomial coefficients c_m with B = sum_m c_m L_m.

    The even coefficients are pinned by the action on the p*lambda (odd
    fields annihilate them, even fields act through the pulled-back T
    matrix); the odd ones by the remaining coordinate images. The second
    solve covers every coordinate, so success is an exact identity.
    """
    g = fields.genus
    pm = fields.pmap
    w = B.weight
    xs = x_coordinates(g)
    lam_idx = sorted(pm.lambda_polys)
    Bp = [B.apply(pm.lambda_polys[s]) for s in lam_idx]

    unknowns, columns = [], []
    for lab in fields.even_labels:
        k = lab // 2
        for mono in monomial_basis(w - lab, xs):
            mu = Polynomial.monomial(mono, g)
            unknowns.append((lab, mono))
            columns.append([mu * _pullback_T(k, s // 2, pm) for s in lam_idx])
    sol = solve_polynomial_identities(columns, [-p for p in Bp])
    if not sol.consistent:
        raise NotInModule("pushforward of B is not a polynomial combination of the L_{2k}",
                          {s: str(p) for s, p in zip(lam_idx, Bp)})
    if not sol.unique:
        raise NotInModule("even coefficients are not unique")
    coeffs: dict[int, Polynomial] = {}
    for (lab, mono), t in zip(unknowns, sol.solution):
        if t:
            coeffs[lab] = coeffs.get(lab, Polynomial.zero(g)) + Polynomial.monomial(mono, g, t)
    rest = B
    for lab, c in coeffs.items():
        rest = rest - fields[lab].times(c)

    unknowns, columns = [], []
    for lab in fields.odd_labels:
        L = fields[lab]
        for mono in monomial_basis(w - lab, xs):
            mu = Polynomial.monomial(mono, g)
            unknowns.append((lab, mono))
            columns.append([mu * L.images[v] for v in xs])
    sol = solve_polynomial_identities(columns, [-rest.images[v] for v in xs])
    if not sol.consistent:
        raise NotInModule("B is not in the polynomial module spanned by the fields",
                          {str(v): str(rest.images[v]) for v in xs})
    if not sol.unique:
        raise NotInModule("odd coefficients are not unique")
    for (lab, mono), t in zip(unknowns, sol.solution):
        if t:
            coeffs[lab] = coeffs.get(lab, Polynomial.zero(g)) + Polynomial.monomial(mono, g, t)
    return {lab: coeffs[lab] for lab in sorted(coeffs)}


@dataclass
class StructureTable:
    genus: int
    entries: dict[tuple[int, int], dict[int, Polynomial]]

    def __getitem__(self, pair):
        return self.entries[pair]


def _bracket_entry(args):
    fields, a, b = args
    return (a, b), express_in_module_basis(bracket(fields[a], fields[b]), fields)


def structure_table(fields: FieldSet, parallel: bool = False) -> StructureTable:
    pairs = list(itertools.combinations(fields.labels, 2))
    jobs = [(fields, a, b) for a, b in pairs]
    if parallel:
        with ProcessPoolExecutor() as ex:
            results = list(ex.map(_bracket_entry, jobs))
    else:
        results = [_bracket_entry(j) for j in jobs]
    return StructureTable(fields.genus, dict(results))


def check_projectable(D: Derivation, pm: PMapResult,
                      L: LambdaField | None) -> dict[int, Polynomial]:
    """Residuals D(p*lambda_{2s}) - p*(L lambda_{2s}); L = None means zero pushforward."""
    out = {}
    for s, p in pm.lambda_polys.items():
        lhs = D.apply(p)
        if L is not None:
            lhs = lhs - pm.pullback(L.images[VarId(1, s)])
        out[s] = lhs
    return out


def com1_residuals(fields: FieldSet) -> dict[int, Derivation]:
    L1 = fields[1]
    return {k: bracket(L1, fields[2 * k]) - com1_rhs(k, fields)
            for k in range(2 * fields.genus)}


def jacobi_residual(fields: FieldSet, a: int, b: int, c: int) -> Derivation:
    A, B, C = fields[a], fields[b], fields[c]
    return (bracket(A, bracket(B, C)) + bracket(B, bracket(C, A))
            + bracket(C, bracket(A, B)))


def jacobi_triples(fields: FieldSet, n_random: int | None = None,
                   seed: int = 0) -> list[tuple[int, int, int]]:
    triples = list(itertools.combinations(fields.labels, 3))
    if n_random is not None and n_random < len(triples):
        triples = random.Random(seed).sample(triples, n_random)
    return triples


def independence_matrix(fields: FieldSet, seed: int = 0, height: int = 20):
    """Field images at a random rational point off p^{-1}(Sigma).

    Returns (point, matrix, rank)."""
    g = fields.genus
    rng = random.Random(seed)
    xs = x_coordinates(g)
    while True:
        point = {v: Fraction(rng.randint(-height, height), rng.randint(1, height)) for v in xs}
        lam_vals = {VarId(1, s): p.evaluate(point) for s, p in fields.pmap.lambda_polys.items()}
        if discriminant_at(lam_vals, g) != 0:
            break
    M = [[fields[lab].images[v].evaluate(point) for v in xs] for lab in fields.labels]
    return point, M, rank(M)


def tamper(fields: FieldSet, label: int, delta: Fraction = Fraction(1, 7)) -> FieldSet:
    """Copy of ``fields`` with one coefficient of L_label perturbed (negative control)."""
    D = fields[label]
    v = VarId(X, 1, 1)
    img = D.images[v]
    if img:
        m = sorted(img.terms)[0]
        img = img + Polynomial.monomial(m, fields.genus, delta)
    imgs = dict(D.images)
    imgs[v] = img
    new = dict(fields.fields)
    new[label] = Derivation(D.genus, D.weight, imgs, D.label)
    return FieldSet(fields.genus, new, fields.pmap, fields.lambda_fields)
