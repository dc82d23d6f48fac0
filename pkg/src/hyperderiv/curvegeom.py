"""Parameter space of the curves Y^2 = X^{2g+1} + l4 X^{2g-1} + ... + l_{4g+2}.

Holds the T-matrix of the convolution of invariants, the polynomial vector
fields L_{2k} built from it, the discriminant, and two tangency checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactalg import Polynomial, VarId, apply_images, lam, rank
from .exactalg.linalg import determinant
from .exactalg.variables import LAMBDA, lambda_variables

DEFAULT_SEED = 0x1DE
MAX_HEIGHT = 20


@dataclass(frozen=True)
class CurveModel:
    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be positive")

    @property
    def degree(self) -> int:
        return 2 * self.genus + 1

    def coefficients(self) -> list[Polynomial]:
        """Coefficients of X^{2g+1}, X^{2g}, ..., X^0 (the X^{2g} one is zero)."""
        g = self.genus
        out = [Polynomial.const(1, g), Polynomial.zero(g)]
        out += [lam(2 * s, g) for s in range(2, 2 * g + 2)]
        return out

    def derivative_coefficients(self) -> list[Polynomial]:
        n = self.degree
        return [c * (n - k) for k, c in enumerate(self.coefficients()[:-1])]

    def coefficient_values(self, roots: list[Fraction]) -> dict[VarId, Fraction]:
        """The lambda values of the monic polynomial with the given roots."""
        poly = _poly_from_roots(roots)
        if poly[1] != 0:
            raise ValueError("roots must sum to zero")
        return {VarId(LAMBDA, 2 * s): poly[s] for s in range(2, self.degree + 1)}


@dataclass(frozen=True)
class LambdaField:
    """The field L_{2k} = sum_s images[l_{2s}] d/dl_{2s}."""

    index: int
    genus: int
    images: dict

    def apply(self, p: Polynomial) -> Polynomial:
        return apply_images(self.images, p)

    def at(self, values: dict) -> list[Fraction]:
        return [self.images[v].evaluate(values) for v in lambda_variables(self.genus)]


def t_entry(k: int, m: int, g: int) -> Polynomial:
    """T_{2k,2m} with lambda_s = 0 off {4, 6, ..., 4g+2}."""
    if not (1 <= k <= 2 * g and 1 <= m <= 2 * g):
        raise ValueError(f"T index ({k}, {m}) out of range for genus {g}")
    if k > m:
        k, m = m, k
    out = lam(2 * k + 2 * m, g) * (2 * (k + m))
    for s in range(2, k):
        out = out + lam(2 * s, g) * lam(2 * k + 2 * m - 2 * s, g) * (2 * (k + m - 2 * s))
    corr = Fraction(2 * k * (2 * g - m + 1), 2 * g + 1)
    return out - lam(2 * k, g) * lam(2 * m, g) * corr


def build_lambda_field(k: int, g: int) -> LambdaField:
    if not 0 <= k <= 2 * g - 1:
        raise ValueError(f"L_{2 * k} is not defined for genus {g}")
    images = {VarId(LAMBDA, 2 * s): t_entry(k + 1, s - 1, g) for s in range(2, 2 * g + 2)}
    return LambdaField(2 * k, g, images)


def lambda_fields(g: int) -> list[LambdaField]:
    return [build_lambda_field(k, g) for k in range(2 * g)]


# -- discriminant -----------------------------------------------------------

def sylvester_matrix(p: list, q: list) -> list[list]:
    """Sylvester matrix of coefficient lists (highest degree first)."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    zero = p[0] * 0
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(p) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(q) + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(M: list[list[Polynomial]]) -> Polynomial:
    """Fraction-free determinant of a matrix of polynomials."""
    M = [list(r) for r in M]
    n = len(M)
    sign = 1
    prev = None
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return M[0][0] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num if prev is None else _div_by(num, prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def _div_by(num: Polynomial, d: Polynomial) -> Polynomial:
    if d.is_constant():
        return num / d.constant_term()
    return num.exact_div(d)


def _disc_sign(n: int) -> int:
    # Disc(F) = (-1)^{n(n-1)/2} Res(F, F') for monic F of degree n
    return -1 if (n * (n - 1) // 2) % 2 else 1


@lru_cache(maxsize=None)
def discriminant(g: int, full: bool = False) -> Polynomial:
    """Discriminant of the defining polynomial, via the Sylvester resultant.

    Genus 3 and above need ``full=True``: the expansion is slow.
    """
    if g >= 3 and not full:
        raise ValueError("full discriminant expansion for genus >= 3 needs full=True")
    c = CurveModel(g)
    S = sylvester_matrix(c.coefficients(), c.derivative_coefficients())
    d = bareiss_det(S) * _disc_sign(c.degree)
    assert d.weight() == 4 * g * (2 * g + 1)
    return d


def discriminant_at(values: dict, g: int) -> Fraction:
    """Exact discriminant value at a rational point of lambda-space."""
    c = CurveModel(g)
    p = [v.evaluate(values) for v in c.coefficients()]
    q = [v.evaluate(values) for v in c.derivative_coefficients()]
    return determinant(sylvester_matrix(p, q)) * _disc_sign(c.degree)


def divisibility_tangency(L: LambdaField, g: int, full: bool = False) -> Polynomial:
    """The quotient h with L(Disc) = h * Disc; ArithmeticError if it does not divide."""
    D = discriminant(g, full)
    return L.apply(D).exact_div(D)


# -- sampled tangency --------------------------------------------------------

def _poly_from_roots(roots: list[Fraction]) -> list[Fraction]:
    coeffs = [Fraction(1)]
    for r in roots:
        coeffs = [a - r * b for a, b in zip(coeffs + [Fraction(0)], [Fraction(0)] + coeffs)]
    return coeffs


def _deflate(coeffs: list[Fraction], r: Fraction) -> list[Fraction]:
    """Synthetic division by (X - r); the remainder must vanish."""
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + r * out[-1])
    assert coeffs[-1] + r * out[-1] == 0
    return out


def singular_point(params: list[Fraction], g: int):
    """Lambda point and Jacobian of the singular-curve parametrization.

    params = (a, b_1, ..., b_{2g-2}); the roots are a, a, b_1, ..., b_{2g-1}
    with b_{2g-1} = -2a - sum(b_i).
    """
    a, bs = params[0], list(params[1:])
    last = -2 * a - sum(bs, Fraction(0))
    roots = [a, a] + bs + [last]
    F = _poly_from_roots(roots)
    n = 2 * g + 1
    # d F / d r = -F / (X - r);  d last / d a = -2,  d last / d b_i = -1
    F_last = _deflate(F, last)
    cols = []
    F_a = _deflate(F, a)
    cols.append([-2 * u + 2 * v for u, v in zip(F_a, F_last)])
    for b in bs:
        F_b = _deflate(F, b)
        cols.append([-u + v for u, v in zip(F_b, F_last)])
    # F_r has degree n-1: entry t is the coefficient of X^{n-1-t}; lambda_{2s} sits at X^{n-s}
    jac = [[col[s - 1] for col in cols] for s in range(2, n + 1)]
    values = {VarId(LAMBDA, 2 * s): F[s] for s in range(2, n + 1)}
    return values, jac


def _rand_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-MAX_HEIGHT, MAX_HEIGHT), rng.randint(1, MAX_HEIGHT))


def sample_singular_tangency(L: LambdaField, g: int, trials: int = 10,
                             seed: int = DEFAULT_SEED) -> dict:
    """Check at random singular curves that L is tangent to the discriminant.

    A sample passes when L(lambda) lies in the column span of the
    parametrization's Jacobian (exact rank comparison).
    """
    rng = random.Random(seed)
    rows = []
    resampled = 0
    while len(rows) < trials:
        params = [_rand_rational(rng) for _ in range(2 * g - 1)]
        values, jac = singular_point(params, g)
        r = rank(jac)
        if r < 2 * g - 1:
            resampled += 1
            if resampled > 100 * trials:
                raise RuntimeError("could not find non-degenerate singular samples")
            continue
        vec = L.at(values)
        aug = [row + [v] for row, v in zip(jac, vec)]
        ok = rank(aug) == r
        rows.append({"field": f"L{L.index}", "method": "sample",
                     "point": [str(p) for p in params], "pass": ok})
    return {"field": f"L{L.index}", "genus": g, "trials": trials, "resampled": resampled,
            "passed": sum(r["pass"] for r in rows), "rows": rows}
