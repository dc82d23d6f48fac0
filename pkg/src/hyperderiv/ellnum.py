"""Genus-1 numeric anchor: Weierstrass functions by truncated series.

The curve Y^2 = X^3 + l4 X + l6 corresponds to (wp')^2 = 4 wp^3 + 4 l4 wp + 4 l6,
i.e. g2 = -4 l4, g3 = -4 l6. Near z = 0,

    wp(z) = z^-2 + sum_{k>=1} c_k z^{2k},   c_1 = -l4/5,  c_2 = -l6/7,
    c_k = 3 / ((2k+3)(k-2)) * sum_{m=1}^{k-2} c_m c_{k-1-m}   (k >= 3).

Derivatives in the curve parameters are taken by central differences with
one Richardson step, in extended precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath
from mpmath import mp, mpc, mpf

from .curvegeom import build_lambda_field
from .exactalg import Polynomial, VarId
from .exactalg.variables import LAMBDA, X

DPS = 40
DEFAULT_TRUNC = 14
DEFAULT_STEP = mpf("1e-5")
SAFE_FRACTION = 0.6


@dataclass
class SeriesG1:
    lam4: Fraction
    lam6: Fraction
    coeffs: list  # c_1 .. c_N as mpf/mpc
    order: int

    @property
    def radius(self) -> float:
        """Root-test estimate of the distance to the nearest lattice pole."""
        est = []
        for k, c in enumerate(self.coeffs[-4:], start=self.order - 3):
            if c != 0:
                est.append(float(abs(c)) ** (-1.0 / (2 * k + 2)))
        return min(est) if est else float("inf")


def wp_coeffs(lam4, lam6, N: int = DEFAULT_TRUNC) -> SeriesG1:
    if N < 4:
        raise ValueError("truncation order must be at least 4")
    with mp.workdps(DPS):
        l4, l6 = mpmath.mpmathify(_as_mp(lam4)), mpmath.mpmathify(_as_mp(lam6))
        c = [None, -l4 / 5, -l6 / 7]
        for k in range(3, N + 1):
            s = sum(c[m] * c[k - 1 - m] for m in range(1, k - 1))
            c.append(mpf(3) / ((2 * k + 3) * (k - 2)) * s)
    return SeriesG1(lam4, lam6, c[1:], N)


def _as_mp(v):
    if isinstance(v, Fraction):
        return mpf(v.numerator) / v.denominator
    return v


@dataclass
class G1Values:
    wp: object
    wp1: object
    wp2: object
    zeta: object
    sigma: object


def eval_functions(s: SeriesG1, z, check_radius: bool = True) -> G1Values:
    with mp.workdps(DPS):
        z = mpmath.mpmathify(z)
        if z == 0:
            raise ValueError("z = 0 is a pole")
        if check_radius and abs(z) > SAFE_FRACTION * s.radius:
            raise ValueError(f"|z| = {float(abs(z)):.3g} is outside the safe disk")
        wp = z ** -2
        wp1 = -2 * z ** -3
        wp2 = 6 * z ** -4
        zeta = 1 / z
        log_sig = mpf(0)
        for k, c in enumerate(s.coeffs, start=1):
            wp += c * z ** (2 * k)
            wp1 += 2 * k * c * z ** (2 * k - 1)
            wp2 += 2 * k * (2 * k - 1) * c * z ** (2 * k - 2)
            zeta -= c * z ** (2 * k + 1) / (2 * k + 1)
            log_sig -= c * z ** (2 * k + 2) / ((2 * k + 1) * (2 * k + 2))
        sigma = z * mpmath.exp(log_sig)
    return G1Values(wp, wp1, wp2, zeta, sigma)


def curve_defect(s: SeriesG1, z) -> float:
    """|wp'^2 - 4 wp^3 - 4 l4 wp - 4 l6| for the truncated series."""
    with mp.workdps(DPS):
        v = eval_functions(s, z, check_radius=False)
        l4, l6 = _as_mp(s.lam4), _as_mp(s.lam6)
        return float(abs(v.wp1 ** 2 - 4 * v.wp ** 3 - 4 * l4 * v.wp - 4 * l6))


# -- operators on functions F(l4, l6, z) ------------------------------------------

Fn = Callable[[object, object, object], object]


def _richardson(F1: Callable[[object], object], h) -> object:
    d1 = (F1(h) - F1(-h)) / (2 * h)
    d2 = (F1(h / 2) - F1(-h / 2)) / h
    return (4 * d2 - d1) / 3


def lambda_partials(F: Fn, lam4, lam6, z, h=DEFAULT_STEP):
    """(dF/dl4, dF/dl6) by central differences with Richardson extrapolation."""
    with mp.workdps(DPS):
        l4, l6 = _as_mp(lam4), _as_mp(lam6)
        h4 = h * max(1, abs(l4))
        h6 = h * max(1, abs(l6))
        d4 = _richardson(lambda t: F(l4 + t, l6, z), h4)
        d6 = _richardson(lambda t: F(l4, l6 + t, z), h6)
    return d4, d6


def z_partial(F: Fn, lam4, lam6, z, h=DEFAULT_STEP):
    with mp.workdps(DPS):
        return _richardson(lambda t: F(lam4, lam6, z + t), h)


def wp_function(which: str = "wp", N: int = DEFAULT_TRUNC) -> Fn:
    def F(l4, l6, z):
        return getattr(eval_functions(wp_coeffs(l4, l6, N), z, check_radius=False), which)
    return F


def _lambda_field_numeric(k: int):
    L = build_lambda_field(k, 1)
    imgs = [L.images[VarId(LAMBDA, 4)], L.images[VarId(LAMBDA, 6)]]

    def coeffs(l4, l6):
        vals = {VarId(LAMBDA, 4): l4, VarId(LAMBDA, 6): l6}
        return [p.evaluate(vals) if p else 0 for p in imgs]
    return coeffs


def generator(label: int, N: int = DEFAULT_TRUNC) -> Callable[[Fn], Fn]:
    """The sigma-level generators at genus 1 as operators on functions:

    L0 -> L_0 - z d/dz,   L1 -> d/dz,   L2 -> L_2 - zeta(z) d/dz.
    """
    if label == 1:
        def op1(F: Fn) -> Fn:
            return lambda l4, l6, z: z_partial(F, l4, l6, z)
        return op1
    coeffs = _lambda_field_numeric(label // 2)
    zeta = wp_function("zeta", N)

    def op(F: Fn) -> Fn:
        def G(l4, l6, z):
            a4, a6 = coeffs(l4, l6)
            d4, d6 = lambda_partials(F, l4, l6, z)
            dz = z_partial(F, l4, l6, z)
            shift = z if label == 0 else zeta(l4, l6, z)
            return a4 * d4 + a6 * d6 - shift * dz
        return G
    return op


# -- checks against the symbolic fields -------------------------------------------

@dataclass
class NumericCheckReport:
    rows: list = field(default_factory=list)

    def add(self, name, z, lam, lhs, rhs, tol):
        err = float(abs(lhs - rhs))
        self.rows.append({"identity": name, "z": _fmt(z), "lambda": [str(l) for l in lam],
                          "lhs": _fmt(lhs), "rhs": _fmt(rhs), "abs_error": float(f"{err:.17g}"),
                          "pass": err < tol})

    @property
    def passed(self) -> bool:
        return all(r["pass"] for r in self.rows)

    def failures(self) -> list:
        return [r for r in self.rows if not r["pass"]]


def _fmt(v):
    v = complex(v)
    if v.imag == 0:
        return f"{v.real:.17g}"
    return f"{v.real:.17g}{v.imag:+.17g}j"


DEFAULT_Z = [mpf("0.2"), mpc("0.25", "0.1"), mpc("-0.15", "0.22"), mpf("0.3"),
             mpc("0.1", "-0.3")]
DEFAULT_LAMBDAS = [(Fraction(1), Fraction(2)), (Fraction(-2), Fraction(1)),
                   (Fraction(3), Fraction(-1)), (Fraction(1, 2), Fraction(-3))]


def default_samples():
    return [(z, lam) for lam in DEFAULT_LAMBDAS for z in DEFAULT_Z]


def _phi_point(l4, l6, z, N):
    v = eval_functions(wp_coeffs(l4, l6, N), z)
    return v, {VarId(X, 1, 1): v.wp, VarId(X, 2, 1): v.wp1, VarId(X, 3, 1): v.wp2}


def _check_off_discriminant(lam):
    l4, l6 = lam
    if -4 * l4 ** 3 - 27 * l6 ** 2 == 0:
        raise ValueError(f"lambda = {lam} lies on the discriminant")


def verify_genus1_generators(fields, pm=None, samples=None, tol: float = 1e-6,
                             N: int = DEFAULT_TRUNC) -> NumericCheckReport:
    """Compare sigma-level generators applied to wp, wp', wp'' with the
    symbolic images of x[1,1], x[2,1], x[3,1] evaluated at (wp, wp', wp'').

    With ``pm`` given, p*lambda evaluated at the sample must return lambda.
    """
    report = NumericCheckReport()
    funcs = {VarId(X, 1, 1): wp_function("wp", N), VarId(X, 2, 1): wp_function("wp1", N),
             VarId(X, 3, 1): wp_function("wp2", N)}
    for z, lam in samples or default_samples():
        _check_off_discriminant(lam)
        with mp.workdps(DPS):
            _, point = _phi_point(*lam, z, N)
            if pm is not None:
                for idx, value in zip((4, 6), lam):
                    back = pm.lambda_polys[idx].evaluate(point)
                    report.add(f"p*l{idx}", z, lam, back, _as_mp(value), tol)
            for label in (0, 1, 2):
                op = generator(label, N)
                for v, F in funcs.items():
                    lhs = op(F)(*lam, z)
                    rhs = fields[label].images[v].evaluate(point)
                    report.add(f"L{label} {v}", z, lam, lhs, rhs, tol)
    if not report.passed:
        report.rows.append(normalization_diagnostic(report))
    return report


def normalization_diagnostic(report: NumericCheckReport) -> dict:
    """Least-squares scalar s with lhs ~ s * rhs over the failing rows."""
    bad = report.failures()
    num = sum(complex(r["lhs"]) * complex(r["rhs"]).conjugate() for r in bad)
    den = sum(abs(complex(r["rhs"])) ** 2 for r in bad)
    scale = num / den if den else float("nan")
    return {"identity": "normalization-diagnostic", "fitted_scale": _fmt(scale),
            "failing_rows": len(bad), "pass": False}


def published_genus1_table() -> dict:
    """[L0,L1] = L1, [L0,L2] = 2 L2, [L1,L2] = wp L1."""
    one = Polynomial.const(1, 1)
    return {(0, 1): {1: one}, (0, 2): {2: one * 2},
            (1, 2): {1: Polynomial.var(VarId(X, 1, 1), 1)}}


def verify_genus1_brackets(fields=None, samples=None, tol: float = 1e-5,
                           N: int = DEFAULT_TRUNC, table=None) -> NumericCheckReport:
    """Apply [L_a, L_b] to wp numerically (nested differences) and compare
    with sum_m c_m L_m wp.

    The structure constants default to the published genus-1 relations; a
    computed StructureTable can be passed instead. The generators act through
    their analytic form, so ``fields`` is accepted only for symmetry.
    """
    entries = published_genus1_table() if table is None else table.entries
    report = NumericCheckReport()
    F = wp_function("wp", N)
    ops = {lab: generator(lab, N) for lab in (0, 1, 2)}
    for z, lam in samples or default_samples():
        _check_off_discriminant(lam)
        with mp.workdps(DPS):
            _, point = _phi_point(*lam, z, N)
            single = {lab: ops[lab](F)(*lam, z) for lab in ops}
            for (a, b), coeffs in sorted(entries.items()):
                lhs = ops[a](ops[b](F))(*lam, z) - ops[b](ops[a](F))(*lam, z)
                rhs = sum((c.evaluate(point) * single[m] for m, c in coeffs.items()), mpf(0))
                report.add(f"[L{a},L{b}] wp", z, lam, lhs, rhs, tol)
    return report
