from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

from hyperderiv import ellnum as E
from hyperderiv.liegen import tamper

from conftest import table


def test_cusp_series_is_pure_pole():
    s = E.wp_coeffs(0, 0)
    assert all(c == 0 for c in s.coeffs)
    with mp.workdps(E.DPS):
        z = mpf("0.3")
        assert abs(E.eval_functions(s, z).wp - z ** -2) < mpf(10) ** -35


def test_first_coefficients():
    s = E.wp_coeffs(Fraction(3), Fraction(-7, 2))
    with mp.workdps(E.DPS):
        assert abs(s.coeffs[0] + mpf(3) / 5) < mpf(10) ** -35
        assert abs(s.coeffs[1] - mpf(1) / 2) < mpf(10) ** -35


def test_recursion_solves_the_curve_equation():
    # substituting the series into the differential equation is the oracle
    for lam in E.DEFAULT_LAMBDAS:
        s = E.wp_coeffs(*lam, N=12)
        assert E.curve_defect(s, mpf("0.3")) < 1e-8


def test_defect_shrinks_with_truncation():
    lo = E.curve_defect(E.wp_coeffs(1, 2, N=8), mpf("0.3"))
    hi = E.curve_defect(E.wp_coeffs(1, 2, N=14), mpf("0.3"))
    assert hi < lo * 1e-3


def test_truncation_guard():
    with pytest.raises(ValueError):
        E.wp_coeffs(1, 2, N=3)


def test_pole_rejected():
    with pytest.raises(ValueError):
        E.eval_functions(E.wp_coeffs(1, 2), 0)


def test_outside_safe_disk_rejected():
    with pytest.raises(ValueError):
        E.eval_functions(E.wp_coeffs(1, 2), 5)


@pytest.mark.parametrize("z, lam", E.default_samples()[::4])
def test_function_identities(z, lam):
    with mp.workdps(E.DPS):
        s = E.wp_coeffs(*lam)
        v = E.eval_functions(s, z)
        zeta = E.wp_function("zeta")
        sigma = E.wp_function("sigma")
        dzeta = E.z_partial(zeta, *lam, z)
        dlogsig = E.z_partial(lambda a, b, t: mpmath.log(sigma(a, b, t)), *lam, z)
        assert abs(dzeta + v.wp) < 1e-9
        assert abs(dlogsig - v.zeta) < 1e-9
        l4 = mpf(lam[0].numerator) / lam[0].denominator
        assert abs(v.wp2 - 6 * v.wp ** 2 - 2 * l4) < 1e-8


def test_sigma_normalization():
    v = E.eval_functions(E.wp_coeffs(1, 2), mpf("1e-3"))
    assert abs(v.sigma / mpf("1e-3") - 1) < 1e-9


def test_lambda_partials_at_cusp():
    z = mpf("0.3")
    d4, d6 = E.lambda_partials(E.wp_function("wp"), 0, 0, z)
    assert abs(d4 + z ** 2 / 5) < 1e-9
    assert abs(d6 + z ** 4 / 7) < 1e-9
    c4, c6 = E.lambda_partials(lambda a, b, t: mpf(5), 1, 2, z)
    assert c4 == 0 and c6 == 0


def test_euler_homogeneity_single_point(fs1):
    F = E.wp_function("wp")
    with mp.workdps(E.DPS):
        lhs = E.generator(0)(F)(1, 2, mpf("0.2"))
        assert abs(lhs - 2 * F(1, 2, mpf("0.2"))) < 1e-6


def test_L2_at_cusp(fs1):
    F = E.wp_function("wp")
    z = mpf("0.25")
    with mp.workdps(E.DPS):
        lhs = E.generator(2)(F)(0, 0, z)
        rhs = fs1[2].images[next(iter(fs1[2].images))]
    # at l4 = l6 = 0: L2 wp = -zeta wp' = -(1/z)(-2/z^3) = 2 z^-4 = (2/3) wp'' - 2 wp^2
    assert abs(lhs - 2 * z ** -4) < 1e-6
    assert rhs.weight() == 4


def test_generators_match_symbolic(fs1):
    r = E.verify_genus1_generators(fs1, fs1.pmap, tol=1e-6)
    assert len({(row["z"], tuple(row["lambda"])) for row in r.rows}) >= 15
    assert r.passed, r.failures()[:3]


def test_brackets_match_published(fs1):
    r = E.verify_genus1_brackets(fs1, tol=1e-5)
    assert r.passed, r.failures()[:3]
    assert len(r.rows) == 3 * len(E.default_samples())


def test_brackets_match_computed_table(fs1):
    r = E.verify_genus1_brackets(fs1, samples=E.default_samples()[:3], table=table(1))
    assert r.passed


def test_tamper_fails_with_diagnostic(fs1):
    r = E.verify_genus1_generators(tamper(fs1, 2), samples=E.default_samples()[:2])
    assert not r.passed
    assert r.rows[-1]["identity"] == "normalization-diagnostic"


def test_discriminant_samples_rejected(fs1):
    with pytest.raises(ValueError):
        E.verify_genus1_generators(fs1, samples=[(mpf("0.2"), (Fraction(-3), Fraction(2)))])


def test_report_rows_format(fs1):
    r = E.verify_genus1_generators(fs1, samples=E.default_samples()[:1])
    row = r.rows[0]
    assert set(row) == {"identity", "z", "lambda", "lhs", "rhs", "abs_error", "pass"}
    assert row["pass"] == (row["abs_error"] < 1e-6)
