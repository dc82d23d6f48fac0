from fractions import Fraction

import pytest
import sympy as sp

from hyperderiv.curvegeom import (CurveModel, LambdaField, build_lambda_field, discriminant,
                                  discriminant_at, divisibility_tangency, lambda_fields,
                                  sample_singular_tangency, singular_point, t_entry)
from hyperderiv.exactalg import Polynomial, VarId, lam, parse
from hyperderiv.exactalg.variables import LAMBDA, lambda_variables

from oracles import to_sympy


def test_t_entry_examples():
    for g in (1, 2, 3):
        assert t_entry(1, 1, g) == lam(4, g) * 4
        assert t_entry(1, 2, g) == lam(6, g) * 6
    assert t_entry(2, 2, 1) == lam(4, 1) ** 2 * Fraction(-4, 3)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_t_symmetric(g):
    for k in range(1, 2 * g + 1):
        for m in range(1, 2 * g + 1):
            assert t_entry(k, m, g) == t_entry(m, k, g)


def test_lambda_field_examples():
    L0 = build_lambda_field(0, 1)
    assert L0.images[VarId(LAMBDA, 4)] == lam(4, 1) * 4
    assert L0.images[VarId(LAMBDA, 6)] == lam(6, 1) * 6
    L2 = build_lambda_field(1, 1)
    assert L2.images[VarId(LAMBDA, 4)] == lam(6, 1) * 6
    assert L2.images[VarId(LAMBDA, 6)] == lam(4, 1) ** 2 * Fraction(-4, 3)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_euler_lambda_field(g):
    L0 = build_lambda_field(0, g)
    for v in lambda_variables(g):
        assert L0.images[v] == Polynomial.var(v, g, v.a)


def test_discriminant_genus1():
    assert discriminant(1) == parse("-4*l[4]^3 - 27*l[6]^2", 1)
    assert discriminant(1).weight() == 12


@pytest.mark.parametrize("g", [1, 2])
def test_discriminant_against_sympy(g):
    X = sp.Symbol("X")
    coeffs = CurveModel(g).coefficients()
    F = sum(to_sympy(c) * X ** (2 * g + 1 - i) for i, c in enumerate(coeffs))
    assert sp.expand(sp.discriminant(F, X) - to_sympy(discriminant(g))) == 0


def test_discriminant_guard_genus3():
    with pytest.raises(ValueError):
        discriminant(3)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_discriminant_vanishes_on_double_root(g):
    params = [Fraction(1, 2)] + [Fraction(k + 2, 3) for k in range(2 * g - 2)]
    values, _ = singular_point(params, g)
    assert discriminant_at(values, g) == 0
    if g <= 2:
        assert discriminant(g).evaluate(values) == 0


def test_tangency_genus1_quotients():
    assert divisibility_tangency(build_lambda_field(0, 1), 1) == Polynomial.const(12, 1)
    assert divisibility_tangency(build_lambda_field(1, 1), 1).is_zero()


def test_tangency_genus2_all_fields():
    for L in lambda_fields(2):
        h = divisibility_tangency(L, 2)
        assert h.is_zero() or h.weight() == L.index
    assert divisibility_tangency(build_lambda_field(0, 2), 2) == Polynomial.const(40, 2)


def test_non_tangent_field_fails_divisibility():
    L = LambdaField(-4, 1, {VarId(LAMBDA, 4): Polynomial.const(1, 1),
                            VarId(LAMBDA, 6): Polynomial.zero(1)})
    with pytest.raises(ArithmeticError):
        divisibility_tangency(L, 1)


def test_sample_example_genus1():
    values, jac = singular_point([Fraction(1)], 1)
    assert values == {VarId(LAMBDA, 4): -3, VarId(LAMBDA, 6): 2}
    res = sample_singular_tangency(build_lambda_field(1, 1), 1, trials=10)
    assert res["passed"] == 10


@pytest.mark.parametrize("g", [1, 2, 3])
def test_sample_tangency_all_fields(g):
    for L in lambda_fields(g):
        res = sample_singular_tangency(L, g, trials=10)
        assert res["passed"] == res["trials"] == 10, L.index
        assert all(set(r) == {"field", "method", "point", "pass"} for r in res["rows"])


def test_sample_zero_field_passes():
    Z = LambdaField(0, 2, {v: Polynomial.zero(2) for v in lambda_variables(2)})
    assert sample_singular_tangency(Z, 2, trials=5)["passed"] == 5


def test_sample_negative_control():
    L = LambdaField(-4, 2, {v: Polynomial.const(1 if v.a == 4 else 0, 2)
                            for v in lambda_variables(2)})
    assert sample_singular_tangency(L, 2, trials=10)["passed"] < 10


def test_sample_deterministic():
    L = build_lambda_field(2, 3)
    assert sample_singular_tangency(L, 3, seed=7) == sample_singular_tangency(L, 3, seed=7)


def test_lambda_field_range():
    with pytest.raises(ValueError):
        build_lambda_field(2, 1)
