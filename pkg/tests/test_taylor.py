import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from opialkit import (DomainError, Interval, TaylorExpansion, builtin_family, parse_basis,
                      represent_from_h, taylor_eval, taylor_remainder, widder_derivative)

UNIT = Interval(0.0, 1.0)


def test_coefficients_are_widder_derivatives():
    fam = parse_basis("exp-basis:0.2,0.9,1.5", UNIT)
    f = builtin_family("sin:2", UNIT)
    exp = TaylorExpansion(fam, f, 0.3, 2)
    for i, c in enumerate(exp.coefficients):
        assert abs(c - widder_derivative(fam, f, i, 0.3)) <= 1e-9


def test_monomial_case_is_classical_taylor():
    f = builtin_family("exp:1.3", UNIT)
    exp = TaylorExpansion(parse_basis("monomials:4", UNIT), f, 0.2, 4)
    for i, c in enumerate(exp.coefficients):
        assert c == pytest.approx(1.3 ** i * math.exp(1.3 * 0.2), rel=1e-10)
    x = np.linspace(0, 1, 9)
    classical = sum(1.3 ** i * math.exp(0.26) * (x - 0.2) ** i / math.factorial(i)
                    for i in range(5))
    assert np.max(np.abs(taylor_eval(exp, x) - classical)) <= 1e-10


def test_eval_at_center_and_of_u0():
    fam = parse_basis("exp-basis:0.4,1.0,1.8", UNIT)
    f = builtin_family("cos:1.1", UNIT)
    exp = TaylorExpansion(fam, f, 0.5, 2)
    assert taylor_eval(exp, 0.5) == pytest.approx(f(0.5), rel=1e-14)
    ex0 = TaylorExpansion(fam, fam.members[0], 0.5, 2)
    x = np.linspace(0, 1, 5)
    assert np.allclose(taylor_eval(ex0, x), fam.members[0](x), rtol=1e-12)


def test_remainder_examples():
    n = 2
    fam = parse_basis(f"monomials:{n}", UNIT)
    f = builtin_family("poly:0,0,0,1", UNIT)
    exp = TaylorExpansion(fam, f, 0.0, n)
    x = np.linspace(0, 1, 6)
    assert np.allclose(taylor_remainder(exp, x), x ** 3, atol=1e-13)
    assert taylor_remainder(exp, 0.0) == 0.0
    const = parse_basis("custom:const:2", UNIT)
    g = builtin_family("sin:3", UNIT)
    e0 = TaylorExpansion(const, g, 0.25, 0)
    assert taylor_remainder(e0, 0.9) == pytest.approx(g(0.9) - g(0.25), rel=1e-12)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
@pytest.mark.parametrize("fspec", ["sin:1", "cos:2.5", "exp:-0.7", "poly:1,-2,0.5,3"])
def test_taylor_identity_exp_basis(n, fspec):
    fam = parse_basis("exp-basis:0.15,0.6,1.2,1.85", UNIT)
    f = builtin_family(fspec, UNIT)
    exp = TaylorExpansion(fam, f, 0.35, n)
    x = np.linspace(0, 1, 20)
    resid = f(x) - taylor_eval(exp, x) - taylor_remainder(exp, x)
    assert np.all(np.abs(resid) <= 1e-7 * (1 + np.abs(f(x))))


def test_remainder_needs_derivative_order():
    t = builtin_family("tent:1")
    fam = parse_basis("monomials:1", t.domain)
    exp = TaylorExpansion(fam, t, 0.2, 1)
    with pytest.raises(DomainError):
        taylor_remainder(exp, 0.6)


def test_representation_examples():
    fam1 = parse_basis("monomials:1", UNIT)
    f = represent_from_h(fam1, builtin_family("const:2", UNIT), 0.0)
    x = np.linspace(0, 1, 7)
    assert np.allclose(f(x), x ** 2, atol=1e-13)
    z = represent_from_h(fam1, builtin_family("const:0", UNIT), 0.0)
    assert np.all(z(x) == 0)
    g = represent_from_h(parse_basis("monomials:0", UNIT), builtin_family("const:1", UNIT), 0.0)
    assert np.allclose(g(x), x, atol=1e-14)


@given(c=st.lists(st.floats(-1, 1), min_size=1, max_size=4), x0=st.floats(0, 1))
def test_representation_round_trip(c, x0):
    n = 2
    fam = parse_basis(f"monomials:{n}", UNIT)
    h = builtin_family("poly:" + ",".join(map(repr, c)), UNIT)
    f = represent_from_h(fam, h, x0)
    for i in range(n + 1):
        assert abs(widder_derivative(fam, f, i, x0)) <= 1e-6
    xs = np.linspace(0.05, 0.95, 7)
    assert np.max(np.abs(f(xs, n + 1) - h(xs))) <= 1e-5


def test_representation_derivatives_exp_basis():
    fam = parse_basis("exp-basis:0.3,1.2", UNIT)
    h = builtin_family("poly:0.5,1,-0.3", UNIT)
    f = represent_from_h(fam, h, 0.1)
    # L_2 f recovers h
    xs = np.linspace(0.2, 0.9, 5)
    assert np.allclose(widder_derivative(fam, f, 2, xs), h(xs), rtol=1e-8)
