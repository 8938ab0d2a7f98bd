import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from opialkit import (EXACT, FALLBACK, DomainError, EvaluationError, Interval, SpecParseError,
                      builtin_family, check_continuity, from_callable, linear_combination,
                      numeric_derivative)

coef = st.floats(-2.0, 2.0, allow_nan=False)


def test_interval_rejects_empty_and_infinite():
    with pytest.raises(ValueError):
        Interval(1.0, 1.0)
    with pytest.raises(ValueError):
        Interval(0.0, math.inf)


def test_interval_contains_and_grid():
    iv = Interval(-1.0, 2.0)
    assert iv.span == 3.0
    assert iv.contains(2.0) and not iv.contains(2.1)
    g = iv.grid()
    assert g.size == 257 and g[0] == -1.0 and g[-1] == 2.0


# -- numeric_derivative ------------------------------------------------------

def test_second_derivative_of_cubic():
    f = builtin_family("poly:0,0,0,1", Interval(-2.0, 2.0))
    val, err = numeric_derivative(f, 2, 1.0)
    assert abs(val - 6.0) <= 1e-8


def test_derivative_of_constant_is_zero():
    f = builtin_family("const:5", Interval(-3.0, 3.0))
    for x in (-3.0, 0.3, 2.9):
        assert abs(numeric_derivative(f, 1, x)[0]) <= 1e-12


def test_third_derivative_of_exp_matches_exact():
    f = builtin_family("exp:1", Interval(-1.0, 1.0))
    val, err = numeric_derivative(f, 3, 0.0)
    assert abs(val - f(0.0, 3)) <= 1e-6
    assert err >= 0


def test_one_sided_stencil_at_endpoints():
    f = builtin_family("exp:1", Interval(0.0, 1.0))
    for x in (0.0, 1.0):
        assert abs(numeric_derivative(f, 2, x)[0] - math.exp(x)) <= 1e-5


def test_stencil_that_cannot_fit_is_a_domain_error():
    f = builtin_family("poly:0,1", Interval(0.0, 1e-6))
    with pytest.raises(DomainError):
        numeric_derivative(f, 3, 5e-7)
    with pytest.raises(DomainError):
        numeric_derivative(f, 7, 5e-7)


def test_non_finite_stencil_value_is_an_evaluation_error():
    g = from_callable(lambda x: np.where(x > 0.5, np.inf, x), Interval(0.0, 1.0))
    with pytest.raises(EvaluationError):
        numeric_derivative(g, 1, 0.5, h0=0.01)


def test_polynomial_fd_agrees_with_exact_on_grid():
    f = builtin_family("poly:0.3,-1.2,0.7,2.0,-0.4", Interval(-1.0, 1.0))
    for k in (1, 2, 3):
        for x in np.linspace(-1.0, 1.0, 100):
            exact = f(x, k)
            est = numeric_derivative(f, k, x)[0]
            assert abs(est - exact) <= 1e-8 * max(1.0, abs(exact))


@given(a=coef, b=coef, x=st.floats(-0.9, 0.9))
def test_numeric_derivative_is_linear(a, b, x):
    dom = Interval(-1.0, 1.0)
    f = builtin_family("sin:1.3", dom)
    g = builtin_family("exp:0.7", dom)
    comb = from_callable(lambda t: a * f(t) + b * g(t), dom)
    ff = from_callable(lambda t: f(t), dom)
    gg = from_callable(lambda t: g(t), dom)
    lhs = numeric_derivative(comb, 2, x)[0]
    rhs = a * numeric_derivative(ff, 2, x)[0] + b * numeric_derivative(gg, 2, x)[0]
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


# -- builtin_family ---------------------------------------------------------

def test_spec_examples():
    assert builtin_family("poly:0,0,1", Interval(0.0, 5.0))(3.0, 1) == 6.0
    assert builtin_family("const:4")(0.37) == 4.0
    assert builtin_family("exp:2")(0.0, 2) == 4.0


def test_trig_derivatives():
    s = builtin_family("sin:2", Interval(-4.0, 4.0))
    c = builtin_family("cos:2", Interval(-4.0, 4.0))
    x = np.linspace(-4, 4, 9)
    assert np.allclose(s(x, 1), 2 * np.cos(2 * x), atol=1e-14)
    assert np.allclose(c(x, 3), 8 * np.sin(2 * x), atol=1e-13)


def test_tent_shape_and_breakpoint():
    t = builtin_family("tent:1")
    assert t.domain == Interval(0.0, 1.0)
    assert t.breakpoints == (0.5,)
    assert t.max_order == 1
    assert t(0.25) == 0.25 and t(0.75) == 0.25
    assert t(0.25, 1) == 1.0 and t(0.75, 1) == -1.0
    with pytest.raises(DomainError):
        t(0.5, 2)


@pytest.mark.parametrize("bad", ["", "poly", "poly:", "poly:1,x", "const:1,2", "exp:nan",
                                 "tent:-1", "bessel:1", "sin:1,2"])
def test_malformed_specs(bad):
    with pytest.raises(SpecParseError):
        builtin_family(bad)


def test_canonical_spec_round_trips():
    f = builtin_family("poly:1, 2 ,3")
    assert f.spec == "poly:1.0,2.0,3.0"
    assert builtin_family(f.spec).spec == f.spec


def test_out_of_domain_and_order():
    f = builtin_family("poly:1,1")
    with pytest.raises(DomainError):
        f(1.5)
    with pytest.raises(DomainError):
        f(0.5, -1)


def test_fallback_orders_use_finite_differences():
    g = from_callable(np.sin, Interval(0.0, 2.0))
    assert g.kind == FALLBACK and g.max_order == 6
    assert abs(g(1.0, 2) + math.sin(1.0)) <= 1e-7
    with pytest.raises(DomainError):
        g(1.0, 7)


def test_linear_combination():
    dom = Interval(0.0, 1.0)
    f = linear_combination([2.0, -1.0], [builtin_family("exp:1", dom), builtin_family("poly:0,1", dom)])
    assert f.kind == EXACT
    assert abs(f(0.5, 1) - (2 * math.exp(0.5) - 1)) <= 1e-14


def test_continuity_check():
    assert check_continuity(builtin_family("sin:3", Interval(0.0, 2.0)))
    jump = from_callable(lambda x: np.where(x < 0.5 + 1e-9, 0.0, 1.0), Interval(0.0, 1.0))
    assert not check_continuity(jump, n=3)
