import numpy as np
import pytest
from hypothesis import given, strategies as st

from opialkit import (EvaluationError, QuadratureSpec, builtin_family, integrate,
                      integrate_batch, integrate_nested)


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(base_rule_order=1)
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(initial_panels=0)
    assert QuadratureSpec().tightened(10).rel_tol == pytest.approx(1e-10)


def test_examples():
    assert abs(integrate(lambda x: x ** 2, 0.0, 1.0).value - 1 / 3) <= 1e-14
    tent = builtin_family("tent:1")
    spec = QuadratureSpec(breakpoints=(0.5,))
    res = integrate(lambda x: tent(x, 1) ** 2, 0.0, 1.0, spec)
    assert res.value == pytest.approx(1.0, abs=1e-14) and res.converged
    assert integrate(lambda x: x, 1.0, 0.0).value == pytest.approx(-0.5, abs=1e-15)
    assert integrate(np.sin, 0.3, 0.3).value == 0.0


def test_nested_examples():
    one = integrate_nested(lambda s, t: np.ones_like(t), lambda s: (0.0 * s, s),
                           lambda s, I: I, 0.0, 1.0)
    assert one.value == pytest.approx(0.5, abs=1e-14) and one.converged
    res = integrate_nested(lambda s, t: t, lambda s: (0.0 * s, s), lambda s, I: I, 0.0, 1.0)
    assert res.value == pytest.approx(1 / 6, abs=1e-14)


@pytest.mark.parametrize("order", [2, 5, 10])
def test_exactness_on_one_panel(order):
    spec = QuadratureSpec(base_rule_order=order, initial_panels=1)
    rng = np.random.default_rng(order)
    c = rng.uniform(-1, 1, 2 * order)
    p = np.polynomial.Polynomial(c)
    exact = p.integ()(0.7) - p.integ()(-0.4)
    assert integrate(p, -0.4, 0.7, spec).value == pytest.approx(exact, rel=1e-13, abs=1e-14)


@given(a=st.floats(-3, 3), b=st.floats(-3, 3))
def test_orientation_antisymmetry(a, b):
    f = lambda x: np.exp(np.sin(x))
    fwd, back = integrate(f, a, b).value, integrate(f, b, a).value
    assert abs(fwd + back) <= 1e-14 * max(1.0, abs(fwd))


@given(c=st.floats(0.05, 0.95))
def test_additivity_with_breakpoint(c):
    f = lambda x: np.abs(x - c) ** 1.5 + np.cos(3 * x)
    whole = integrate(f, 0.0, 1.0, QuadratureSpec(breakpoints=(c,)))
    left, right = integrate(f, 0.0, c), integrate(f, c, 1.0)
    tol = 10 * (whole.error_estimate + left.error_estimate + right.error_estimate) + 1e-14
    assert abs(whole.value - left.value - right.value) <= tol


def test_converged_error_within_tolerance():
    spec = QuadratureSpec()
    res = integrate(lambda x: np.sqrt(x), 0.0, 2.0, spec.graded(6, 0))
    assert res.converged
    assert res.error_estimate <= max(spec.abs_tol, spec.rel_tol * abs(res.value))
    assert res.value == pytest.approx(2 / 3 * 2 ** 1.5, rel=1e-9)


def test_non_convergence_is_flagged():
    spec = QuadratureSpec(max_doublings=1, initial_panels=1, base_rule_order=2)
    res = integrate(lambda x: np.sin(40 * x), 0.0, 3.0, spec)
    assert not res.converged


def test_non_finite_integrand():
    with pytest.raises(EvaluationError):
        integrate(lambda x: np.where(x > 0.5, np.inf, 1.0), 0.0, 1.0)


def test_endpoint_singularity_with_grading():
    # integrable x^-1/2 singularity; nodes never touch the end
    res = integrate(lambda x: x ** -0.5, 0.0, 1.0, QuadratureSpec().graded(6, 0))
    assert res.value == pytest.approx(2.0, rel=1e-6)


def test_batch_rows_independent():
    res = integrate_batch(lambda rows, t: t ** 2, [0.0, 0.0, 1.0], [1.0, 2.0, 1.0])
    assert np.allclose(res.values, [1 / 3, 8 / 3, 0.0], atol=1e-14)
    assert res.converged.all()
