import math

import numpy as np
import pytest

from opialkit import (ExponentTriple, Interval, OpialProblem, builtin_family, opial_constant,
                      p_weight, parse_basis, unit_kernel, widder_kernel)
from opialkit.oracle import (oracle_constant, oracle_extreme_integral, oracle_lhs, oracle_nodes,
                             oracle_p_weight, oracle_rhs, trapezoid, trapezoid_nested)
from opialkit.opial import extreme_integral, extreme_roots

UNIT = Interval(0.0, 1.0)


def test_node_count_is_ten_times_engine():
    prob = OpialProblem(unit_kernel(), *(builtin_family("const:1", UNIT),) * 3, 0.0, 1.0,
                        ExponentTriple(1, 1, 2))
    assert oracle_nodes(prob) == 10 * 8 * 10


def test_trapezoid_closed_forms():
    assert trapezoid(np.exp, 0.0, 1.0, 200) == pytest.approx(math.e - 1, rel=1e-12)
    assert trapezoid(lambda s: s ** -0.5, 0.0, 1.0, 800) == pytest.approx(2.0, rel=1e-8)
    assert trapezoid(lambda s: s, 1.0, 0.0, 400) == pytest.approx(-0.5, rel=1e-14)
    kink = trapezoid(lambda s: np.abs(s - 0.3), 0.0, 1.0, 400, breaks=(0.3,))
    assert kink == pytest.approx(0.045 + 0.245, rel=1e-12)


def test_trapezoid_nested_closed_form():
    val = trapezoid_nested(lambda s, t: t, lambda s: (0.0, s), lambda s, I: I, 0.0, 1.0, 200, 200)
    assert val == pytest.approx(1 / 6, rel=1e-12)


def test_oracle_matches_closed_forms():
    one = builtin_family("const:1", UNIT)
    prob = OpialProblem(unit_kernel(), one, one, one, 0.0, 1.0, ExponentTriple(1, 1, 2))
    assert oracle_constant(prob) == pytest.approx(0.5, rel=1e-12)
    assert oracle_lhs(prob) == pytest.approx(0.5, rel=1e-12)
    assert oracle_rhs(prob) == pytest.approx(1.0, rel=1e-12)
    assert oracle_p_weight(prob, 0.4) == pytest.approx(0.4, rel=1e-12)


def test_extreme_roots_found_by_both():
    dom = UNIT
    # K(w) = int v(t) (w - t) dt vanishes at w = 4/9 for v = 1 - t/2
    fam = parse_basis("monomials:1", dom)
    prob = OpialProblem(widder_kernel(fam), builtin_family("poly:0.5,1", dom),
                        builtin_family("poly:1,-0.5", dom), builtin_family("const:1", dom),
                        0.0, 1.0, ExponentTriple(0.8, 1.1, 2.2))
    roots = extreme_roots(prob)
    assert roots == [pytest.approx(4 / 9, abs=1e-14)]
    assert extreme_integral(prob) == pytest.approx(oracle_extreme_integral(prob), rel=1e-6)


@pytest.mark.parametrize("spec, r", [("monomials:2", 1.7), ("exp-basis:0.3,0.9", 3.0)])
def test_engine_and_oracle_agree(spec, r):
    fam = parse_basis(spec, UNIT)
    prob = OpialProblem(widder_kernel(fam), builtin_family("poly:0.1,-0.6,1", UNIT),
                        builtin_family("poly:0.4,0.2", UNIT), builtin_family("cos:2", UNIT),
                        0.0, 0.85, ExponentTriple(0.9, 1.4, r))
    s = np.array([0.2, 0.5, 0.85])
    assert np.allclose(p_weight(prob, s), oracle_p_weight(prob, s), rtol=1e-6)
    assert opial_constant(prob) == pytest.approx(oracle_constant(prob), rel=1e-6)
