import numpy as np
import pytest
from hypothesis import given, strategies as st

from opialkit import (ExponentTriple, GenerationError, Interval, SpecParseError, classify_regime,
                      kernel_g, parse_basis, validate_family, wronskian)
from opialkit.opial import REGIME_TAGS
from opialkit.testgen import (Instance, SuiteConfig, equality_residual, gen_basis,
                              gen_equality_instance, gen_exponents, gen_h, gen_instance,
                              gen_weights, generate_suite, instance_rng, integrable,
                              kernel_nonnegative, read_manifest, write_manifest)

CFG = SuiteConfig(count=3)


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(count=0)
    with pytest.raises(ValueError):
        SuiteConfig(value_floor=0.0)
    with pytest.raises(ValueError):
        SuiteConfig(basis_pool=("legendre",))


def test_rng_streams_are_keyed():
    a = instance_rng(7, 0, 1).uniform(size=4)
    assert np.array_equal(a, instance_rng(7, 0, 1).uniform(size=4))
    assert not np.array_equal(a, instance_rng(7, 0, 2).uniform(size=4))
    assert not np.array_equal(a, instance_rng(8, 0, 1).uniform(size=4))


@pytest.mark.parametrize("k", range(20))
def test_generated_bases_satisfy_hypothesis(k):
    fam = gen_basis(CFG, instance_rng(11, k))
    assert validate_family(fam).ok
    assert 0 <= fam.n <= CFG.max_order
    assert kernel_nonnegative(fam, CFG.interval)


def test_basis_examples():
    fam = parse_basis("monomials:3", CFG.interval)
    assert min(validate_family(fam).minima) >= 1
    exp = parse_basis("exp-basis:0.5,1.0", CFG.interval)
    x = np.linspace(0, 1, 9)
    assert np.allclose(wronskian(exp, 1, x), 0.5 * np.exp(1.5 * x), rtol=1e-13)
    assert wronskian(parse_basis("custom:const:2", CFG.interval), 0, 0.3) == 2.0


def test_basis_pool_restriction():
    cfg = SuiteConfig(basis_pool=("exp-basis",))
    for k in range(10):
        fam = gen_basis(cfg, instance_rng(3, k))
        assert fam.spec.startswith("exp-basis:")
        lams = [float(v) for v in fam.spec.split(":")[1].split(",")]
        assert lams == sorted(lams) and all(0.1 <= v <= 2.0 for v in lams)


def test_bad_family_exhausts_attempts(monkeypatch):
    from opialkit import testgen, WidderHypothesisError

    def boom(*args, **kw):
        raise WidderHypothesisError("nope")

    monkeypatch.setattr(testgen, "parse_basis", boom)
    with pytest.raises(GenerationError):
        gen_basis(CFG, instance_rng(1, 1))


@pytest.mark.parametrize("reversed_regime", [False, True])
def test_weight_floors(reversed_regime):
    grid = np.linspace(0, 1, 257)
    for k in range(25):
        u, v = gen_weights(CFG, instance_rng(5, k), reversed_regime)
        assert np.min(v(grid)) >= CFG.v_floor - 1e-12
        assert np.min(u(grid)) >= (CFG.u_floor if reversed_regime else 0.0) - 1e-12
        h = gen_h(CFG, instance_rng(6, k))
        assert np.min(h(grid)) >= CFG.value_floor - 1e-12


@pytest.mark.parametrize("tag", REGIME_TAGS)
def test_regime_round_trip(tag):
    rng = instance_rng(99, REGIME_TAGS.index(tag))
    want = "MAIN" if tag == "I" else tag
    for _ in range(1000):
        assert classify_regime(gen_exponents(tag, rng)).tag == want


def test_main_box_margin():
    rng = instance_rng(1)
    for _ in range(200):
        e = gen_exponents("MAIN", rng)
        assert e.r == 2.0 or e.r >= max(1.0, e.alpha) + 0.25


@given(a=st.floats(-3, 3), b=st.floats(-3, 3), r=st.floats(-3, 3), n=st.integers(0, 4))
def test_integrable_rule(a, b, r, n):
    if r == 1 or r == a:
        return
    e = ExponentTriple(a, b, r)
    if integrable(e, n):
        assert n == 0 or r / (r - 1) > 0
        assert b >= 0 or b * (n + 1) >= -0.5


def test_exponents_with_order_are_integrable():
    for tag in ("VI", "VII", "IX"):
        rng = instance_rng(4, REGIME_TAGS.index(tag))
        for _ in range(50):
            assert integrable(gen_exponents(tag, rng, n=1), 1)


def test_monomial_equality_example():
    fam = parse_basis("monomials:1", CFG.interval)
    s = np.linspace(0, 1, 9)
    # y(s) = int_0^s (s - t) dt = s^2 / 2
    from opialkit import builtin_family, represent_from_h
    y = represent_from_h(fam, builtin_family("const:1", CFG.interval), 0.0, use_abs=True)
    assert np.allclose(y(s), s ** 2 / 2, atol=1e-14)
    y3 = represent_from_h(fam, builtin_family("const:3", CFG.interval), 0.0, use_abs=True)
    assert np.allclose(y3(s), 3 * y(s), rtol=1e-14)


@pytest.mark.parametrize("tag", ["MAIN", "III", "V", "VIII"])
def test_equality_instances_pass_grid_check(tag):
    rng = instance_rng(21, REGIME_TAGS.index(tag))
    prob = gen_equality_instance(CFG, tag, rng, "t")
    assert prob.derived
    fam = prob.kernel.family
    assert equality_residual(prob, fam) <= 1e-8
    assert prob.exponents.regime.tag == ("MAIN" if tag == "I" else tag)


def test_instance_line_round_trip(tmp_path):
    insts = generate_suite(CFG, ("MAIN", "VI"))
    assert len(insts) == 6
    for inst in insts:
        assert Instance.from_line(inst.to_line()) == inst
    path = tmp_path / "suite.txt"
    write_manifest(insts, path)
    assert read_manifest(path) == insts


def test_determinism():
    a = [i.to_line() for i in generate_suite(CFG, REGIME_TAGS)]
    b = [i.to_line() for i in generate_suite(CFG, REGIME_TAGS)]
    assert a == b
    c = [i.to_line() for i in generate_suite(SuiteConfig(seed=CFG.seed + 1, count=3), REGIME_TAGS)]
    assert a != c


def test_instance_prefix_stable_under_count():
    # instance i depends on (seed, regime, i) only
    short = generate_suite(SuiteConfig(count=2), ("VII",))
    long = generate_suite(SuiteConfig(count=5), ("VII",))
    assert short == long[:2]


def test_generated_kernels_nonnegative():
    for inst in generate_suite(SuiteConfig(count=4), ("MAIN", "IX")):
        prob = inst.build()
        g = np.linspace(prob.a, prob.x, 17)
        S, T = np.meshgrid(g, g, indexing="ij")
        mask = T <= S
        assert np.min(prob.kernel(S[mask], T[mask])) >= -1e-12


def test_manifest_errors():
    with pytest.raises(SpecParseError):
        Instance.from_line("basis=monomials:1|u=const:1")
    with pytest.raises(SpecParseError):
        Instance.from_line("nonsense")
