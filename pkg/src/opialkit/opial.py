"""Weighted Opial-type inequalities for a kernel-dominated pair ``(y, h)``.

Given ``|y(s)| <= |int_a^s Phi(s, t) |h(t)| dt|`` and weights ``u >= 0``,
``v > 0``, the engine evaluates

    lhs      = | int_a^x u |y|^beta |h|^alpha ds |
    rhs_core = | int_a^x v |h|^r ds |
    P(s)     = | int_a^s v(t)^(-1/(r-1)) Phi(s,t)^(r/(r-1)) dt |
    C(x)     = (alpha/(alpha+beta))^(alpha/r)
               * | int_a^x (u^r v^-alpha)^(1/(r-alpha)) P^(beta(r-1)/(r-alpha)) ds |^((r-alpha)/r)

and checks ``lhs <= C * rhs_core^((alpha+beta)/r)`` (or ``>=`` for the
reversed exponent regimes).  All absolute values around oriented integrals
are kept literally, so ``x < a`` is allowed.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (DegenerateIntegrandError, DomainError, ExponentDegeneracyError,
                     KernelNegativityError, RegimeError, WeightError)
from .funcrep import SmoothFunction
from .quad import (DEFAULT_SPEC, IntegralResult, QuadratureSpec, integrate,
                   integrate_batch, integrate_nested)
from .widder import KernelHandle

__all__ = [
    "UPPER",
    "LOWER",
    "NA",
    "Regime",
    "ExponentTriple",
    "classify_regime",
    "OpialProblem",
    "InequalityReport",
    "p_weight",
    "p_weight_joint_power",
    "opial_constant",
    "lhs_functional",
    "rhs_core",
    "verify_main",
    "verify_r2",
    "extreme_bound",
    "extreme_integral",
    "sup_norm",
    "verify_regime",
    "verify_classical",
]

log = logging.getLogger(__name__)

UPPER = "upper-bound"
LOWER = "lower-bound"
NA = "n/a"

GRADE_LEVELS = 6
SUP_GRID = 1025
CHECK_GRID = 257


@dataclass(frozen=True)
class Regime:
    tag: str
    direction: str


def _regime_conditions(a, b, r):
    return (
        ("I", r > 1 and b > 0 and 0 < a < r),
        ("II", r < a < 0 and b < 0),
        ("III", -a < b < 0 and 0 < a < r < 1),
        ("IV", b > 0 and 0 < r < min(a, 1)),
        ("V", a < 0 < r < 1 and 0 < b < -a),
        ("VI", b < 0 and a < 0 and r > 1),
        ("VII", 1 < r < a and -a < b < 0),
        ("VIII", b > 0 and r < 0 < a),
        ("IX", a < r < 0 and 0 < b < -a),
    )


REGIME_TAGS = ("MAIN", "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX")
FORWARD = frozenset({"MAIN", "I", "II", "III"})


def classify_regime(e) -> Regime:
    """First matching regime: MAIN, then I..IX in order, else UNCLASSIFIED.

    MAIN (``alpha, beta > 0``, ``r > max(1, alpha)``) and I coincide, so I
    is never returned.

    >>> classify_regime(ExponentTriple(-1, -1, 2)).tag
    'VI'
    """
    a, b, r = float(e.alpha), float(e.beta), float(e.r)
    if a > 0 and b > 0 and r > max(1.0, a):
        return Regime("MAIN", UPPER)
    for tag, hit in _regime_conditions(a, b, r):
        if hit:
            return Regime(tag, UPPER if tag in FORWARD else LOWER)
    return Regime("UNCLASSIFIED", NA)


@dataclass(frozen=True)
class ExponentTriple:
    alpha: float
    beta: float
    r: float

    def __post_init__(self):
        for name in ("alpha", "beta", "r"):
            val = float(getattr(self, name))
            if not math.isfinite(val):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, val)

    @property
    def regime(self) -> Regime:
        return classify_regime(self)


@dataclass(frozen=True, eq=False)
class OpialProblem:
    """Everything one inequality instance needs.

    ``y=None`` means ``y`` is derived from the representation
    ``y(s) = int_a^s Phi(s, t) |h(t)| dt`` (the equality case).
    ``value_floor`` is relative: negative powers need ``|h| >= value_floor *
    max|h|`` on the check grid, and ``|y| > 0`` away from the base point.
    """

    kernel: KernelHandle
    u: SmoothFunction
    v: SmoothFunction
    h: SmoothFunction
    a: float
    x: float
    exponents: ExponentTriple
    y: SmoothFunction | None = None
    quad: QuadratureSpec = DEFAULT_SPEC
    v_floor: float = 1e-12
    value_floor: float = 1e-6
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "x", float(self.x))
        funcs = [self.u, self.v, self.h] + ([self.y] if self.y is not None else [])
        for f in funcs:
            if not f.domain.contains([self.a, self.x]):
                raise DomainError(f"a={self.a}, x={self.x} not inside the domain of {f!r}")
        if self.a != self.x:
            grid = self.check_grid()
            if np.min(self.u(grid)) < -1e-14:
                raise WeightError("weight u must be nonnegative")
            if np.min(self.v(grid)) < self.v_floor:
                raise WeightError(f"weight v drops below v_floor={self.v_floor}")

    @property
    def derived(self) -> bool:
        return self.y is None

    def check_grid(self, n: int = CHECK_GRID):
        return np.linspace(self.a, self.x, n)

    def breakpoints(self, *funcs):
        lo, hi = sorted((self.a, self.x))
        pts = {b for f in funcs if f is not None for b in f.breakpoints}
        return tuple(sorted(b for b in pts if lo < b < hi))

    def y_values(self, s):
        """``y`` at the points ``s``, by quadrature when it is derived."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        if not self.derived:
            return self.y(s)
        res = integrate_batch(
            lambda rows, t: self.kernel(s[rows][:, None], t) * np.abs(self.h(t)),
            np.full_like(s, self.a), s, self._inner_spec_y(),
        )
        return res.values

    def _inner_spec_y(self):
        return self.quad.tightened(10.0).with_breakpoints(self.breakpoints(self.h))


@dataclass
class InequalityReport:
    theorem: str
    regime: Regime
    direction: str
    lhs: float
    constant: float
    rhs_core: float
    bound: float
    ratio: float
    satisfied: bool
    quad_error: float
    as_printed_flag: bool = False
    converged: bool = True
    metadata: dict = field(default_factory=dict)

    FIELDS = ("theorem", "regime", "direction", "lhs", "constant", "rhs_core", "bound",
              "ratio", "satisfied", "quad_error", "as_printed_flag")

    @property
    def tol_slack(self) -> float:
        return 10.0 * self.quad_error + 1e-9 * max(abs(self.lhs), abs(self.bound))

    def to_dict(self) -> dict:
        out = {}
        for name in self.FIELDS:
            val = getattr(self, name)
            if name == "regime":
                val = val.tag
            if isinstance(val, float) and not math.isfinite(val):
                val = None
            out[name] = val
        return out


# ----------------------------------------------------------------------------
# helpers

def _check_exponents(e: ExponentTriple):
    if e.alpha + e.beta == 0:
        raise ExponentDegeneracyError("alpha + beta = 0")
    if abs(e.r - e.alpha) < 1e-12:
        raise ExponentDegeneracyError("r = alpha")
    if e.r == 1 or e.r == 0:
        raise ExponentDegeneracyError(f"r = {e.r} makes r/(r-1) or the powers undefined")


def _nonneg_kernel(phi, tol=1e-12):
    phi = np.asarray(phi, dtype=float)
    scale = np.max(np.abs(phi)) if phi.size else 0.0
    if np.any(phi < -tol * max(scale, 1.0)):
        raise KernelNegativityError("kernel takes negative values on the integration region")
    return np.maximum(phi, 0.0)


def _power(base, p, what):
    # base >= 0; 0 to a negative power is a genuine singularity
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.power(base, p)
    if not np.all(np.isfinite(out)):
        raise DegenerateIntegrandError(f"{what} raised to {p:g} is singular")
    return out


def _floor_h(prob: OpialProblem, what: str):
    vals = np.abs(prob.h(prob.check_grid()))
    top = np.max(vals)
    if top == 0 or np.min(vals) < prob.value_floor * top:
        raise DegenerateIntegrandError(f"|h| below value floor in {what}")


def _floor_y(prob: OpialProblem):
    grid = prob.check_grid()[1:]
    if np.any(np.abs(prob.y_values(grid)) <= 0):
        raise DegenerateIntegrandError("y vanishes away from the base point")


def _inner_p_spec(prob: OpialProblem):
    spec = prob.quad.tightened(10.0).with_breakpoints(prob.breakpoints(prob.v))
    if prob.kernel.diagonal_order > 0:
        spec = spec.graded(0, GRADE_LEVELS)
    return spec


def _p_integrand(prob: OpialProblem, joint: bool = False):
    r = prob.exponents.r
    q = r / (r - 1.0)
    wexp = -1.0 / (r - 1.0)

    def inner(s, t):
        phi = _nonneg_kernel(prob.kernel(s, t))
        vt = prob.v(t)
        if joint:
            return _power(_power(vt, wexp, "v") * phi, q, "v*Phi")
        return _power(vt, wexp, "v") * _power(phi, q, "Phi")

    return inner


def _weight_u(prob: OpialProblem, s):
    # expanded squares can dip a few ulps below zero at their roots
    return np.maximum(prob.u(s), 0.0)


def _full(value, res: IntegralResult, full_output):
    return (value, res) if full_output else value


# ----------------------------------------------------------------------------
# functionals

def p_weight(prob: OpialProblem, s, full_output: bool = False, joint_power: bool = False):
    """``P(s) = |int_a^s v(t)^(-1/(r-1)) Phi(s,t)^(r/(r-1)) dt|`` (vectorised).

    With ``joint_power=True`` the power ``r/(r-1)`` is applied to the
    product ``v^(-1/(r-1)) Phi`` instead of ``Phi`` alone.
    """
    if prob.exponents.r == 1:
        raise ExponentDegeneracyError("P needs r != 1")
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    inner = _p_integrand(prob, joint_power)
    res = integrate_batch(lambda rows, t: inner(s_arr[rows][:, None], t),
                          np.full_like(s_arr, prob.a), s_arr, _inner_p_spec(prob))
    vals = np.abs(res.values)
    out = float(vals[0]) if np.ndim(s) == 0 else vals
    return (out, res) if full_output else out


def p_weight_joint_power(prob: OpialProblem, s):
    return p_weight(prob, s, joint_power=True)


def _constant_integral(prob: OpialProblem, joint_power: bool = False) -> IntegralResult:
    e = prob.exponents
    a, b, r = e.alpha, e.beta, e.r
    uexp = r / (r - a)
    vexp = -a / (r - a)
    pexp = b * (r - 1.0) / (r - a)
    inner = _p_integrand(prob, joint_power)

    def outer(s, P):
        w = _power(_weight_u(prob, s), uexp, "u") * _power(prob.v(s), vexp, "v")
        return w * _power(np.abs(P), pexp, "P")

    spec = prob.quad.graded(GRADE_LEVELS, 0).with_breakpoints(prob.breakpoints(prob.u, prob.v))
    return integrate_nested(inner, lambda s: (np.full_like(s, prob.a), s), outer,
                            prob.a, prob.x, spec, _inner_p_spec(prob))


def _prefactor(a, b, r):
    base = a / (a + b)
    if base < 0:
        raise DomainError("alpha/(alpha+beta) < 0 cannot be raised to a real power")
    return base ** (a / r)


def _outer_power(integral: IntegralResult, p):
    I = abs(integral.value)
    if I == 0:
        if p > 0:
            return 0.0, 0.0
        return math.inf, math.inf
    val = I ** p
    return val, abs(val * p * integral.error_estimate / I)


def opial_constant(prob: OpialProblem, full_output: bool = False, joint_power: bool = False):
    """``C(x)``; with ``full_output`` also the :class:`IntegralResult` of
    its outer integral, rescaled so that ``error_estimate`` bounds ``C``."""
    e = prob.exponents
    _check_exponents(e)
    pre = _prefactor(e.alpha, e.beta, e.r)
    res = _constant_integral(prob, joint_power)
    val, err = _outer_power(res, (e.r - e.alpha) / e.r)
    C = pre * val
    out = IntegralResult(C, pre * err, res.panels_used, res.converged)
    return (C, out) if full_output else C


def lhs_functional(prob: OpialProblem, full_output: bool = False):
    """``|int_a^x u |y|^beta |h|^alpha ds|``."""
    e = prob.exponents
    if e.beta < 0:
        _floor_y(prob)
    if e.alpha < 0:
        _floor_h(prob, "lhs")
    a_, b_ = e.alpha, e.beta

    def outer(s, Y):
        return prob.u(s) * _power(np.abs(Y), b_, "|y|") * _power(np.abs(prob.h(s)), a_, "|h|")

    bps = prob.breakpoints(prob.u, prob.h, prob.y)
    spec = prob.quad.graded(GRADE_LEVELS, 0).with_breakpoints(bps)
    if prob.derived:
        res = integrate_nested(
            lambda s, t: prob.kernel(s, t) * np.abs(prob.h(t)),
            lambda s: (np.full_like(s, prob.a), s),
            outer, prob.a, prob.x, spec, prob._inner_spec_y(),
        )
    else:
        res = integrate(lambda s: outer(s, prob.y(s)), prob.a, prob.x, spec)
    return _full(abs(res.value), res, full_output)


def rhs_core(prob: OpialProblem, full_output: bool = False):
    """``|int_a^x v |h|^r ds|``."""
    r = prob.exponents.r
    if r < 0:
        _floor_h(prob, "rhs")
    spec = prob.quad.with_breakpoints(prob.breakpoints(prob.v, prob.h))
    res = integrate(lambda s: prob.v(s) * _power(np.abs(prob.h(s)), r, "|h|"),
                    prob.a, prob.x, spec)
    return _full(abs(res.value), res, full_output)


# ----------------------------------------------------------------------------
# reports

def _bound_error(C, dC, R, dR, p):
    if R == 0:
        return abs(C) * dR ** p if p > 0 else math.inf
    Rp = R ** p
    return abs(Rp) * dC + abs(C) * abs(p) * abs(R) ** (p - 1) * dR


def _report(theorem, regime, direction, lhs, dl, C, dC, R, dR, p, converged,
            as_printed=False, metadata=None, bound=None, dbound=None):
    if bound is None:
        bound = C * R ** p if not (C == 0 and R ** p == math.inf) else 0.0
        dbound = _bound_error(C, dC, R, dR, p)
    if direction == UPPER:
        num, den = lhs, bound
    else:
        num, den = bound, lhs
    if den == 0:
        ratio = math.nan if num == 0 else math.inf
    else:
        ratio = num / den
    qerr = float(dl + dbound) if math.isfinite(dbound) else math.inf
    rep = InequalityReport(theorem, regime, direction, float(lhs), float(C), float(R),
                           float(bound), float(ratio), False, qerr, as_printed,
                           bool(converged), dict(metadata or {}))
    slack = rep.tol_slack
    if direction == UPPER:
        rep.satisfied = bool(lhs - bound <= slack)
    else:
        rep.satisfied = bool(bound - lhs <= slack)
    return rep


def _direction(regime: Regime, override):
    if override is None:
        return regime.direction
    if override not in (UPPER, LOWER):
        raise ValueError(f"direction must be {UPPER!r} or {LOWER!r}")
    return override


def verify_main(prob: OpialProblem, direction: str | None = None) -> InequalityReport:
    """Forward inequality for ``alpha, beta > 0``, ``r > max(1, alpha)``."""
    e = prob.exponents
    regime = classify_regime(e)
    if regime.tag != "MAIN":
        raise RegimeError(f"exponents {e} are in regime {regime.tag}, not MAIN")
    lhs, rl = lhs_functional(prob, True)
    C, rc = opial_constant(prob, True)
    R, rr = rhs_core(prob, True)
    return _report("main", regime, _direction(regime, direction), lhs, rl.error_estimate,
                   C, rc.error_estimate, R, rr.error_estimate, (e.alpha + e.beta) / e.r,
                   rl.converged and rc.converged and rr.converged)


def verify_r2(prob: OpialProblem, direction: str | None = None) -> InequalityReport:
    """The ``r = 2`` inequality through its own closed-form constant.

    Uses ``P2(s) = |int_a^s Phi(s,t)^2 / v(t) dt|`` and
    ``C2 = (alpha/(alpha+beta))^(alpha/2) |int (u^2 v^-alpha)^(1/(2-alpha))
    P2^(beta/(2-alpha))|^((2-alpha)/2)``; independent of :func:`opial_constant`.
    """
    e = prob.exponents
    if e.r != 2.0:
        raise RegimeError(f"verify_r2 needs r = 2, got {e.r}")
    a, b = e.alpha, e.beta
    if not (0 < a < 2 and b > 0):
        raise RegimeError("verify_r2 needs 0 < alpha < 2 and beta > 0")
    regime = classify_regime(e)

    def inner(s, t):
        phi = _nonneg_kernel(prob.kernel(s, t))
        return phi * phi / prob.v(t)

    def outer(s, P2):
        w = _power(_weight_u(prob, s) ** 2 * _power(prob.v(s), -a, "v"), 1.0 / (2.0 - a), "u^2 v^-a")
        return w * _power(np.abs(P2), b / (2.0 - a), "P2")

    spec = prob.quad.graded(GRADE_LEVELS, 0).with_breakpoints(prob.breakpoints(prob.u, prob.v))
    res = integrate_nested(inner, lambda s: (np.full_like(s, prob.a), s), outer,
                           prob.a, prob.x, spec, _inner_p_spec(prob))
    val, err = _outer_power(res, (2.0 - a) / 2.0)
    pre = (a / (a + b)) ** (a / 2.0)
    C, dC = pre * val, pre * err
    lhs, rl = lhs_functional(prob, True)
    R, rr = rhs_core(prob, True)
    return _report("r2", regime, _direction(regime, direction), lhs, rl.error_estimate,
                   C, dC, R, rr.error_estimate, (a + b) / 2.0,
                   rl.converged and res.converged and rr.converged)


def sup_norm(f: SmoothFunction, lo: float, hi: float, n: int = SUP_GRID) -> float:
    """Grid maximum of ``|f|``; approximate from below."""
    return float(np.max(np.abs(f(np.linspace(lo, hi, n)))))


def _extreme_inner(prob: OpialProblem):
    return lambda w, t: prob.v(t) * prob.kernel(w, t)


def extreme_roots(prob: OpialProblem, n: int = 65):
    """Sign changes of ``w -> int_a^x v(t) Phi(w,t) dt`` inside ``(a, x)``."""
    from scipy.optimize import brentq

    inner = _extreme_inner(prob)
    spec = prob.quad.tightened(10.0).with_breakpoints(prob.breakpoints(prob.v))

    def K(w):
        w = np.atleast_1d(np.asarray(w, dtype=float))
        res = integrate_batch(lambda rows, t: inner(w[rows][:, None], t),
                              np.full_like(w, prob.a), np.full_like(w, prob.x), spec)
        return res.values

    grid = np.linspace(prob.a, prob.x, n)
    vals = K(grid)
    sgn = np.sign(vals)
    roots = [float(w) for w in grid[1:-1][sgn[1:-1] == 0]]
    for k in np.flatnonzero(sgn[:-1] * sgn[1:] < 0):
        roots.append(brentq(lambda w: float(K(w)[0]), grid[k], grid[k + 1],
                            xtol=1e-15, rtol=4 * np.finfo(float).eps))
    return sorted(roots, reverse=prob.x < prob.a)


def extreme_integral(prob: OpialProblem, full_output: bool = False):
    """``int_a^x u(w) |int_a^x v(t) Phi(w,t) dt|^((r-alpha)/r) dw``.

    The inner integral runs over the whole of ``[a, x]`` for every ``w`` and
    the kernel is used with its formula values for ``t > w``.  The outer
    integral is split at sign changes of the inner one, where the power
    leaves a kink, and graded toward them.
    """
    e = prob.exponents
    p = (e.r - e.alpha) / e.r

    def outer(w, K):
        return prob.u(w) * _power(np.abs(K), p, "inner extreme integral")

    inner_spec = prob.quad.tightened(10.0).with_breakpoints(prob.breakpoints(prob.v))
    pts = [prob.a] + extreme_roots(prob) + [prob.x]
    value = err = 0.0
    panels = 0
    converged = True
    for lo, hi in zip(pts[:-1], pts[1:]):
        graded = (GRADE_LEVELS if lo != prob.a else 0, GRADE_LEVELS if hi != prob.x else 0)
        spec = prob.quad.graded(*graded).with_breakpoints(
            b for b in prob.breakpoints(prob.u) if min(lo, hi) < b < max(lo, hi))
        res = integrate_nested(
            _extreme_inner(prob),
            lambda w: (np.full_like(w, prob.a), np.full_like(w, prob.x)),
            outer, lo, hi, spec, inner_spec,
        )
        value += res.value
        err += res.error_estimate
        panels += res.panels_used
        converged = converged and res.converged
    res = IntegralResult(value, err, panels, converged)
    return _full(abs(value), res, full_output)


def extreme_bound(prob: OpialProblem, direction: str | None = None) -> InequalityReport:
    """Sup-norm bound ``E * ||v||^beta * ||h||^(alpha+beta)``, evaluated as
    written (``E`` from :func:`extreme_integral`).

    ``constant`` holds ``E * ||v||^beta`` and ``rhs_core`` holds ``||h||``,
    so ``bound = constant * rhs_core**(alpha+beta)``.
    """
    e = prob.exponents
    if not (e.alpha > 0 and e.beta > 0 and e.r > max(1.0, e.alpha)):
        raise RegimeError("extreme bound needs alpha, beta > 0 and r > max(1, alpha)")
    regime = classify_regime(e)
    lo, hi = sorted((prob.a, prob.x))
    E, re = extreme_integral(prob, True)
    sv = sup_norm(prob.v, lo, hi)
    sh = sup_norm(prob.h, lo, hi)
    lhs, rl = lhs_functional(prob, True)
    C = E * sv ** e.beta
    dC = re.error_estimate * sv ** e.beta
    p = e.alpha + e.beta
    meta = {"sup_v": sv, "sup_h": sh, "extreme_integral": E,
            "v_scaling_exponent": (e.r - e.alpha) / e.r + e.beta}
    return _report("extreme", regime, _direction(regime, direction), lhs, rl.error_estimate,
                   C, dC, sh, 0.0, p, rl.converged and re.converged,
                   as_printed=True, metadata=meta)


def verify_regime(prob: OpialProblem, direction: str | None = None) -> InequalityReport:
    """Direction-aware check for regimes I..IX (equality case only).

    Regimes I-III (and MAIN, which equals I) give an upper bound, IV-IX a
    lower bound, with the general constant :func:`opial_constant`.
    """
    if not prob.derived:
        raise RegimeError("regime verification needs y derived from the representation")
    e = prob.exponents
    regime = classify_regime(e)
    if regime.tag == "UNCLASSIFIED":
        raise RegimeError(f"exponents {e} match none of the regimes")
    if e.alpha < 0 or e.r < 0:
        _floor_h(prob, "regime check")
    lhs, rl = lhs_functional(prob, True)
    C, rc = opial_constant(prob, True)
    R, rr = rhs_core(prob, True)
    return _report("regime", regime, _direction(regime, direction), lhs, rl.error_estimate,
                   C, rc.error_estimate, R, rr.error_estimate, (e.alpha + e.beta) / e.r,
                   rl.converged and rc.converged and rr.converged)


def verify_classical(f: SmoothFunction, a: float | None = None,
                     quad: QuadratureSpec = DEFAULT_SPEC, direction: str | None = None) -> InequalityReport:
    """``int_0^a |f f'| <= (a/4) int_0^a f'^2`` for ``f(0) = f(a) = 0``."""
    a = f.domain.hi if a is None else float(a)
    ends = np.abs(f(np.array([0.0, a])))
    if np.max(ends) > 1e-12 * (1 + sup_norm(f, 0.0, a)):
        raise DomainError("the classical inequality needs f(0) = f(a) = 0")
    spec = quad.with_breakpoints(b for b in f.breakpoints if 0 < b < a)
    rl = integrate(lambda t: np.abs(f(t) * f(t, 1)), 0.0, a, spec)
    rr = integrate(lambda t: f(t, 1) ** 2, 0.0, a, spec)
    regime = classify_regime(ExponentTriple(1.0, 1.0, 2.0))
    return _report("classical", regime, _direction(regime, direction), abs(rl.value),
                   rl.error_estimate, a / 4.0, 0.0, abs(rr.value), rr.error_estimate, 1.0,
                   rl.converged and rr.converged)
