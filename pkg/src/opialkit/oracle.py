"""Brute-force trapezoid oracles for the inequality functionals.

These re-derive every integrand from the problem data and integrate with a
composite trapezoid rule in the variable ``tau`` of the substitution

    s = lo + (hi - lo) * psi(tau),   psi = regularized incomplete beta I_tau(6, 6),

whose derivative ``tau^5 (1 - tau)^5 / B(6, 6)`` clusters nodes at both
ends.  An endpoint power ``s^p`` becomes ``tau^(6p + 5)``, so for the
powers the generator allows (``p >= -1/2``) the rule still converges like
``h^3``.  No code is shared with the Gauss-Legendre engine.
"""

from __future__ import annotations

import numpy as np
from scipy.special import beta as beta_fn, betainc

from .opial import OpialProblem, sup_norm

__all__ = [
    "oracle_nodes",
    "trapezoid",
    "trapezoid_nested",
    "oracle_p_weight",
    "oracle_constant",
    "oracle_lhs",
    "oracle_rhs",
    "oracle_extreme_integral",
    "oracle_extreme_bound",
]

#: Oracle resolution relative to the engine's initial panel count.
RESOLUTION_FACTOR = 10
_CHUNK = 200_000


def oracle_nodes(prob: OpialProblem) -> int:
    """Trapezoid intervals per dimension: ten per initial engine node."""
    q = prob.quad
    return RESOLUTION_FACTOR * q.initial_panels * q.base_rule_order


_M = 6


def _psi(tau):
    return betainc(_M, _M, tau)


def _dpsi(tau):
    return (tau * (1.0 - tau)) ** (_M - 1) / beta_fn(_M, _M)


def _reference(n):
    tau = np.arange(1, n) / n  # end weights vanish
    return _psi(tau), _dpsi(tau) / n


def _pieces(lo, hi, breaks):
    pts = [lo] + [b for b in sorted(breaks) if min(lo, hi) < b < max(lo, hi)] + [hi]
    if hi < lo:
        pts = [lo] + sorted((b for b in breaks if hi < b < lo), reverse=True) + [hi]
    return list(zip(pts[:-1], pts[1:]))


def _nodes(lo, hi, n, breaks=()):
    p, w = _reference(n)
    xs, ws = [], []
    for a, b in _pieces(lo, hi, breaks):
        xs.append(a + (b - a) * p)
        ws.append((b - a) * w)
    return np.concatenate(xs), np.concatenate(ws)


def trapezoid(f, lo, hi, n, breaks=()):
    """Transformed trapezoid estimate of ``int_lo^hi f``."""
    if lo == hi:
        return 0.0
    x, w = _nodes(float(lo), float(hi), n, breaks)
    return float(np.sum(w * f(x)))


def trapezoid_nested(inner, limits, outer, lo, hi, n_outer, n_inner, inner_breaks=(),
                     outer_breaks=()):
    """``int outer(s, int_{c(s)}^{d(s)} inner(s, t) dt) ds`` by nested trapezoids."""
    if lo == hi:
        return 0.0
    s, ws = _nodes(float(lo), float(hi), n_outer, outer_breaks)
    c, d = limits(s)
    c = np.broadcast_to(np.asarray(c, float), s.shape)
    d = np.broadcast_to(np.asarray(d, float), s.shape)
    vals = np.empty_like(s)
    p, w = _reference(n_inner)
    rows = max(1, _CHUNK // p.size)
    for start in range(0, s.size, rows):
        sl = slice(start, start + rows)
        if inner_breaks:
            out = []
            for j in range(s[sl].size):
                sj = s[sl][j]
                t, wt = _nodes(c[sl][j], d[sl][j], n_inner, inner_breaks)
                out.append(np.sum(wt * inner(np.array([[sj]]), t[None, :])[0]))
            vals[sl] = out
            continue
        span = (d[sl] - c[sl])[:, None]
        t = c[sl][:, None] + span * p[None, :]
        vals[sl] = np.sum(inner(s[sl][:, None], t) * span * w[None, :], axis=1)
    return float(np.sum(ws * outer(s, vals)))


# ----------------------------------------------------------------------------

def _pos(x, p):
    return np.abs(x) ** p


def oracle_p_weight(prob: OpialProblem, s, n: int | None = None):
    n = n or oracle_nodes(prob)
    r = prob.exponents.r
    out = []
    for sj in np.atleast_1d(s):
        val = trapezoid(
            lambda t: prob.v(t) ** (-1.0 / (r - 1.0))
            * _pos(prob.kernel(np.full_like(t, sj), t), r / (r - 1.0)),
            prob.a, sj, n)
        out.append(abs(val))
    return np.array(out) if np.ndim(s) else out[0]


def _p_rows(prob):
    r = prob.exponents.r

    def inner(s, t):
        return prob.v(t) ** (-1.0 / (r - 1.0)) * _pos(prob.kernel(s, t), r / (r - 1.0))

    return inner


def oracle_constant(prob: OpialProblem, n: int | None = None):
    n = n or oracle_nodes(prob)
    a, b, r = prob.exponents.alpha, prob.exponents.beta, prob.exponents.r

    def outer(s, P):
        weight = (np.maximum(prob.u(s), 0.0) ** r * prob.v(s) ** (-a)) ** (1.0 / (r - a))
        return weight * _pos(P, b * (r - 1.0) / (r - a))

    I = trapezoid_nested(_p_rows(prob), lambda s: (prob.a, s), outer, prob.a, prob.x, n, n)
    return (a / (a + b)) ** (a / r) * abs(I) ** ((r - a) / r)


def oracle_lhs(prob: OpialProblem, n: int | None = None):
    n = n or oracle_nodes(prob)
    a, b = prob.exponents.alpha, prob.exponents.beta

    def outer(s, Y):
        return prob.u(s) * _pos(Y, b) * _pos(prob.h(s), a)

    if prob.derived:
        val = trapezoid_nested(lambda s, t: prob.kernel(s, t) * np.abs(prob.h(t)),
                               lambda s: (prob.a, s), outer, prob.a, prob.x, n, n,
                               inner_breaks=prob.breakpoints(prob.h))
    else:
        val = trapezoid(lambda s: outer(s, prob.y(s)), prob.a, prob.x, n,
                        prob.breakpoints(prob.h, prob.y, prob.u))
    return abs(val)


def oracle_rhs(prob: OpialProblem, n: int | None = None):
    n = n or oracle_nodes(prob)
    r = prob.exponents.r
    return abs(trapezoid(lambda s: prob.v(s) * _pos(prob.h(s), r), prob.a, prob.x, n,
                         prob.breakpoints(prob.h, prob.v)))


def _sign_changes(g, lo, hi, n=65):
    from scipy.optimize import brentq

    grid = np.linspace(lo, hi, n)
    vals = np.array([g(w) for w in grid])
    out = []
    for k in range(n - 1):
        if vals[k] == 0 and k > 0:
            out.append(grid[k])
        elif vals[k] * vals[k + 1] < 0:
            out.append(brentq(g, grid[k], grid[k + 1], xtol=1e-15))
    return out


def oracle_extreme_integral(prob: OpialProblem, n: int | None = None):
    n = n or oracle_nodes(prob)
    a, r = prob.exponents.alpha, prob.exponents.r

    def K(w):
        return trapezoid(lambda t: prob.v(t) * prob.kernel(np.full_like(t, w), t),
                         prob.a, prob.x, n)

    roots = _sign_changes(K, prob.a, prob.x)
    val = trapezoid_nested(lambda w, t: prob.v(t) * prob.kernel(w, t),
                           lambda w: (prob.a, prob.x),
                           lambda w, K: prob.u(w) * _pos(K, (r - a) / r),
                           prob.a, prob.x, n, n, outer_breaks=roots)
    return abs(val)


def oracle_extreme_bound(prob: OpialProblem, n: int | None = None):
    """Right side of the sup-norm bound, sup norms on a 1025-point grid."""
    e = prob.exponents
    lo, hi = sorted((prob.a, prob.x))
    return (oracle_extreme_integral(prob, n) * sup_norm(prob.v, lo, hi) ** e.beta
            * sup_norm(prob.h, lo, hi) ** (e.alpha + e.beta))
