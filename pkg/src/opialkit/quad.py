"""Composite Gauss-Legendre quadrature with panel doubling.

The interval is cut into ``initial_panels`` equal panels, split further at
registered breakpoints, and optionally graded geometrically toward either
end (ratio ``grade_ratio``, ``grade_lo``/``grade_hi`` levels) to absorb
integrable endpoint singularities.  Each refinement halves the uniform
panels and adds another ``grade_lo``/``grade_hi`` levels of grading, until
two successive totals agree to ``max(abs_tol, rel_tol * |value|)``.

:func:`integrate_batch` integrates many rows at once, each over its own
interval ``[c_j, d_j]``; it is the engine behind :func:`integrate_nested`,
where the inner integral is needed at every outer node.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import EvaluationError

__all__ = [
    "QuadratureSpec",
    "IntegralResult",
    "BatchResult",
    "DEFAULT_SPEC",
    "integrate",
    "integrate_batch",
    "integrate_nested",
]


@dataclass(frozen=True)
class QuadratureSpec:
    base_rule_order: int = 10
    initial_panels: int = 8
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_doublings: int = 10
    breakpoints: tuple = ()
    grade_lo: int = 0
    grade_hi: int = 0
    grade_ratio: float = 0.25

    def __post_init__(self):
        if self.base_rule_order < 2:
            raise ValueError("base_rule_order must be at least 2")
        if self.initial_panels < 1:
            raise ValueError("initial_panels must be positive")
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_doublings < 1:
            raise ValueError("max_doublings must be at least 1")
        if not 0 < self.grade_ratio < 1:
            raise ValueError("grade_ratio must lie in (0, 1)")
        object.__setattr__(self, "breakpoints",
                           tuple(sorted(float(b) for b in self.breakpoints)))

    def tightened(self, factor: float = 10.0) -> "QuadratureSpec":
        return replace(self, rel_tol=self.rel_tol / factor, abs_tol=self.abs_tol / factor)

    def graded(self, lo: int = 6, hi: int = 6) -> "QuadratureSpec":
        return replace(self, grade_lo=lo, grade_hi=hi)

    def with_breakpoints(self, points) -> "QuadratureSpec":
        return replace(self, breakpoints=tuple(points))

    def tolerance(self, value):
        return np.maximum(self.abs_tol, self.rel_tol * np.abs(value))


DEFAULT_SPEC = QuadratureSpec()
#: Relative distance from the far end (d) below which nodes are never placed.
NUDGE = 1e-12
#: Same for the near end (c).  Nodes there are ``c + span * tau`` with
#: ``tau`` exact, so the only limit is the spacing of floats around ``c``;
#: rows get ``max(NUDGE_START, 8 eps |c| / |span|)``.
NUDGE_START = 1e-30
_ULPS_START = 8.0 * np.finfo(float).eps


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    panels_used: int
    converged: bool

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class BatchResult:
    values: np.ndarray
    errors: np.ndarray
    converged: np.ndarray
    panels_used: int


@lru_cache(maxsize=64)
def _gauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return (x + 1.0) / 2.0, w / 2.0


@lru_cache(maxsize=256)
def _reference_edges(panels: int, grade_lo: int, grade_hi: int, ratio: float, level: int):
    # each doubling halves the uniform panels and deepens the grading,
    # so a singular end panel shrinks geometrically, not by halves
    n = panels * 2 ** level
    h = 1.0 / n
    # no panel edge closer to an end than its inward nudge
    cap_lo = int(np.floor(np.log(NUDGE_START / h) / np.log(ratio)))
    cap_hi = int(np.floor(np.log(NUDGE / h) / np.log(ratio)))
    pieces = [np.linspace(0.0, 1.0, n + 1)]
    if grade_lo:
        pieces.append(h * ratio ** np.arange(min(grade_lo * (level + 1), cap_lo), 0, -1))
    if grade_hi:
        pieces.append(1.0 - h * ratio ** np.arange(1, min(grade_hi * (level + 1), cap_hi) + 1))
    edges = np.unique(np.concatenate(pieces))
    edges.setflags(write=False)
    return edges


def _rule(c, d, spec: QuadratureSpec, level: int):
    """Nodes and oriented weights, shape ``(m, N)``, for rows ``[c_j, d_j]``."""
    xi, wq = _gauss(spec.base_rule_order)
    E = _reference_edges(spec.initial_panels, spec.grade_lo, spec.grade_hi,
                         spec.grade_ratio, level)
    m = c.shape[0]
    if spec.breakpoints:
        span = d - c
        safe = np.where(span == 0, 1.0, span)
        tb = (np.asarray(spec.breakpoints)[None, :] - c[:, None]) / safe[:, None]
        tb = np.where(span[:, None] == 0, 0.0, np.clip(tb, 0.0, 1.0))
        edges = np.sort(np.concatenate([np.broadcast_to(E, (m, E.size)), tb], axis=1), axis=1)
    else:
        edges = np.broadcast_to(E, (m, E.size))
    lo, hi = edges[:, :-1], edges[:, 1:]
    width = hi - lo
    tau = lo[:, :, None] + width[:, :, None] * xi[None, None, :]
    w = width[:, :, None] * wq[None, None, :]
    span = (d - c)[:, None]
    floor = np.maximum(NUDGE_START, _ULPS_START * np.abs(c)[:, None]
                       / np.where(span == 0, 1.0, np.abs(span)))
    tau = np.clip(tau.reshape(m, -1), floor, 1.0 - NUDGE)
    w = w.reshape(m, -1)
    return c[:, None] + span * tau, span * w, lo.shape[1]


def integrate_batch(F: Callable, c, d, spec: QuadratureSpec = DEFAULT_SPEC) -> BatchResult:
    """Integrate ``F`` over ``[c_j, d_j]`` for every row ``j``.

    ``F(rows, t)`` receives the indices of the rows still being refined and
    nodes ``t`` of shape ``(len(rows), N)``; it returns values of that shape.
    """
    c = np.atleast_1d(np.asarray(c, dtype=float))
    d = np.atleast_1d(np.asarray(d, dtype=float))
    c, d = np.broadcast_arrays(c, d)
    m = c.shape[0]
    values = np.zeros(m)
    errors = np.zeros(m)
    done = np.zeros(m, dtype=bool)
    active = np.flatnonzero(c != d)
    done[c == d] = True
    prev = None
    panels = 0
    for level in range(spec.max_doublings + 1):
        if active.size == 0:
            break
        t, w, panels = _rule(c[active], d[active], spec, level)
        vals = np.asarray(F(active, t), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise EvaluationError("non-finite integrand value")
        q = np.sum(vals * w, axis=1)
        if prev is not None:
            diff = np.abs(q - prev)
            ok = diff <= spec.tolerance(q)
            values[active] = q
            errors[active] = diff
            done[active[ok]] = True
            keep = ~ok
            active, q = active[keep], q[keep]
        else:
            values[active] = q
        prev = q
    return BatchResult(values, errors, done, panels)


def integrate(f: Callable, lo: float, hi: float, spec: QuadratureSpec = DEFAULT_SPEC) -> IntegralResult:
    """Oriented integral of the vectorised function ``f`` from ``lo`` to ``hi``.

    >>> round(integrate(lambda x: x, 1.0, 0.0).value, 12)
    -0.5
    """
    lo, hi = float(lo), float(hi)
    if not (np.isfinite(lo) and np.isfinite(hi)):
        raise ValueError("integration limits must be finite")
    if lo == hi:
        return IntegralResult(0.0, 0.0, 0, True)
    res = integrate_batch(lambda rows, t: f(t), [lo], [hi], spec)
    return IntegralResult(float(res.values[0]), float(res.errors[0]),
                          res.panels_used, bool(res.converged[0]))


def integrate_nested(inner: Callable, inner_limits: Callable, outer: Callable,
                     lo: float, hi: float, spec: QuadratureSpec = DEFAULT_SPEC,
                     inner_spec: QuadratureSpec | None = None) -> IntegralResult:
    """``int_lo^hi outer(s, int_{c(s)}^{d(s)} inner(s, t) dt) ds``.

    ``inner(s, t)`` gets ``s`` of shape ``(m, 1)`` and ``t`` of shape
    ``(m, N)``; ``inner_limits(s)`` returns the arrays ``(c, d)``;
    ``outer(s, I)`` maps outer nodes and inner values to integrand values.
    Inner integrals are recomputed at every outer node with tolerances ten
    times tighter than ``spec`` unless ``inner_spec`` is given.  The error
    estimate adds the first-order effect of the inner errors on the outer
    sum.
    """
    lo, hi = float(lo), float(hi)
    if lo == hi:
        return IntegralResult(0.0, 0.0, 0, True)
    if inner_spec is None:
        inner_spec = spec.tightened(10.0)
    a = np.array([lo])
    b = np.array([hi])
    prev = None
    value = err = 0.0
    panels = 0
    converged = False
    for level in range(spec.max_doublings + 1):
        s, w, panels = _rule(a, b, spec, level)
        s, w = s[0], w[0]
        c, d = inner_limits(s)
        c = np.broadcast_to(np.asarray(c, dtype=float), s.shape)
        d = np.broadcast_to(np.asarray(d, dtype=float), s.shape)
        res = integrate_batch(lambda rows, t: inner(s[rows][:, None], t), c, d, inner_spec)
        g = np.asarray(outer(s, res.values), dtype=float)
        if not np.all(np.isfinite(g)):
            raise EvaluationError("non-finite outer integrand value")
        perturbed = np.asarray(outer(s, res.values + res.errors), dtype=float)
        prop = float(np.sum(np.abs(w) * np.abs(np.nan_to_num(perturbed - g, nan=0.0))))
        value = float(np.sum(w * g))
        inner_ok = bool(np.all(res.converged))
        if prev is not None:
            err = abs(value - prev) + prop
            if err <= float(spec.tolerance(value)) and inner_ok:
                converged = True
                break
        prev = value
    return IntegralResult(value, err, panels, converged)
