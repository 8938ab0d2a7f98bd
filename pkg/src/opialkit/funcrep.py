"""Scalar functions on an interval together with their derivatives.

A :class:`SmoothFunction` wraps a vectorised evaluator ``evaluator(k, x)``
returning the ``k``-th derivative at the points ``x``.  Built-in families
(constants, polynomials, exponentials, sines, cosines and the tent) carry
exact derivatives of every order; arbitrary callables fall back to
Richardson-extrapolated central differences through
:func:`numeric_derivative`.

Function spec grammar accepted by :func:`builtin_family`::

    const:<c>            constant c
    poly:<c0>,<c1>,...   c0 + c1 x + c2 x^2 + ...
    exp:<lam>            exp(lam x)
    sin:<w>, cos:<w>     sin(w x), cos(w x)
    tent:<a>             piecewise-linear tent on [0, a], peak a/2 at x = a/2
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DomainError, EvaluationError, SpecParseError

__all__ = [
    "Interval",
    "SmoothFunction",
    "EXACT",
    "FALLBACK",
    "FD_MAX_ORDER",
    "builtin_family",
    "from_callable",
    "linear_combination",
    "numeric_derivative",
    "default_step",
    "check_continuity",
]

EXACT = "exact-derivatives"
FALLBACK = "finite-difference-fallback"

#: Orders above this are too noisy for finite differences.
FD_MAX_ORDER = 6
#: Stand-in for "any order" on closed-form families.
EXACT_MAX_ORDER = 64

Evaluator = Callable[[int, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Interval:
    """Closed finite interval ``[lo, hi]`` with ``lo < hi``."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError(f"interval ends must be finite, got [{lo}, {hi}]")
        if not lo < hi:
            raise DomainError(f"interval needs lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def span(self) -> float:
        return self.hi - self.lo

    def contains(self, x, slack: float = 1e-12) -> bool:
        tol = slack * self.span
        x = np.asarray(x, dtype=float)
        return bool(np.all((x >= self.lo - tol) & (x <= self.hi + tol)))

    def grid(self, n: int = 257) -> np.ndarray:
        return np.linspace(self.lo, self.hi, n)


@dataclass(frozen=True, eq=False)
class SmoothFunction:
    """A scalar function on ``domain`` with derivatives up to ``max_order``.

    Orders ``<= exact_orders`` are served by ``evaluator``; higher orders (up
    to ``max_order``) are estimated with :func:`numeric_derivative`.  ``spec``
    is the canonical text form when the function came from the spec grammar,
    and ``breakpoints`` lists interior points where a derivative jumps.
    """

    domain: Interval
    max_order: int
    evaluator: Evaluator
    kind: str = EXACT
    exact_orders: int | None = None
    spec: str | None = None
    breakpoints: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in (EXACT, FALLBACK):
            raise ValueError(f"unknown function kind {self.kind!r}")
        if self.max_order < 0:
            raise ValueError("max_order must be nonnegative")
        if self.exact_orders is None:
            object.__setattr__(
                self, "exact_orders", self.max_order if self.kind == EXACT else 0
            )

    def __call__(self, x, order: int = 0):
        """Evaluate the ``order``-th derivative at ``x`` (scalar or array)."""
        if order < 0 or order > self.max_order:
            raise DomainError(
                f"derivative order {order} exceeds max_order {self.max_order}"
            )
        xa = np.asarray(x, dtype=float)
        if not self.domain.contains(xa):
            raise DomainError(
                f"evaluation point outside [{self.domain.lo}, {self.domain.hi}]"
            )
        if order <= self.exact_orders:
            out = np.asarray(self.evaluator(order, xa), dtype=float)
            if out.shape != xa.shape:
                out = np.broadcast_to(out, xa.shape).copy()
        else:
            flat = xa.reshape(-1)
            out = np.array(
                [numeric_derivative(self, order, xi)[0] for xi in flat]
            ).reshape(xa.shape)
        if not np.all(np.isfinite(out)):
            raise EvaluationError(
                f"non-finite value of {self.spec or 'function'} (order {order})"
            )
        return float(out) if out.ndim == 0 else out

    def __repr__(self):
        label = self.spec if self.spec is not None else "<callable>"
        return f"SmoothFunction({label}, [{self.domain.lo}, {self.domain.hi}])"


# ----------------------------------------------------------------------------
# finite differences

def default_step(k: int, x: float) -> float:
    """Base step for a ``k``-th derivative stencil around ``x``.

    Balances the O(h^6) truncation left after two Richardson levels against
    round-off amplified by the finest (h/4) stencil.
    """
    eps = np.finfo(float).eps
    return max(1.0, abs(x)) * (eps * 8.0 ** k) ** (1.0 / (k + 6))


def _stencil_weights(offsets: np.ndarray, k: int) -> np.ndarray:
    # Taylor-moment conditions sum_j w_j o_j^m / m! = [m == k]
    m = np.arange(len(offsets))
    A = offsets[None, :] ** m[:, None] / np.array(
        [math.factorial(int(i)) for i in m]
    )[:, None]
    rhs = np.zeros(len(offsets))
    rhs[k] = 1.0
    return np.linalg.solve(A, rhs)


def numeric_derivative(f: SmoothFunction, k: int, x: float, h0: float | None = None):
    """Estimate ``f^(k)(x)`` by finite differences with Richardson extrapolation.

    Uses a central stencil when it fits inside ``f.domain`` and a one-sided
    stencil with one extra point otherwise.  Three step sizes ``h0, h0/2,
    h0/4`` feed two levels of Richardson extrapolation.

    Returns
    -------
    value : float
    error : float
        Difference of the last two extrapolants.
    """
    if k < 0 or k > FD_MAX_ORDER:
        raise DomainError(f"finite differences support orders 0..{FD_MAX_ORDER}")
    x = float(x)
    dom = f.domain
    if not dom.contains(x):
        raise DomainError(f"x={x} outside [{dom.lo}, {dom.hi}]")
    if k == 0:
        return float(f(x)), 0.0
    h = default_step(k, x) if h0 is None else float(h0)
    if not h > 0:
        raise DomainError("step must be positive")

    central = np.arange(k + 1) - k / 2.0
    if x + central[0] * h >= dom.lo and x + central[-1] * h <= dom.hi:
        offsets, powers = central, (2, 4)
    elif x + (k + 1) * h <= dom.hi and x >= dom.lo:
        offsets, powers = np.arange(k + 2, dtype=float), (2, 3)
    elif x - (k + 1) * h >= dom.lo and x <= dom.hi:
        offsets, powers = -np.arange(k + 2, dtype=float)[::-1], (2, 3)
    else:
        raise DomainError(
            f"order-{k} stencil with step {h:g} does not fit in "
            f"[{dom.lo}, {dom.hi}] around x={x}"
        )
    w = _stencil_weights(offsets, k)

    steps = h / np.array([1.0, 2.0, 4.0])
    pts = np.clip(x + steps[:, None] * offsets[None, :], dom.lo, dom.hi)
    vals = np.asarray(f(pts, 0), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise EvaluationError("non-finite function value inside the stencil")
    D = (vals @ w) / steps ** k

    p1, p2 = powers
    r1a = (2 ** p1 * D[1] - D[0]) / (2 ** p1 - 1)
    r1b = (2 ** p1 * D[2] - D[1]) / (2 ** p1 - 1)
    r2 = (2 ** p2 * r1b - r1a) / (2 ** p2 - 1)
    if not math.isfinite(r2):
        raise EvaluationError("non-finite finite-difference estimate")
    return float(r2), float(abs(r2 - r1b))


# ----------------------------------------------------------------------------
# constructors

def from_callable(fn: Callable, domain: Interval, max_order: int = FD_MAX_ORDER,
                  breakpoints: Sequence[float] = ()) -> SmoothFunction:
    """Wrap a vectorised callable; derivatives come from finite differences."""
    return SmoothFunction(
        domain=domain,
        max_order=min(max_order, FD_MAX_ORDER),
        evaluator=lambda k, x: fn(x),
        kind=FALLBACK,
        exact_orders=0,
        breakpoints=tuple(breakpoints),
    )


def _poly_eval(coeffs):
    coeffs = np.asarray(coeffs, dtype=float)

    def ev(k, x):
        c = npoly.polyder(coeffs, k) if k else coeffs
        return npoly.polyval(x, c)

    return ev


def _exp_eval(lam):
    return lambda k, x: lam ** k * np.exp(lam * x)


def _trig_eval(w, phase):
    # d^k/dx^k sin(w x + phase) = w^k sin(w x + phase + k pi/2)
    return lambda k, x: w ** k * np.sin(w * x + phase + k * np.pi / 2)


def _tent_eval(a):
    mid = a / 2.0

    def ev(k, x):
        if k == 0:
            return np.where(x <= mid, x, a - x)
        return np.where(x < mid, 1.0, np.where(x > mid, -1.0, 0.0))

    return ev


def _floats(body: str, spec: str) -> list[float]:
    try:
        vals = [float(tok) for tok in body.split(",")]
    except ValueError as exc:
        raise SpecParseError(f"bad number in function spec {spec!r}") from exc
    if not vals or not all(math.isfinite(v) for v in vals):
        raise SpecParseError(f"function spec {spec!r} needs finite numbers")
    return vals


def builtin_family(spec: str, domain: Interval | None = None) -> SmoothFunction:
    """Build a function from the spec grammar (see module docstring).

    >>> builtin_family("poly:0,0,1")(3.0, 1)
    6.0
    >>> builtin_family("exp:2")(0.0, 2)
    4.0
    """
    if not isinstance(spec, str) or ":" not in spec:
        raise SpecParseError(f"malformed function spec {spec!r}")
    tag, body = spec.strip().split(":", 1)
    tag = tag.strip().lower()
    body = body.strip()
    if domain is None:
        domain = Interval(0.0, 1.0)

    if tag == "const":
        vals = _floats(body, spec)
        if len(vals) != 1:
            raise SpecParseError(f"const takes one value: {spec!r}")
        ev = _poly_eval(vals)
    elif tag == "poly":
        ev = _poly_eval(_floats(body, spec))
    elif tag == "exp":
        vals = _floats(body, spec)
        if len(vals) != 1:
            raise SpecParseError(f"exp takes one rate: {spec!r}")
        ev = _exp_eval(vals[0])
    elif tag in ("sin", "cos"):
        vals = _floats(body, spec)
        if len(vals) != 1:
            raise SpecParseError(f"{tag} takes one frequency: {spec!r}")
        ev = _trig_eval(vals[0], 0.0 if tag == "sin" else np.pi / 2)
    elif tag == "tent":
        vals = _floats(body, spec)
        if len(vals) != 1 or vals[0] <= 0:
            raise SpecParseError(f"tent takes one positive width: {spec!r}")
        a = vals[0]
        return SmoothFunction(
            domain=Interval(0.0, a), max_order=1, evaluator=_tent_eval(a),
            kind=EXACT, spec=f"tent:{a!r}", breakpoints=(a / 2.0,),
        )
    else:
        raise SpecParseError(f"unknown function family {tag!r} in {spec!r}")

    canonical = f"{tag}:" + ",".join(repr(v) for v in _floats(body, spec))
    return SmoothFunction(domain=domain, max_order=EXACT_MAX_ORDER, evaluator=ev,
                          kind=EXACT, spec=canonical)


def linear_combination(coeffs: Sequence[float], funcs: Sequence[SmoothFunction]) -> SmoothFunction:
    """Return ``sum(c * f)`` sharing the first function's domain."""
    if len(coeffs) != len(funcs) or not funcs:
        raise ValueError("need matching, nonempty coefficient and function lists")
    dom = funcs[0].domain
    if any(g.domain != dom for g in funcs):
        raise DomainError("linear_combination needs a common domain")
    exact = min(g.exact_orders for g in funcs)
    max_order = min(g.max_order for g in funcs)
    coeffs = [float(c) for c in coeffs]

    def ev(k, x):
        return sum(c * g.evaluator(k, x) for c, g in zip(coeffs, funcs))

    bps = tuple(sorted({b for g in funcs for b in g.breakpoints}))
    kind = EXACT if all(g.kind == EXACT for g in funcs) else FALLBACK
    if kind == FALLBACK:
        max_order = min(max_order, FD_MAX_ORDER)
    return SmoothFunction(domain=dom, max_order=max_order, evaluator=ev, kind=kind,
                          exact_orders=min(exact, max_order), breakpoints=bps)


def check_continuity(f: SmoothFunction, n: int = 33, deltas=(1e-3, 1e-5, 1e-7)) -> bool:
    """Spot-check that order-0 values settle as the probe offset shrinks."""
    dom = f.domain
    xs = np.linspace(dom.lo, dom.hi, n)[1:-1]
    jumps = []
    for d in deltas:
        step = d * dom.span
        jumps.append(np.max(np.abs(f(xs + step) - f(xs))))
    return bool(jumps[-1] <= jumps[0] and jumps[-1] < 1e-4 * (1 + np.max(np.abs(f(xs)))))
