"""Generalised Taylor expansion in a Widder basis.

For ``f`` and a family ``u_0..u_n`` with positive Wronskians,

    f(x) = f(t) g_0(x, t) + sum_{i=1}^n L_i f(t) g_i(x, t) + R_n(x),
    R_n(x) = int_t^x g_n(x, s) L_{n+1} f(s) ds.

:func:`represent_from_h` runs the formula backwards: given ``h`` in the role
of ``L_{n+1} f`` it builds the ``f`` whose Widder derivatives of order
``<= n`` vanish at ``x0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, EvaluationError
from .funcrep import FALLBACK, SmoothFunction
from .quad import DEFAULT_SPEC, QuadratureSpec, integrate_batch
from .widder import BasisFamily, kernel_g, widder_derivative

__all__ = ["TaylorExpansion", "taylor_eval", "taylor_remainder", "represent_from_h"]


@dataclass(frozen=True, eq=False)
class TaylorExpansion:
    """Expansion of ``f`` about ``center`` to order ``order``.

    ``coefficients[i]`` is ``L_i f(center)``.
    """

    family: BasisFamily
    f: SmoothFunction
    center: float
    order: int
    coefficients: tuple = field(default=(), init=False)

    def __post_init__(self):
        if not 0 <= self.order <= self.family.n:
            raise ValueError(f"order {self.order} outside 0..{self.family.n}")
        if not self.family.domain.contains(self.center):
            raise DomainError("expansion center outside the family domain")
        fam = self.family.truncated(self.order)
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "center", float(self.center))
        coeffs = tuple(float(widder_derivative(fam, self.f, i, self.center))
                       for i in range(self.order + 1))
        object.__setattr__(self, "coefficients", coeffs)


def taylor_eval(exp: TaylorExpansion, x):
    """Partial sum ``sum_{i=0}^n L_i f(t) g_i(x, t)`` without the remainder."""
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for i, c in enumerate(exp.coefficients):
        total = total + c * kernel_g(exp.family, i, x, exp.center)
    return float(total) if total.ndim == 0 else total


def taylor_remainder(exp: TaylorExpansion, x, quad: QuadratureSpec = DEFAULT_SPEC,
                     full_output: bool = False):
    """``R_n(x) = int_t^x g_n(x, s) L_{n+1} f(s) ds`` (oriented)."""
    n = exp.order
    if exp.f.max_order < n + 1:
        raise DomainError(f"remainder needs f with max_order >= {n + 1}")
    fam = exp.family
    xs = np.atleast_1d(np.asarray(x, dtype=float))

    def integrand(rows, s):
        Lf = widder_derivative(fam, exp.f, n + 1, s)
        return kernel_g(fam, n, xs[rows][:, None], s) * Lf

    spec = quad.with_breakpoints(exp.f.breakpoints)
    res = integrate_batch(integrand, np.full_like(xs, exp.center), xs, spec)
    out = float(res.values[0]) if np.ndim(x) == 0 else res.values
    return (out, res) if full_output else out


def represent_from_h(family: BasisFamily, h: SmoothFunction, x0: float,
                     quad: QuadratureSpec = DEFAULT_SPEC, use_abs: bool = False) -> SmoothFunction:
    """``f(x) = int_{x0}^x g_n(x, t) h(t) dt`` as a :class:`SmoothFunction`.

    Derivatives up to order ``n + 1`` come from differentiating under the
    integral sign; since ``d^j/dx^j g_n(x, t)`` vanishes at ``t = x`` for
    ``j < n`` and equals 1 for ``j = n``, the only boundary term is ``h(x)``
    in order ``n + 1``.  With ``use_abs`` the integrand uses ``|h|``.
    """
    n = family.n
    x0 = float(x0)
    if not family.domain.contains(x0):
        raise DomainError("x0 outside the family domain")
    spec = quad.tightened(10.0).with_breakpoints(h.breakpoints)
    hv = (lambda t: np.abs(h(t))) if use_abs else h

    def evaluator(k, x):
        x = np.asarray(x, dtype=float)
        flat = np.atleast_1d(x).reshape(-1)
        res = integrate_batch(
            lambda rows, t: kernel_g(family, n, flat[rows][:, None], t, dx=k) * hv(t),
            np.full_like(flat, x0), flat, spec,
        )
        if not np.all(res.converged):
            raise EvaluationError("representation integral did not converge")
        vals = res.values
        if k == n + 1:
            vals = vals + hv(flat)
        return vals.reshape(x.shape)

    spec_txt = f"repr[{family.spec or 'basis'}|{h.spec or 'h'}|{x0!r}]"
    return SmoothFunction(domain=family.domain, max_order=n + 1, evaluator=evaluator,
                          kind=FALLBACK, exact_orders=n + 1, spec=spec_txt,
                          breakpoints=tuple(h.breakpoints))
