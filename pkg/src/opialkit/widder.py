"""Wronskians, Widder derivatives and determinant-ratio kernels.

For a family ``u_0, ..., u_n`` with positive Wronskians ``W_0, ..., W_n`` the
Widder derivative of order ``i`` is

    L_i f = W[u_0, ..., u_{i-1}, f] / W_{i-1},      L_0 f = f,

and the kernel ``g_i(x, t)`` is the determinant whose first ``i`` rows hold
``u_m^{(j)}(t)`` (``j = 0..i-1``) and whose last row holds ``u_m(x)``, divided
by ``W_i(t)``.  For monomials these reduce to ``f^{(i)}`` and
``(x - t)^i / i!``.

All determinants go through ``numpy.linalg.det`` (LAPACK LU with partial
pivoting) and every routine broadcasts over array arguments.

Basis spec grammar::

    monomials:<n>              1, x, ..., x^n
    exp-basis:<l0>,<l1>,...    exp(l0 x), exp(l1 x), ...
    custom:<f0>;<f1>;...       function specs separated by ';'
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (DomainError, SingularWronskianError, SpecParseError,
                     WidderHypothesisError)
from .funcrep import Interval, SmoothFunction, builtin_family

__all__ = [
    "BasisFamily",
    "FamilyDiagnostics",
    "KernelHandle",
    "parse_basis",
    "wronskian",
    "widder_derivative",
    "kernel_g",
    "greens_function",
    "validate_family",
    "widder_kernel",
    "greens_kernel",
    "unit_kernel",
    "function_kernel",
    "grid_kernel",
]

DEFAULT_FLOOR = 1e-10
GRID_POINTS = 257
SERIES_TERMS = 12
SERIES_MIN_TERMS = 8
#: determinant kernels lose about eps * span^m / |x - t|^m; the series
#: takes over where that exceeds eps / SERIES_LOSS
SERIES_LOSS = 1e-4


def _derivative_rows(members, orders, x):
    """Array of shape ``x.shape + (len(orders), len(members))``."""
    x = np.asarray(x, dtype=float)
    orders = list(orders)
    out = np.empty(x.shape + (len(orders), len(members)))
    for c, u in enumerate(members):
        for r, j in enumerate(orders):
            out[..., r, c] = u(x, j)
    return out


def _floor_check(det, mat, floor):
    # scale-aware floor: product of row max-norms
    scale = np.prod(np.max(np.abs(mat), axis=-1), axis=-1)
    return np.abs(det) <= floor * scale


@dataclass(frozen=True)
class FamilyDiagnostics:
    """Per-index minimum Wronskian over the validation grid."""

    minima: tuple
    argmins: tuple
    floors: tuple
    ok: bool

    def failing(self):
        return [i for i, (m, f) in enumerate(zip(self.minima, self.floors)) if not m >= f]


@dataclass(frozen=True, eq=False)
class BasisFamily:
    """Ordered family ``u_0..u_n`` satisfying the Widder hypothesis on a grid.

    Construction evaluates every ``W_i`` on ``validation_grid`` (257
    equispaced points by default) and raises :class:`WidderHypothesisError`
    when some ``W_i(x)`` is not above ``wronskian_floor`` times the scale of
    its matrix.  Positivity between grid points is not certified.
    """

    members: tuple
    domain: Interval
    validation_grid: np.ndarray | None = None
    wronskian_floor: float = DEFAULT_FLOOR
    spec: str | None = None
    diagnostics: FamilyDiagnostics | None = field(default=None, repr=False)

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("a basis family needs at least one member")
        object.__setattr__(self, "members", members)
        n = len(members) - 1
        for u in members:
            if u.domain != self.domain:
                raise DomainError("basis members must share the family domain")
            if u.max_order < n + 1:
                raise DomainError(
                    f"basis member {u!r} has max_order {u.max_order} < n+1 = {n + 1}"
                )
        if not self.wronskian_floor > 0:
            raise ValueError("wronskian_floor must be positive")
        if self.validation_grid is None:
            object.__setattr__(self, "validation_grid", self.domain.grid(GRID_POINTS))
        diag = validate_family(self)
        object.__setattr__(self, "diagnostics", diag)
        if not diag.ok:
            bad = diag.failing()[0]
            raise WidderHypothesisError(
                f"W_{bad} reaches {diag.minima[bad]:.3e} at x={diag.argmins[bad]:.6g}"
                f" (floor {diag.floors[bad]:.3e})"
            )

    @property
    def n(self) -> int:
        return len(self.members) - 1

    def truncated(self, n: int) -> "BasisFamily":
        """The sub-family ``u_0..u_n``."""
        if not 0 <= n <= self.n:
            raise ValueError(f"cannot truncate order-{self.n} family to {n}")
        if n == self.n:
            return self
        return BasisFamily(self.members[: n + 1], self.domain, self.validation_grid,
                           self.wronskian_floor)

    def wronskian_matrix(self, i: int, x):
        return _derivative_rows(self.members[: i + 1], range(i + 1), x)


def validate_family(family: BasisFamily) -> FamilyDiagnostics:
    """Minimum of each ``W_i`` over the family's validation grid."""
    grid = np.asarray(family.validation_grid, dtype=float)
    minima, argmins, floors = [], [], []
    ok = True
    for i in range(family.n + 1):
        mat = _derivative_rows(family.members[: i + 1], range(i + 1), grid)
        w = np.linalg.det(mat)
        scale = np.prod(np.max(np.abs(mat), axis=-1), axis=-1)
        # report the point closest to violating the scaled floor
        slack = w - family.wronskian_floor * scale
        k = int(np.argmin(slack))
        minima.append(float(w[k]))
        argmins.append(float(grid[k]))
        floors.append(float(family.wronskian_floor * scale[k]))
        if not (np.all(slack > 0) and np.all(w > 0)):
            ok = False
    return FamilyDiagnostics(tuple(minima), tuple(argmins), tuple(floors), ok)


def wronskian(family: BasisFamily, i: int, x):
    """``W_i(x) = det[u_m^{(j)}(x)]_{j,m=0..i}``."""
    if not 0 <= i <= family.n:
        raise ValueError(f"index {i} outside 0..{family.n}")
    d = np.linalg.det(family.wronskian_matrix(i, x))
    return float(d) if np.ndim(d) == 0 else d


def widder_derivative(family: BasisFamily, f: SmoothFunction, i: int, x):
    """``L_i f(x) = W[u_0..u_{i-1}, f](x) / W_{i-1}(x)``; ``L_0 f = f``."""
    if i == 0:
        return f(x)
    if not 1 <= i <= family.n + 1:
        raise ValueError(f"Widder derivative order {i} outside 0..{family.n + 1}")
    if f.max_order < i:
        raise DomainError(f"f has max_order {f.max_order} < {i}")
    x = np.asarray(x, dtype=float)
    den_mat = _derivative_rows(family.members[:i], range(i), x)
    den = np.linalg.det(den_mat)
    if np.any(_floor_check(den, den_mat, family.wronskian_floor)):
        raise SingularWronskianError(f"W_{i - 1} below floor in Widder derivative")
    num = np.linalg.det(_derivative_rows(family.members[:i] + (f,), range(i + 1), x))
    out = num / den
    return float(out) if out.ndim == 0 else out


def _det_ratio(members, x, t, floor, dx=0):
    """Last-row-replaced determinant over the full Wronskian at ``t``.

    Replacing row ``m`` of ``M(t)`` by ``w`` multiplies the determinant by
    ``w . M(t)^{-1} e_m``, so one solve per ``t`` serves every ``x``.
    """
    m = len(members) - 1
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    shape = np.broadcast_shapes(x.shape, t.shape)
    wt = _derivative_rows(members, range(m + 1), t)
    den = np.linalg.det(wt)
    if np.any(_floor_check(den, wt, floor)):
        raise SingularWronskianError("Wronskian at t below floor in kernel")
    e = np.zeros(m + 1)
    e[m] = 1.0
    z = np.linalg.solve(wt, np.broadcast_to(e, wt.shape[:-1])[..., None])[..., 0]
    last = np.stack([u(x, dx) for u in members], axis=-1)
    out = np.sum(last * z, axis=-1)
    out = np.array(np.broadcast_to(out, shape))
    if m >= 1 and dx < m:
        # repeated row: exactly zero
        out[np.broadcast_to(x == t, shape)] = 0.0
    if m >= 1:
        out = _diagonal_patch(members, x, t, np.broadcast_to(z, shape + (m + 1,)), shape,
                              out, m, dx)
    return float(out) if out.ndim == 0 else out


def _diagonal_patch(members, x, t, z, shape, out, m, dx):
    # Close to x = t the sum cancels down to eps / |x - t|^m of relative
    # accuracy.  There the kernel is the series
    # sum_k d_k(t) (x - t)^k / k!  with  d_k = u^{(k)}(t) . z(t),
    # which has no cancellation.
    kmax = min(m + SERIES_TERMS, min(u.exact_orders for u in members))
    if kmax < m + SERIES_MIN_TERMS:
        return out
    xb = np.broadcast_to(x, shape)
    tb = np.broadcast_to(t, shape)
    near = np.abs(xb - tb) < members[0].domain.span * SERIES_LOSS ** (1.0 / m)
    if not np.any(near):
        return out
    out = np.array(out, dtype=float)
    tn, dn = tb[near], xb[near] - tb[near]
    rows = _derivative_rows(members, range(max(m, dx), kmax + 1), tn)
    d = np.einsum("pkj,pj->pk", rows, z[near])
    ks = np.arange(max(m, dx), kmax + 1) - dx
    terms = d * dn[:, None] ** ks / np.array([math.factorial(k) for k in ks])
    val = terms.sum(axis=1)
    # keep the direct value wherever the series has not settled
    ok = np.abs(terms[:, -1]) <= 1e-17 * np.maximum(np.abs(val), np.finfo(float).tiny)
    ok |= dn == 0
    patched = out[near]
    patched[ok] = val[ok]
    out[near] = patched
    return out


def kernel_g(family: BasisFamily, i: int, x, t, dx: int = 0):
    """Kernel ``g_i(x, t)`` (or its ``dx``-th derivative in ``x``).

    ``g_0(x, t) = u_0(x) / u_0(t)``.  For ``i >= 1`` the rows are
    ``u^{(j)}(t)`` for ``j < i`` and ``u^{(dx)}(x)`` last, over ``W_i(t)``.
    """
    if not 0 <= i <= family.n:
        raise ValueError(f"kernel index {i} outside 0..{family.n}")
    if i == 0:
        u0 = family.members[0]
        t = np.asarray(t, dtype=float)
        den = u0(t)
        if np.any(np.abs(den) <= family.wronskian_floor * np.abs(den)) or np.any(den == 0):
            raise SingularWronskianError("u_0(t) vanishes")
        out = np.asarray(u0(x, dx)) / den
        return float(out) if np.ndim(out) == 0 else out
    return _det_ratio(family.members[: i + 1], x, t, family.wronskian_floor, dx)


def greens_function(solutions: Sequence[SmoothFunction] | BasisFamily, x, t,
                    floor: float = DEFAULT_FLOOR):
    """Green's function of ``L = D^n + ...`` built from ``n`` solutions of ``Ly = 0``.

    Rows ``y^{(j)}(t)`` for ``j = 0..n-2`` and ``y(x)`` last, divided by the
    Wronskian of the solutions at ``t``.  Values for ``x < t`` are returned
    as the formula gives them.
    """
    members = solutions.members if isinstance(solutions, BasisFamily) else tuple(solutions)
    if not members:
        raise ValueError("need at least one solution")
    return _det_ratio(members, x, t, floor)


# ----------------------------------------------------------------------------
# kernels

@dataclass(frozen=True, eq=False)
class KernelHandle:
    """A kernel ``Phi(x, t)`` plus where it came from.

    ``diagonal_order`` is the order to which ``Phi`` vanishes on ``x = t``
    (0 when it does not), which the quadrature uses to grade panels.
    """

    source: str
    evaluator: Callable
    diagonal_order: int = 0
    family: BasisFamily | None = None
    index: int | None = None
    spec: str | None = None

    def __call__(self, x, t):
        return self.evaluator(x, t)


def widder_kernel(family: BasisFamily, i: int | None = None) -> KernelHandle:
    i = family.n if i is None else i
    return KernelHandle(
        source="widder-kernel",
        evaluator=lambda x, t: kernel_g(family, i, x, t),
        diagonal_order=i,
        family=family,
        index=i,
        spec=family.spec,
    )


def greens_kernel(solutions, floor: float = DEFAULT_FLOOR) -> KernelHandle:
    members = solutions.members if isinstance(solutions, BasisFamily) else tuple(solutions)
    return KernelHandle(
        source="greens-function",
        evaluator=lambda x, t: greens_function(members, x, t, floor),
        diagonal_order=len(members) - 1,
        family=solutions if isinstance(solutions, BasisFamily) else None,
        spec=getattr(solutions, "spec", None),
    )


def _ones(x, t):
    return np.ones(np.broadcast_shapes(np.shape(x), np.shape(t)))


def unit_kernel() -> KernelHandle:
    return KernelHandle(source="unit-kernel", evaluator=_ones, spec="unit")


def function_kernel(fn: Callable, diagonal_order: int = 0, spec: str | None = None) -> KernelHandle:
    """Kernel from a vectorised callable ``fn(x, t)``."""
    return KernelHandle(source="custom", evaluator=fn, diagonal_order=diagonal_order, spec=spec)


def grid_kernel(xs, ts, values) -> KernelHandle:
    """Bilinear interpolant of tabulated kernel values."""
    from scipy.interpolate import RegularGridInterpolator

    interp = RegularGridInterpolator((np.asarray(xs, float), np.asarray(ts, float)),
                                     np.asarray(values, float))

    def ev(x, t):
        x, t = np.broadcast_arrays(np.asarray(x, float), np.asarray(t, float))
        return interp(np.stack([x, t], axis=-1))

    return KernelHandle(source="custom-grid", evaluator=ev)


# ----------------------------------------------------------------------------
# parsing

def parse_basis(spec: str, domain: Interval | None = None, validation_grid=None,
                wronskian_floor: float = DEFAULT_FLOOR) -> BasisFamily:
    """Build a validated :class:`BasisFamily` from a basis spec string."""
    if domain is None:
        domain = Interval(0.0, 1.0)
    if not isinstance(spec, str) or ":" not in spec:
        raise SpecParseError(f"malformed basis spec {spec!r}")
    tag, body = spec.strip().split(":", 1)
    tag = tag.strip().lower()
    if tag == "monomials":
        try:
            n = int(body)
        except ValueError as exc:
            raise SpecParseError(f"monomials needs an integer order: {spec!r}") from exc
        if n < 0:
            raise SpecParseError("monomial order must be nonnegative")
        members = [builtin_family("poly:" + ",".join(["0"] * i + ["1"]), domain)
                   for i in range(n + 1)]
        canonical = f"monomials:{n}"
    elif tag == "exp-basis":
        try:
            lams = [float(v) for v in body.split(",")]
        except ValueError as exc:
            raise SpecParseError(f"bad rate in {spec!r}") from exc
        if not lams or not all(math.isfinite(v) for v in lams):
            raise SpecParseError(f"exp-basis needs finite rates: {spec!r}")
        members = [builtin_family(f"exp:{lam!r}", domain) for lam in lams]
        canonical = "exp-basis:" + ",".join(repr(v) for v in lams)
    elif tag == "custom":
        parts = [p for p in body.split(";") if p.strip()]
        if not parts:
            raise SpecParseError("custom basis needs at least one function spec")
        members = [builtin_family(p, domain) for p in parts]
        canonical = "custom:" + ";".join(m.spec for m in members)
    else:
        raise SpecParseError(f"unknown basis family {tag!r}")
    return BasisFamily(tuple(members), domain, validation_grid, wronskian_floor, canonical)
