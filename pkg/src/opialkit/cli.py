"""Command-line front end.

Subcommands::

    kernel    tabulate g_i(x, t) of a basis on a grid (CSV)
    constant  C(x) and sample values of P (JSON)
    verify    check one instance or a whole manifest (JSON lines or CSV)
    taylor    expansion, remainder and identity residual on a grid (CSV)
    gen       write a seeded suite manifest

Exit codes: 0 success (every report satisfied, or recorded as printed for
``extreme``), 1 a direction violation beyond slack, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .errors import OpialKitError
from .funcrep import Interval, builtin_family
from .opial import (ExponentTriple, OpialProblem, InequalityReport, classify_regime,
                    opial_constant, p_weight, verify_classical)
from .quad import QuadratureSpec
from .suite import run_suite, verify_problem
from .taylor import TaylorExpansion, taylor_eval, taylor_remainder
from .testgen import RNG_ALGORITHM, SuiteConfig, generate_suite, read_manifest, write_manifest
from .widder import greens_kernel, kernel_g, parse_basis, unit_kernel, widder_kernel

log = logging.getLogger("opialkit")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


@dataclass
class RunManifest:
    """What was run, with which resolved parameters."""

    command: str
    params: dict
    version: str = __version__
    seed: int | None = None
    rng: str = RNG_ALGORITHM
    timestamp: str = field(default_factory=lambda: time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()))

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls(**json.loads(text))


class InputError(Exception):
    pass


# ----------------------------------------------------------------------------
# parsing helpers

def _grid(spec: str) -> np.ndarray:
    try:
        lo, hi, n = spec.split(":")
        n = int(n)
        lo, hi = float(lo), float(hi)
    except ValueError as exc:
        raise InputError(f"grid must look like lo:hi:n, got {spec!r}") from exc
    if n < 1:
        raise InputError("grid needs at least one point")
    return np.linspace(lo, hi, n)


def _domain(args) -> Interval:
    if args.domain:
        try:
            lo, hi = (float(v) for v in args.domain.split(","))
        except ValueError as exc:
            raise InputError(f"domain must look like lo,hi, got {args.domain!r}") from exc
        return Interval(lo, hi)
    lo, hi = sorted((args.a, args.x))
    return Interval(lo, hi if hi > lo else lo + 1.0)


def _quad(args) -> QuadratureSpec:
    if args.quad_tol is None:
        return QuadratureSpec()
    return QuadratureSpec(rel_tol=args.quad_tol)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InputError("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _problem(args) -> OpialProblem:
    _need(args, "u", "v", "h", "alpha", "beta", "r", "a", "x")
    dom = _domain(args)
    kind = args.kernel or ("widder" if args.basis else "unit")
    if kind == "unit":
        kernel = unit_kernel()
    else:
        _need(args, "basis")
        fam = parse_basis(args.basis, dom)
        kernel = widder_kernel(fam) if kind == "widder" else greens_kernel(fam)
    y = builtin_family(args.y, dom) if args.y else None
    return OpialProblem(kernel, builtin_family(args.u, dom), builtin_family(args.v, dom),
                        builtin_family(args.h, dom), args.a, args.x,
                        ExponentTriple(args.alpha, args.beta, args.r), y=y, quad=_quad(args))


def _params(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


# ----------------------------------------------------------------------------
# output

def _open_out(args):
    if args.out:
        return open(args.out, "w", newline="")
    return io.TextIOWrapper(sys.stdout.buffer, newline="", encoding="utf-8", write_through=True)


def _csv(rows, header, args):
    fh = _open_out(args)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
        fh.flush()
    finally:
        if args.out:
            fh.close()
        else:
            fh.detach()


def _json_lines(objs, args):
    fh = _open_out(args)
    try:
        for obj in objs:
            fh.write(json.dumps(obj) + "\n")
        fh.flush()
    finally:
        if args.out:
            fh.close()
        else:
            fh.detach()


def _write_run_manifest(args, command):
    if getattr(args, "run_manifest", None):
        man = RunManifest(command, _params(args), seed=args.seed)
        with open(args.run_manifest, "w", newline="\n") as fh:
            fh.write(man.to_json() + "\n")


# ----------------------------------------------------------------------------
# commands

def cmd_kernel(args) -> int:
    _need(args, "basis", "i")
    g = _grid(args.grid)
    dom = Interval(float(g.min()), float(g.max()) if g.max() > g.min() else float(g.min()) + 1.0)
    if args.domain:
        dom = _domain(args)
    fam = parse_basis(args.basis, dom)
    X, T = np.meshgrid(g, g, indexing="ij")
    vals = kernel_g(fam, args.i, X.ravel(), T.ravel())
    rows = zip(X.ravel(), T.ravel(), np.atleast_1d(vals))
    _csv(rows, ["x", "t", "g"], args)
    return EXIT_OK


def cmd_constant(args) -> int:
    prob = _problem(args)
    regime = classify_regime(prob.exponents)
    if regime.tag != "MAIN":
        raise InputError(f"constant needs MAIN-regime exponents, got {regime.tag}")
    C, res = opial_constant(prob, full_output=True)
    s = np.linspace(prob.a, prob.x, args.samples)
    P = np.atleast_1d(p_weight(prob, s))
    obj = {"C": C, "P_samples": [[float(a), float(b)] for a, b in zip(s, P)],
           "quad_error": res.error_estimate}
    _json_lines([obj], args)
    return EXIT_OK


def _emit_reports(reports, args):
    if args.format == "csv":
        rows = ([r.to_dict()[k] for k in InequalityReport.FIELDS] for r in reports)
        _csv(rows, list(InequalityReport.FIELDS), args)
    else:
        _json_lines([r.to_dict() for r in reports], args)


def _exit_for(reports) -> int:
    bad = [r for r in reports if not r.satisfied and not r.as_printed_flag]
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_verify(args) -> int:
    direction = args.direction
    if args.suite:
        insts = read_manifest(args.suite)
        theorem = "auto" if args.theorem in (None, "auto") else args.theorem
        res = run_suite(insts, theorem, _quad(args), direction)
        reports = res.reports
    elif args.theorem == "classical":
        _need(args, "f")
        f = builtin_family(args.f, _domain(args) if args.domain else None)
        reports = [verify_classical(f, args.x, _quad(args), direction)]
    else:
        prob = _problem(args)
        reports = [verify_problem(prob, args.theorem or "auto", direction)]
    _emit_reports(reports, args)
    return _exit_for(reports)


def cmd_taylor(args) -> int:
    _need(args, "basis", "f", "t", "n")
    xs = _grid(args.grid)
    lo = min(float(xs.min()), args.t)
    hi = max(float(xs.max()), args.t)
    dom = _domain(args) if args.domain else Interval(lo, hi if hi > lo else lo + 1.0)
    fam = parse_basis(args.basis, dom)
    f = builtin_family(args.f, dom)
    exp = TaylorExpansion(fam, f, args.t, args.n)
    fx = np.atleast_1d(f(xs))
    ps = np.atleast_1d(taylor_eval(exp, xs))
    rem = np.atleast_1d(taylor_remainder(exp, xs, _quad(args)))
    resid = fx - ps - rem
    _csv(zip(xs, fx, ps, rem, resid), ["x", "f", "partial_sum", "remainder", "identity_residual"], args)
    return EXIT_OK


def cmd_gen(args) -> int:
    regimes = tuple(t.strip() for t in args.regimes.split(",") if t.strip())
    cfg = SuiteConfig(seed=args.seed if args.seed is not None else SuiteConfig.seed,
                      count=args.count)
    insts = generate_suite(cfg, regimes)
    if args.out:
        write_manifest(insts, args.out)
    else:
        text = "".join(i.to_line() + "\n" for i in insts)
        sys.stdout.buffer.write(text.encode())
    return EXIT_OK


# ----------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--basis", help="basis spec, e.g. monomials:3 or exp-basis:0.5,1.0")
    p.add_argument("--kernel", choices=("widder", "greens", "unit"),
                   help="kernel built from --basis (default widder) or the unit kernel")
    p.add_argument("--u", help="weight u spec")
    p.add_argument("--v", help="weight v spec")
    p.add_argument("--h", help="h spec")
    p.add_argument("--y", help="explicit y spec (default: derived from h)")
    p.add_argument("--f", help="function spec")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--r", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--domain", help="function domain lo,hi (default spans a and x)")
    p.add_argument("--quad-tol", type=float, dest="quad_tol", help="relative quadrature tolerance")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="write to this file instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--run-manifest", dest="run_manifest",
                   help="also write a JSON record of the resolved parameters here")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="opialkit", description=__doc__.split("\n")[0],
                                 allow_abbrev=False)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="tabulate g_i(x, t)")
    _common(p)
    p.add_argument("--i", type=int)
    p.add_argument("--grid", default="0:1:5", help="lo:hi:n, used for both x and t")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("constant", help="C(x) with P samples")
    _common(p)
    p.add_argument("--samples", type=int, default=5, help="number of P sample points")
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("verify", help="check an inequality")
    _common(p)
    p.add_argument("--theorem", choices=("main", "r2", "extreme", "regime", "classical", "auto"))
    p.add_argument("--suite", help="manifest file, one instance per line")
    p.add_argument("--direction", choices=("upper-bound", "lower-bound"),
                   help="override the regime's direction (forces the other check)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("taylor", help="generalised Taylor identity on a grid")
    _common(p)
    p.add_argument("--t", type=float, help="expansion point")
    p.add_argument("--n", type=int, help="expansion order")
    p.add_argument("--grid", default="0:1:11")
    p.set_defaults(func=cmd_taylor)

    p = sub.add_parser("gen", help="write a suite manifest")
    _common(p)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--regimes", default="MAIN")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        code = args.func(args)
        _write_run_manifest(args, args.command)
        return code
    except (InputError, OpialKitError, ValueError, ArithmeticError, OSError) as exc:
        print(f"opialkit {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
