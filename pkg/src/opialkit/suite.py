"""Run generated suites and collect reports.

A suite is a list of :class:`~opialkit.testgen.Instance` objects; each is
built, verified with the theorem matching its regime, and reported in
manifest order.  Violations come back as replayable manifest lines.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .opial import (InequalityReport, OpialProblem, opial_constant, verify_main,
                    verify_r2, verify_regime, extreme_bound)
from .quad import DEFAULT_SPEC, QuadratureSpec
from .testgen import Instance

__all__ = ["THEOREMS", "SuiteResult", "verify_problem", "run_suite", "joint_power_delta"]

log = logging.getLogger(__name__)

THEOREMS = ("main", "r2", "extreme", "regime", "auto")


@dataclass
class SuiteResult:
    reports: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    joint_power_delta: float | None = None

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_problem(prob: OpialProblem, theorem: str = "auto", direction: str | None = None,
                   regime_tag: str | None = None) -> InequalityReport:
    """Dispatch on ``theorem``; ``auto`` uses ``main`` for MAIN instances
    and ``regime`` otherwise."""
    if theorem == "auto":
        theorem = "main" if regime_tag in (None, "MAIN") and prob.exponents.regime.tag == "MAIN" else "regime"
    if theorem == "main":
        return verify_main(prob, direction)
    if theorem == "r2":
        return verify_r2(prob, direction)
    if theorem == "extreme":
        return extreme_bound(prob, direction)
    if theorem == "regime":
        return verify_regime(prob, direction)
    raise ValueError(f"unknown theorem {theorem!r}")


def joint_power_delta(prob: OpialProblem) -> float:
    """Relative change of ``C`` when ``r/(r-1)`` is applied to ``v^(-1/(r-1)) Phi``
    instead of ``Phi`` alone."""
    c = opial_constant(prob)
    cj = opial_constant(prob, joint_power=True)
    return abs(cj - c) / abs(c) if c else abs(cj)


def run_suite(instances, theorem: str = "auto", quad: QuadratureSpec = DEFAULT_SPEC,
              direction: str | None = None, log_delta: bool = True) -> SuiteResult:
    """Verify every instance, in order.

    The first instance also gets the joint-power variant of ``C``, logged
    once as a relative delta.
    """
    out = SuiteResult()
    for k, inst in enumerate(instances):
        prob = inst.build(quad) if isinstance(inst, Instance) else inst
        tag = inst.regime if isinstance(inst, Instance) else None
        if k == 0 and log_delta:
            try:
                out.joint_power_delta = joint_power_delta(prob)
                log.info("joint-power P variant changes C by %.3e (relative)",
                         out.joint_power_delta)
            except (ArithmeticError, ValueError) as exc:
                log.info("joint-power P variant not evaluable: %s", exc)
        rep = verify_problem(prob, theorem, direction, tag)
        out.reports.append(rep)
        if not rep.satisfied:
            line = inst.to_line() if isinstance(inst, Instance) else (prob.label or "")
            out.violations.append(line)
            log.warning("violation (%s, ratio %.6g): %s", rep.regime.tag, rep.ratio, line)
    return out
