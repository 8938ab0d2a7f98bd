"""
A small seeded suite over all regimes
=====================================

Generate a few equality-case problems per regime, verify each in the
direction its regime predicts and print how tight the bounds are.
"""

import numpy as np

from opialkit.opial import REGIME_TAGS
from opialkit.suite import run_suite
from opialkit.testgen import SuiteConfig, generate_suite

cfg = SuiteConfig(seed=12345, count=3)
for tag in REGIME_TAGS:
    insts = generate_suite(cfg, (tag,))
    res = run_suite(insts, log_delta=False)
    ratios = np.array([r.ratio for r in res.reports])
    print(f"{tag:>4} {res.reports[0].direction:<11} ratios {np.round(ratios, 4)} "
          f"violations {len(res.violations)}")

# every instance is replayable from its manifest line
print(insts[0].to_line())
