"""
The generalised Taylor formula
==============================

Expand ``sin`` in an exponential system and check that partial sum plus
integral remainder gives back the function.
"""

import numpy as np

from opialkit import (Interval, TaylorExpansion, builtin_family, parse_basis, taylor_eval,
                      taylor_remainder)

dom = Interval(0.0, 1.0)
fam = parse_basis("exp-basis:0.2,0.7,1.3,1.8", dom)
f = builtin_family("sin:1", dom)
x = np.linspace(0, 1, 20)

for n in range(4):
    exp = TaylorExpansion(fam, f, 0.4, n)
    ps = taylor_eval(exp, x)
    rem = taylor_remainder(exp, x)
    print(f"n={n}  coefficients={np.round(exp.coefficients, 6)}  "
          f"max|partial error|={np.max(np.abs(f(x) - ps)):.2e}  "
          f"max|residual|={np.max(np.abs(f(x) - ps - rem)):.2e}")
