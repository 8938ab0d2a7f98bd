"""
Opial's inequality and its weighted constant
============================================

The tent ``f(x) = min(x, 1 - x)`` turns the classical bound
``int |f f'| <= (1/4) int f'^2`` into an equality.  With the unit kernel
the weighted constant ``C(x)`` has the closed form ``x / 2``.
"""

import numpy as np

from opialkit import (ExponentTriple, Interval, OpialProblem, builtin_family, greens_kernel,
                      opial_constant, p_weight, parse_basis, unit_kernel, verify_classical,
                      verify_main)

rep = verify_classical(builtin_family("tent:1"))
print(f"tent: lhs={rep.lhs:.12f} bound={rep.bound:.12f} ratio={rep.ratio:.12f}")

dom = Interval(0.0, 1.0)
one = builtin_family("const:1", dom)
e = ExponentTriple(alpha=1.0, beta=1.0, r=2.0)

# C(x) = x/2 for the unit kernel
for x in (0.25, 0.5, 1.0):
    prob = OpialProblem(unit_kernel(), one, one, one, 0.0, x, e)
    print(f"x={x:<5} C={opial_constant(prob):.15f}")

# Green's function of D^2 gives P(s) = s^3/3 and C(1) = 1/sqrt(24)
green = OpialProblem(greens_kernel(parse_basis("monomials:1", dom)), one, one, one, 0.0, 1.0, e)
s = np.linspace(0, 1, 5)
print("P(s) - s^3/3:", p_weight(green, s) - s ** 3 / 3)
print("C(1) * sqrt(24) =", opial_constant(green) * 24 ** 0.5)

# The unit instance is an equality case of the weighted inequality
print(verify_main(OpialProblem(unit_kernel(), one, one, one, 0.0, 1.0, e)).to_dict())
