"""
Wronskian kernels of a few bases
================================

For the monomials the kernel ``g_i(x, t)`` is the Taylor weight
``(x - t)^i / i!``.  Other bases bend it, but it still vanishes to order
``i`` on the diagonal.
"""

import math

import numpy as np

from opialkit import Interval, kernel_g, parse_basis, validate_family, wronskian

dom = Interval(0.0, 1.0)

# Monomials: every Wronskian is a product of factorials
mono = parse_basis("monomials:3", dom)
print("monomial Wronskian minima:", validate_family(mono).minima)

x = np.linspace(0, 1, 6)
for i in range(4):
    err = np.max(np.abs(kernel_g(mono, i, x, 0.0) - x ** i / math.factorial(i)))
    print(f"g_{i}(x, 0) vs x^{i}/{i}!  max error {err:.1e}")

# An exponential system: W_1 = (l1 - l0) exp((l0 + l1) x)
ex = parse_basis("exp-basis:0.5,1.0,1.6", dom)
print("W_1(0.5) =", wronskian(ex, 1, 0.5), " expected", 0.5 * math.exp(0.75))

# Near the diagonal the kernel behaves like (x - t)^2 / 2
for d in (1e-1, 1e-3, 1e-6):
    print(f"d={d:.0e}  g_2(t+d, t) / (d^2/2) = {kernel_g(ex, 2, 0.3 + d, 0.3) / (d * d / 2):.12f}")
