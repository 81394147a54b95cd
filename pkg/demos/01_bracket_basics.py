"""The bracket product as a function-valued inner product.

Folding ``f * conj(g)`` onto one period gives a periodic function whose
integral is the ordinary inner product.  Everything familiar from Hilbert
spaces (Cauchy-Schwarz, orthogonality, Gram-Schmidt) then holds pointwise.
"""
import math

import numpy as np

from bracketframe import LatticeGrid, SampledSignal, a_norm, bracket, gram_schmidt, inner_product

grid = LatticeGrid(64, 64, 64)  # dt = 1/64, a = 1, b = 1

g = SampledSignal.gaussian(grid, 1.0, 8.0)
gg = bracket(g, g)
print("[g, g]_1 for g = exp(-t^2):")
print(f"  min {gg.samples.real.min():.6f}  max {gg.samples.real.max():.6f}")
print(f"  integral {gg.integral().real:.12f}  vs  ||g||^2 = {inner_product(g, g).real:.12f}")
print(f"  sqrt(pi/2) = {math.sqrt(math.pi / 2):.12f}")

# pointwise Cauchy-Schwarz on a random pair
rng = np.random.default_rng(1)
f = SampledSignal(grid, -70, rng.standard_normal(200) + 1j * rng.standard_normal(200))
h = SampledSignal(grid, 10, rng.standard_normal(150))
gap = a_norm(f).samples.real * a_norm(h).samples.real - np.abs(bracket(f, h).samples)
print(f"\nCauchy-Schwarz slack ||f|| ||h|| - |[f,h]|: min {gap.min():.3e} (never negative)")

# Gram-Schmidt with the bracket in place of the inner product
chi02 = SampledSignal.indicator(grid, 0, 128)
chi01 = SampledSignal.indicator(grid, 0, 64)
e1, e2 = gram_schmidt([chi02, chi01])
print("\nGram-Schmidt on (chi[0,2), chi[0,1)):")
print(f"  e1 values {np.unique(e1.samples.real.round(12))}")
print(f"  e2 values {np.unique(e2.samples.real.round(12))}  (+-1/sqrt2 = {1 / math.sqrt(2):.12f})")
print(f"  [e1, e2] max |.| = {np.abs(bracket(e1, e2).samples).max():.1e}")
