"""Recognizing tight Gabor frames from G_0 and G_k.

The unit-cell indicator is an orthonormal basis at a = b = 1 and a tight
frame with bound 2 at b = 1/2.  A Gaussian is a frame but not tight: its
frame bounds spread around the range of G_0 / b.
"""
import numpy as np

from bracketframe import LatticeGrid, SampledSignal, WHSystem, analyze, frame_operator_compressed

rng = np.random.default_rng(0)

for q, label in ((64, "a = b = 1"), (128, "a = 1, b = 1/2")):
    grid = LatticeGrid(64, 64, q)
    g = SampledSignal.indicator(grid, 0, 64)
    r = analyze(g)
    f = SampledSignal(grid, -100, rng.standard_normal(300))
    Sf = frame_operator_compressed(f, WHSystem(g))
    ratio = (Sf.restrict(f.start, f.stop).samples / f.samples).real
    print(f"chi[0,1), {label}: tight={r.tight} normalized={r.normalized_tight} "
          f"ONB={r.orthonormal_basis} bound={r.frame_bound}  Sf/f in [{ratio.min():.12f}, {ratio.max():.12f}]")

print()
for q in (64, 128):
    grid = LatticeGrid(64, 64, q)
    r = analyze(SampledSignal.gaussian(grid, 1.0, 4.0))
    lo, hi = r.G0_over_b_range
    A, B = r.spectral_bounds
    print(f"gaussian, 1/b = {q / 64:g}: G0/b in [{lo:.5f}, {hi:.5f}]  "
          f"frame bounds ~ [{A:.5f}, {B:.5f}]  tight={r.tight}")
    print(f"  A <= min G0/b: {A <= lo + 1e-9}   max G0/b <= B: {hi <= B + 1e-9}")
