"""Reconstructing a signal from Gabor coefficients.

The canonical dual needs S^{-1}.  Conjugate gradients on the frame operator
(applied in its compressed, modulation-free form) does this without ever
forming a matrix.  Iteration counts track the condition number B / A.
"""
import numpy as np

from bracketframe import LatticeGrid, SampledSignal, WHSystem, frame_reconstruct, spectral_frame_bounds

rng = np.random.default_rng(3)
for q in (64, 96, 128):
    grid = LatticeGrid(64, 64, q)
    sysw = WHSystem(SampledSignal.gaussian(grid, 1.0, 4.0))
    A, B = spectral_frame_bounds(sysw)
    f = SampledSignal(grid, -128, rng.standard_normal(256))
    rec = frame_reconstruct(f, sysw)
    err = np.abs(rec.signal.window(f.start, f.stop) - f.samples).max() / np.abs(f.samples).max()
    print(f"1/b = {q / 64:<5g} bounds [{A:.4f}, {B:.4f}]  B/A = {B / A:8.1f}  "
          f"CG iterations {rec.cg_iterations:4d}  rel err {err:.1e}")
