"""Completeness at critical density through the Zak fiber.

At ab = 1 the Gabor system of g is complete exactly when
x -> sum_k g(y - k) exp(2 pi i k x) vanishes only on a null set.
"""
from bracketframe import LatticeGrid, SampledSignal, completeness_check

grid = LatticeGrid(64, 64, 64)
cases = {
    "chi[0,1)": SampledSignal.indicator(grid, 0, 64),
    "chi[0,1/2)": SampledSignal.indicator(grid, 0, 32),
    "chi[0,3/2)": SampledSignal.indicator(grid, 0, 96),
    "exp(-t^2)": SampledSignal.gaussian(grid, 1.0, 8.0),
}
print(f"{'window':<12} {'verdict':<11} {'zero frac':>9} {'min|Z|/max|Z|':>14}  sup-criterion")
for name, g in cases.items():
    v = completeness_check(g)
    sup = "-" if g.start < 0 else ("complete" if v.sup_complete else "incomplete")
    print(f"{name:<12} {v.verdict:<11} {v.zero_fraction:9.4f} {v.min_ratio:14.3e}  {sup}")

# The Gaussian fiber has a true zero at (x, y) = (1/2, 1/2): a theta
# function zero.  It is isolated, so the system is still complete, but the
# fiber gets arbitrarily small near it and no dual window is stable.
print("\nThe Gaussian's small min ratio comes from the isolated fiber zero at (1/2, 1/2).")
