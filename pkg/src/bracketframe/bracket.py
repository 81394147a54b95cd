"""Bracket products: periodic, function-valued inner products.

For a period ``P`` the bracket of ``f`` and ``g`` is the ``P``-periodic
function

    [f, g]_P(t) = sum_n f(t - nP) conj(g(t - nP)).

On a commensurate grid ``P`` is a whole number of steps and the sum is finite,
so the bracket is materialized as one period of samples.  Integrating it over
``[0, P)`` gives back the ordinary inner product.
"""
from __future__ import annotations

import numpy as np

from .errors import BadParameter, GridMismatch, NotRealValued
from .signal import Period, PeriodicSignal, SampledSignal, check_same_grid

BracketFn = PeriodicSignal

#: relative zero threshold used by :func:`normalize_a`
DEFAULT_NORMALIZE_EPS = 1e-12


def _fold(indices: np.ndarray, values: np.ndarray, period: int) -> np.ndarray:
    r = np.mod(indices, period)
    re = np.bincount(r, weights=values.real, minlength=period)
    im = np.bincount(r, weights=values.imag, minlength=period)
    return re + 1j * im


def bracket(f: SampledSignal, g: SampledSignal, period: Period = "shift_a") -> BracketFn:
    """Bracket product ``[f, g]_P`` with ``P`` chosen by ``period``.

    ``period`` is ``"shift_a"`` (``P = a``), ``"inv_b"`` (``P = 1/b``) or a
    positive integer number of grid steps.
    """
    grid = check_same_grid(f, g)
    P = grid.period_steps(period)
    lo, hi = max(f.start, g.start), min(f.stop, g.stop)
    if lo >= hi:
        return PeriodicSignal(grid, np.zeros(P, dtype=np.complex128))
    prod = f.samples[lo - f.start:hi - f.start] * np.conj(g.samples[lo - g.start:hi - g.start])
    return PeriodicSignal(grid, _fold(np.arange(lo, hi), prod, P))


def a_norm_sq(f: SampledSignal, period: Period = "shift_a") -> np.ndarray:
    """Real samples of ``[f, f]_P``, computed from ``abs(f)**2`` directly."""
    grid = f.grid
    P = grid.period_steps(period)
    if len(f) == 0:
        return np.zeros(P)
    sq = np.abs(f.samples) ** 2
    r = np.mod(f.indices(), P)
    return np.bincount(r, weights=sq, minlength=P)


def a_norm(f: SampledSignal, period: Period = "shift_a") -> BracketFn:
    """Pointwise norm ``sqrt([f, f]_P)``."""
    return PeriodicSignal(f.grid, np.sqrt(a_norm_sq(f, period)))


def _divide_by_norm(f: SampledSignal, norm: np.ndarray, threshold: float) -> SampledSignal:
    at = norm[np.mod(f.indices(), norm.size)]
    keep = at > threshold
    out = np.zeros_like(f.samples)
    out[keep] = f.samples[keep] / at[keep]
    return f.with_samples(out)


def normalize_a(f: SampledSignal, period: Period = "shift_a",
                eps: float = DEFAULT_NORMALIZE_EPS) -> SampledSignal:
    """Pointwise normalization ``f / ||f||_P``.

    Samples where ``||f||_P <= eps * max ||f||_P`` are set to zero, which is
    the grid stand-in for the zero set of the pointwise norm.
    """
    if eps < 0:
        raise BadParameter("eps must be non-negative")
    norm = np.sqrt(a_norm_sq(f, period))
    if norm.size == 0 or norm.max() == 0:
        return f.with_samples(np.zeros_like(f.samples))
    return _divide_by_norm(f, norm, eps * norm.max())


def scale_by_periodic(f: SampledSignal, h: PeriodicSignal) -> SampledSignal:
    """Pointwise product of ``f`` with the periodic extension of ``h``."""
    if h.grid.L != f.grid.L:
        raise GridMismatch(f"periodic factor on L={h.grid.L}, signal on L={f.grid.L}")
    return f.with_samples(f.samples * h.extend(f.start, f.stop))


def ess_range(h: PeriodicSignal, support_eps: float | None = None,
              imag_tol: float = 1e-10) -> tuple[float, float]:
    """Min and max of a real-valued periodic function over its grid samples.

    These are grid approximations of the essential infimum and supremum.
    With ``support_eps`` set, only samples above ``support_eps * max`` are
    considered (the "on the support" variant).
    """
    vals = h.samples
    scale = max(1.0, float(np.abs(vals).max()))
    if np.abs(vals.imag).max() > imag_tol * scale:
        raise NotRealValued(
            f"imaginary part up to {np.abs(vals.imag).max():.3e} exceeds {imag_tol:g}")
    re = vals.real
    if support_eps is not None:
        top = re.max()
        re = re[re > support_eps * top] if top > 0 else re[:0]
        if re.size == 0:
            return 0.0, 0.0
    return float(re.min()), float(re.max())
