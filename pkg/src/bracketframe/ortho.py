"""Orthogonality with respect to bracket products.

Two signals are P-orthogonal when their bracket vanishes identically, which is
the same as saying that the modulation spans ``span_m E_{m/P} f`` and
``span_m E_{m/P} g`` are orthogonal in L2.  This module provides the
orthogonality test, the Gram-Schmidt process, Bessel defects, the orthogonal
projections onto modulation spans and the construction of a representing
window for an operator that commutes with periodic multipliers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .bracket import _divide_by_norm, a_norm_sq, bracket, scale_by_periodic
from .errors import ADependent, BadParameter, GridMismatch, NotFactorable, ZeroWindow
from .signal import (
    LatticeGrid,
    Period,
    PeriodicSignal,
    SampledSignal,
    _unit_phase,
    check_same_grid,
    inner_product,
)

DEFAULT_DEP_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class AOrthoSystem:
    """A finite family whose members are pairwise orthogonal in the bracket
    product of the given period and have unit pointwise norm on their support."""

    grid: LatticeGrid
    period: Period
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        for e in self.members:
            if e.grid != self.grid:
                raise GridMismatch("system member on a different grid")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    @property
    def period_steps(self) -> int:
        return self.grid.period_steps(self.period)

    def pairwise_residual(self) -> float:
        """Largest ``|[e_i, e_j]|`` over ``i != j``."""
        worst = 0.0
        for i, ei in enumerate(self.members):
            for ej in self.members[i + 1:]:
                worst = max(worst, float(np.abs(bracket(ei, ej, self.period).samples).max()))
        return worst

    def normalization_residual(self) -> float:
        """Largest distance of ``[e_i, e_i]`` from the nearest of {0, 1}."""
        worst = 0.0
        for e in self.members:
            v = a_norm_sq(e, self.period)
            worst = max(worst, float(np.minimum(np.abs(v), np.abs(v - 1.0)).max()))
        return worst


def is_a_orthogonal(f: SampledSignal, g: SampledSignal, period: Period = "shift_a",
                    tol: float = 1e-10) -> tuple[bool, float]:
    """Test ``[f, g]_P == 0``.

    Returns
    -------
    ok : bool
        ``residual <= tol * max||f||_P * max||g||_P``.
    residual : float
        ``max_t |[f, g]_P(t)|``.
    """
    residual = float(np.abs(bracket(f, g, period).samples).max())
    scale = np.sqrt(a_norm_sq(f, period).max() * a_norm_sq(g, period).max())
    return residual <= tol * scale, residual


def _subtract_projections(h: SampledSignal, basis, period) -> SampledSignal:
    for e in basis:
        h = h - scale_by_periodic(e, bracket(h, e, period))
    return h


def gram_schmidt(gs: Sequence[SampledSignal], period: Period = "shift_a",
                 dep_tol: float = DEFAULT_DEP_TOL) -> AOrthoSystem:
    """Orthonormalize ``gs`` in the bracket product of period ``P``.

    ``e_1 = N(g_1)`` and ``e_{n+1} = N(g_{n+1} - sum_i [g_{n+1}, e_i] e_i)``,
    where ``N`` is pointwise normalization.  The coefficients ``[g, e_i]`` are
    periodic functions, so each step removes the whole modulation span of the
    previous members, not a single direction.

    Raises
    ------
    ADependent
        If the residual of some input has pointwise norm below
        ``dep_tol * max||g_n||_P`` everywhere.
    """
    if not gs:
        raise BadParameter("gram_schmidt needs at least one input")
    grid = check_same_grid(*gs)
    basis: list[SampledSignal] = []
    for index, g in enumerate(gs):
        scale = float(np.sqrt(a_norm_sq(g, period).max()))
        # second pass restores orthogonality lost to cancellation
        h = _subtract_projections(g, basis, period)
        h = _subtract_projections(h, basis, period)
        norm = np.sqrt(a_norm_sq(h, period))
        threshold = dep_tol * scale
        if scale == 0 or norm.max() <= threshold:
            raise ADependent(index)
        basis.append(_divide_by_norm(h, norm, threshold).trimmed())
    return AOrthoSystem(grid, period, basis)


def bessel_defect(f: SampledSignal, system: AOrthoSystem) -> PeriodicSignal:
    """``[f, f]_P - sum_n |[f, e_n]_P|^2`` as a function on one period."""
    defect = a_norm_sq(f, system.period).astype(np.complex128)
    for e in system:
        defect = defect - np.abs(bracket(f, e, system.period).samples) ** 2
    return PeriodicSignal(f.grid, defect)


def project_modulation_span(f: SampledSignal, g: SampledSignal, period: Period = "inv_b",
                            eps: float = 0.0) -> SampledSignal:
    """Orthogonal projection of ``f`` onto ``span_m E_{m/P} g``.

    ``Pf = [f, g]_P / ||g||_P^2 * g``; where ``||g||_P`` vanishes the quotient
    is taken to be zero.
    """
    grid = check_same_grid(f, g)
    nsq = a_norm_sq(g, period)
    if nsq.max() == 0:
        raise ZeroWindow("cannot project onto the span of a zero window")
    coef = bracket(f, g, period).samples
    keep = nsq > eps * nsq.max()
    ratio = np.zeros_like(coef)
    ratio[keep] = coef[keep] / nsq[keep]
    return scale_by_periodic(g, PeriodicSignal(grid, ratio))


def _sum_signals(signals, grid, default_start=0) -> SampledSignal:
    signals = [s for s in signals if len(s)]
    if not signals:
        return SampledSignal.zeros(grid, default_start)
    lo = min(s.start for s in signals)
    hi = max(s.stop for s in signals)
    out = np.zeros(hi - lo, dtype=np.complex128)
    for s in signals:
        out[s.start - lo:s.stop - lo] += s.samples
    return SampledSignal(grid, lo, out)


def project_multi(f: SampledSignal, system: AOrthoSystem) -> SampledSignal:
    """``sum_n [f, e_n]_P e_n``: projection onto the joint modulation span."""
    check_same_grid(f, *system.members)
    parts = [scale_by_periodic(e, bracket(f, e, system.period)) for e in system]
    return _sum_signals(parts, f.grid, f.start)


def modulation_gram(members: Sequence[SampledSignal], period: Period, ms: Sequence[int]) -> np.ndarray:
    """Gram matrix of ``P^{-1/2} E_{m/P} g_n`` over ``n`` (outer) and ``m`` (inner).

    For a P-orthonormal family with full pointwise support this is the
    identity.
    """
    grid = check_same_grid(*members)
    P = grid.period_steps(period)
    width = P / grid.L
    family = []
    for g in members:
        for m in ms:
            family.append(g.with_samples(g.samples * _unit_phase(g.indices(), m, P)))
    n = len(family)
    G = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            G[i, j] = inner_product(family[i], family[j]) / width
    return G


# ---------------------------------------------------------------------------
# Riesz representation
# ---------------------------------------------------------------------------

def bracket_operator_norm(g: SampledSignal, period: Period = "shift_a") -> float:
    """Norm of ``f -> [f, g]_P`` as a map into ``L2[0, P]``: ``sqrt(max [g, g]_P)``."""
    return float(np.sqrt(a_norm_sq(g, period).max()))


def _periodic_modulation(h: PeriodicSignal, m: int) -> PeriodicSignal:
    return h.with_samples(h.samples * _unit_phase(np.arange(h.period_len), m, h.period_len))


def check_factorable(op: Callable[[SampledSignal], PeriodicSignal], probes: Sequence[SampledSignal],
                     period: Period, ms=(1, 2), tol: float = 1e-8) -> float:
    """Spot-check that ``op(E_{m/P} f) == E_{m/P} op(f)`` on the probes.

    Returns the largest relative residual, raising :class:`NotFactorable`
    when it exceeds ``tol``.
    """
    worst = 0.0
    for f in probes:
        P = f.grid.period_steps(period)
        base = op(f)
        scale = max(float(np.abs(base.samples).max()), 1e-300)
        for m in ms:
            mod_f = f.with_samples(f.samples * _unit_phase(f.indices(), m, P))
            lhs = op(mod_f).samples
            rhs = _periodic_modulation(base, m).samples
            worst = max(worst, float(np.abs(lhs - rhs).max()) / scale)
    if worst > tol:
        raise NotFactorable(worst)
    return worst


def riesz_representer(op: Callable[[SampledSignal], PeriodicSignal], grid: LatticeGrid,
                      period: Period = "shift_a", k_window: tuple[int, int] = (-8, 8),
                      check: bool = True, n_probes: int = 3, seed: int = 0) -> SampledSignal:
    """Find ``g`` with ``op(f) == [f, g]_P`` for all ``f``.

    The window is assembled cell by cell from the orthonormal indicators
    ``g_k = T_{kP} chi_[0, P)``::

        g = sum_k conj(periodic extension of op(g_k)) * g_k

    Parameters
    ----------
    op : callable
        Linear map from signals to :class:`PeriodicSignal` of period ``P``
        that commutes with multiplication by ``P``-periodic functions.
    k_window : (int, int)
        Half-open range ``[k_lo, k_hi)`` of cells that may carry the window.
    check : bool
        Run :func:`check_factorable` on random probes first.
    """
    P = grid.period_steps(period)
    k_lo, k_hi = k_window
    if k_hi <= k_lo:
        raise BadParameter("k_window must be a non-empty half-open range")
    if check:
        rng = np.random.default_rng(seed)
        n = (k_hi - k_lo) * P
        probes = [SampledSignal(grid, k_lo * P, rng.standard_normal(n) + 1j * rng.standard_normal(n))
                  for _ in range(n_probes)]
        check_factorable(op, probes, P)
    cells = []
    for k in range(k_lo, k_hi):
        out = op(SampledSignal.indicator(grid, k * P, P))
        if out.period_len != P:
            raise BadParameter(f"operator returned period {out.period_len}, expected {P}")
        cells.append(np.conj(out.samples))
    return SampledSignal(grid, k_lo * P, np.concatenate(cells))


def representer_residual(op, g: SampledSignal, probes: Sequence[SampledSignal],
                         period: Period = "shift_a") -> float:
    """``max_f ||op(f) - [f, g]_P||_{L1[0,P]} / ||f||`` over the probes."""
    worst = 0.0
    for f in probes:
        diff = op(f) - bracket(f, g, period)
        worst = max(worst, diff.l1_norm() / max(f.norm(), 1e-300))
    return worst
