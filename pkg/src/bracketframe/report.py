"""Aggregate verdicts for a Gabor system into one serializable record."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .gabor import (
    WHSystem,
    a_frame_bounds,
    completeness_check,
    default_probes,
    extremal_probes,
    gk_function,
    riesz_sequence_bounds,
    shift_energy,
    spectral_frame_bounds,
    tight_frame_check,
)
from .bracket import ess_range
from .errors import NotConverged, SingularFrameOperator
from .signal import SampledSignal


@dataclass
class Tolerances:
    tol: float = 1e-10
    zero_tol: float = 1e-6
    spectral_tol: float = 1e-9
    spectral_iters: int = 5000
    spectral_method: str = "lanczos"
    probe_eps: float = 1e-12


@dataclass
class FrameReport:
    """Numbers and verdicts for ``(g, a, b)``.

    ``G0_over_b_range`` is the range of ``G_0 / b``, the quantity that is
    squeezed between the frame bounds.  ``spectral_bounds`` come from the
    frame operator compressed to ``analysis_window`` and are not forced into
    that range.
    """

    lattice: dict
    ab: list
    ab_le_1: bool
    G0_range: tuple
    G0_over_b_range: tuple
    Gk_residuals: dict
    tight: bool
    tight_deviation: float
    normalized_tight: bool
    orthonormal_basis: bool
    frame_bound: Optional[float]
    gram_residual: float
    norm_defect: float
    riesz_bounds: tuple
    riesz_bounds_svd: tuple
    spectral_bounds: Optional[tuple]
    spectral_error: Optional[str]
    a_frame_bounds: tuple
    n_probes: int
    inv_b_shift_energy_max: float
    analysis_window: tuple
    tolerances: dict
    completeness: Optional[dict] = None
    is_frame: Optional[bool] = field(default=None)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["Gk_residuals"] = {str(k): v for k, v in self.Gk_residuals.items()}
        for key in ("G0_range", "G0_over_b_range", "riesz_bounds", "riesz_bounds_svd",
                    "spectral_bounds", "a_frame_bounds", "analysis_window"):
            if d[key] is not None:
                d[key] = list(d[key])
        return d


def analyze(g: SampledSignal, window: Optional[tuple] = None, tolerances: Optional[Tolerances] = None,
            n_probes: int = 20, seed: int = 0) -> FrameReport:
    """Run every frame test on ``g`` and collect the results."""
    tols = tolerances or Tolerances()
    sys = WHSystem(g, window)
    grid = sys.grid
    b = sys.b
    p_ab, q_ab = grid.ab_rational

    G0 = ess_range(gk_function(g, 0))
    tv = tight_frame_check(sys, tol=tols.tol)
    riesz = riesz_sequence_bounds(g, "shift_a")

    spectral, spectral_error = None, None
    try:
        spectral = spectral_frame_bounds(sys, iters=tols.spectral_iters, tol=tols.spectral_tol,
                                         seed=seed, method=tols.spectral_method)
    except (NotConverged, SingularFrameOperator) as exc:
        spectral_error = str(exc)

    # random probes alone sit near the spectral mean; the two Ritz vectors
    # pull the probed range out to the spectral edges
    probes = default_probes(grid, sys.window, max(n_probes - 2, 1), seed)
    if spectral is not None:
        try:
            probes = extremal_probes(sys, tol=tols.spectral_tol, seed=seed) + probes
        except NotConverged:
            pass
    afb = a_frame_bounds(g, probes, tols.probe_eps)

    completeness = None
    if grid.p == grid.q:
        cv = completeness_check(g, zero_tol=tols.zero_tol)
        completeness = asdict(cv)

    is_frame = None
    if spectral is not None:
        is_frame = bool(spectral[0] > tols.tol * max(spectral[1], 1.0))

    return FrameReport(
        lattice={"L": grid.L, "p": grid.p, "q": grid.q},
        ab=[p_ab, q_ab],
        ab_le_1=p_ab <= q_ab,
        G0_range=G0,
        G0_over_b_range=(G0[0] / b, G0[1] / b),
        Gk_residuals=tv.Gk_residuals,
        tight=tv.tight,
        tight_deviation=tv.deviation,
        normalized_tight=tv.normalized_tight,
        orthonormal_basis=tv.orthonormal_basis,
        frame_bound=tv.frame_bound,
        gram_residual=tv.gram_residual,
        norm_defect=tv.norm_defect,
        riesz_bounds=(riesz.lower, riesz.upper),
        riesz_bounds_svd=(riesz.sv_lower, riesz.sv_upper),
        spectral_bounds=spectral,
        spectral_error=spectral_error,
        a_frame_bounds=afb,
        n_probes=n_probes,
        inv_b_shift_energy_max=float(np.max(shift_energy(g, grid.q))),
        analysis_window=sys.window,
        tolerances=asdict(tols),
        completeness=completeness,
        is_frame=is_frame,
    )
