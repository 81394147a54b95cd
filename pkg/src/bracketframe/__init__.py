"""Function-valued inner products on sampled signals, and Gabor frame analysis built on them."""
from .bracket import BracketFn, a_norm, a_norm_sq, bracket, ess_range, normalize_a, scale_by_periodic
from .errors import (
    ADependent,
    BadParameter,
    BracketFrameError,
    EmptyProbeSet,
    GridMismatch,
    IncompatibleDilation,
    IndexOutOfRange,
    LatticeNotCritical,
    NotConverged,
    NotFactorable,
    NotRealValued,
    SingularFrameOperator,
    UnknownWindow,
    ZeroWindow,
)
from .gabor import (
    WHSystem,
    a_frame_bounds,
    completeness_check,
    fiber_energy,
    frame_operator_compressed,
    frame_operator_naive,
    frame_reconstruct,
    gk_function,
    riesz_sequence_bounds,
    spectral_frame_bounds,
    tight_frame_check,
    wh_coefficient,
    wh_frame_identity,
)
from .ortho import (
    AOrthoSystem,
    bessel_defect,
    gram_schmidt,
    is_a_orthogonal,
    project_modulation_span,
    project_multi,
    riesz_representer,
)
from .report import FrameReport, analyze
from .signal import (
    LatticeGrid,
    PeriodicSignal,
    SampledSignal,
    dilate,
    dilate_periodic,
    inner_product,
    modulate,
    translate,
    wiener_amalgam_norm,
)

__version__ = "0.1.0"


__all__ = [
    "ADependent",
    "AOrthoSystem",
    "BadParameter",
    "BracketFn",
    "BracketFrameError",
    "EmptyProbeSet",
    "FrameReport",
    "GridMismatch",
    "IncompatibleDilation",
    "IndexOutOfRange",
    "LatticeGrid",
    "LatticeNotCritical",
    "NotConverged",
    "NotFactorable",
    "NotRealValued",
    "PeriodicSignal",
    "SampledSignal",
    "SingularFrameOperator",
    "UnknownWindow",
    "WHSystem",
    "ZeroWindow",
    "a_frame_bounds",
    "a_norm",
    "a_norm_sq",
    "analyze",
    "bessel_defect",
    "bracket",
    "completeness_check",
    "dilate",
    "dilate_periodic",
    "ess_range",
    "fiber_energy",
    "frame_operator_compressed",
    "frame_operator_naive",
    "frame_reconstruct",
    "gk_function",
    "gram_schmidt",
    "inner_product",
    "is_a_orthogonal",
    "modulate",
    "normalize_a",
    "project_modulation_span",
    "project_multi",
    "riesz_representer",
    "riesz_sequence_bounds",
    "scale_by_periodic",
    "spectral_frame_bounds",
    "tight_frame_check",
    "translate",
    "wh_coefficient",
    "wh_frame_identity",
    "wiener_amalgam_norm",
]
