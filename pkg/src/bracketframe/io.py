"""JSON serialization of signals and periodic functions.

Floats are written with ``repr`` precision by the standard ``json`` module, so
a dump/load round trip reproduces every sample bit for bit.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import BadParameter, GridMismatch
from .signal import LatticeGrid, PeriodicSignal, SampledSignal


def _grid_fields(grid: LatticeGrid) -> dict:
    return {"L": grid.L, "p": grid.p, "q": grid.q}


def signal_to_dict(f: SampledSignal) -> dict:
    d = _grid_fields(f.grid)
    d.update(offset=f.offset, re=f.samples.real.tolist(), im=f.samples.imag.tolist())
    return d


def periodic_to_dict(h: PeriodicSignal) -> dict:
    d = _grid_fields(h.grid)
    d.update(offset=0, period_steps=h.period_len,
             re=h.samples.real.tolist(), im=h.samples.imag.tolist())
    return d


def _grid_from(d: dict, grid: LatticeGrid | None) -> LatticeGrid:
    try:
        L = int(d["L"])
    except (KeyError, TypeError, ValueError) as exc:
        raise BadParameter(f"signal JSON needs an integer 'L' ({exc})") from None
    if grid is not None:
        if grid.L != L:
            raise GridMismatch(f"signal sampled at L={L}, expected L={grid.L}")
        return grid
    return LatticeGrid(L, int(d.get("p", L)), int(d.get("q", L)))


def _complex(d: dict) -> np.ndarray:
    try:
        re = np.asarray(d["re"], dtype=np.float64)
        im = np.asarray(d.get("im", np.zeros_like(re)), dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise BadParameter(f"signal JSON needs numeric 're'/'im' arrays ({exc})") from None
    if re.shape != im.shape or re.ndim != 1:
        raise BadParameter("'re' and 'im' must be 1-d arrays of equal length")
    out = np.empty(re.shape, dtype=np.complex128)
    out.real, out.imag = re, im
    return out


def signal_from_dict(d: dict, grid: LatticeGrid | None = None) -> SampledSignal:
    """Inverse of :func:`signal_to_dict`.

    A supplied ``grid`` overrides the lattice fields but must agree on ``L``.
    """
    if not isinstance(d, dict):
        raise BadParameter("signal JSON must be an object")
    return SampledSignal(_grid_from(d, grid), int(d.get("offset", 0)), _complex(d))


def periodic_from_dict(d: dict, grid: LatticeGrid | None = None) -> PeriodicSignal:
    h = PeriodicSignal(_grid_from(d, grid), _complex(d))
    if "period_steps" in d and int(d["period_steps"]) != h.period_len:
        raise BadParameter("period_steps does not match the number of samples")
    return h


def _read_json(path):
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except FileNotFoundError:
        raise BadParameter(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise BadParameter(f"malformed JSON in {path}: {exc.msg} at line {exc.lineno}") from None


def load_signal(path, grid: LatticeGrid | None = None) -> SampledSignal:
    return signal_from_dict(_read_json(path), grid)


def load_signals(path, grid: LatticeGrid | None = None) -> list:
    """Load a single signal object or a list of them (or ``{"signals": [...]}``)."""
    data = _read_json(path)
    if isinstance(data, dict) and "signals" in data:
        data = data["signals"]
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list) or not data:
        raise BadParameter(f"{path}: expected a signal or a non-empty list of signals")
    return [signal_from_dict(d, grid) for d in data]


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


def save_signal(f: SampledSignal, path) -> None:
    dump_json(signal_to_dict(f), path)
