"""Sampled signals on commensurate lattice grids.

A :class:`LatticeGrid` fixes the sampling step ``dt = 1/L`` together with the
shift ``a = p/L`` and the modulation period ``1/b = q/L``.  Because both ``a``
and ``1/b`` are integer multiples of ``dt``, every translation used by the
Gabor machinery is an exact index shift and no interpolation is ever needed.

Signals are compactly supported: a :class:`SampledSignal` stores an integer
offset and a finite block of complex samples, sample ``j`` sitting at
``t = (offset + j) * dt``.  Everything outside the block is zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import numpy as np

from .errors import BadParameter, GridMismatch, IncompatibleDilation

Period = Union[str, int]

_PERIOD_NAMES = ("shift_a", "inv_b")


@dataclass(frozen=True)
class LatticeGrid:
    """Sampling grid with exactly representable Gabor lattice parameters.

    Parameters
    ----------
    L : int
        Grid density; the sample step is ``1/L``.
    p : int
        Shift parameter in steps, ``a = p/L``.
    q : int
        Modulation period in steps, ``1/b = q/L`` (so ``b = L/q``).
    """

    L: int
    p: int
    q: int

    def __post_init__(self):
        for name in ("L", "p", "q"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value <= 0:
                raise BadParameter(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))

    @property
    def dt(self) -> float:
        return 1.0 / self.L

    @property
    def a(self) -> Fraction:
        return Fraction(self.p, self.L)

    @property
    def b(self) -> Fraction:
        return Fraction(self.L, self.q)

    @property
    def inv_b(self) -> Fraction:
        return Fraction(self.q, self.L)

    @property
    def ab_rational(self) -> tuple[int, int]:
        """``ab = p/q`` as a reduced pair ``(num, den)``."""
        g = math.gcd(self.p, self.q)
        return self.p // g, self.q // g

    @property
    def is_critical(self) -> bool:
        return self.p == self.q

    def period_steps(self, period: Period) -> int:
        """Translate a period selector into a number of grid steps.

        ``"shift_a"`` gives ``p``, ``"inv_b"`` gives ``q``; a positive integer
        is taken as a raw step count.
        """
        if isinstance(period, str):
            if period == "shift_a":
                return self.p
            if period == "inv_b":
                return self.q
            raise BadParameter(f"unknown period {period!r}; expected one of {_PERIOD_NAMES}")
        steps = int(period)
        if steps <= 0 or steps != period:
            raise BadParameter(f"period must be a positive integer number of steps, got {period!r}")
        return steps


def _as_samples(samples) -> np.ndarray:
    arr = np.array(samples, dtype=np.complex128).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Compactly supported complex signal on a :class:`LatticeGrid`."""

    grid: LatticeGrid
    offset: int
    samples: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "offset", int(self.offset))
        object.__setattr__(self, "samples", _as_samples(self.samples))

    # -- construction -----------------------------------------------------
    @classmethod
    def zeros(cls, grid: LatticeGrid, start: int = 0, length: int = 0) -> "SampledSignal":
        return cls(grid, start, np.zeros(length, dtype=np.complex128))

    @classmethod
    def from_function(cls, grid: LatticeGrid, fn: Callable, start: int, stop: int) -> "SampledSignal":
        """Sample ``fn(t)`` at the grid points ``start <= j < stop``."""
        t = np.arange(start, stop) / grid.L
        return cls(grid, start, fn(t))

    @classmethod
    def indicator(cls, grid: LatticeGrid, start_steps: int, len_steps: int) -> "SampledSignal":
        """Indicator of ``[start_steps*dt, (start_steps+len_steps)*dt)``."""
        if len_steps < 0:
            raise BadParameter("indicator length must be non-negative")
        return cls(grid, start_steps, np.ones(len_steps))

    @classmethod
    def gaussian(cls, grid: LatticeGrid, c: float = 1.0, halfwidth: float = 8.0) -> "SampledSignal":
        """``exp(-c t^2)`` sampled on ``[-halfwidth, halfwidth)``."""
        if c <= 0 or halfwidth <= 0:
            raise BadParameter("gaussian needs c > 0 and halfwidth > 0")
        n = int(round(halfwidth * grid.L))
        return cls.from_function(grid, lambda t: np.exp(-c * t * t), -n, n)

    # -- support ----------------------------------------------------------
    @property
    def start(self) -> int:
        return self.offset

    @property
    def stop(self) -> int:
        return self.offset + self.samples.size

    def __len__(self):
        return self.samples.size

    def indices(self) -> np.ndarray:
        return np.arange(self.start, self.stop)

    def times(self) -> np.ndarray:
        return self.indices() / self.grid.L

    def window(self, start: int, stop: int) -> np.ndarray:
        """Samples on the index range ``[start, stop)``, zero outside the support."""
        out = np.zeros(max(stop - start, 0), dtype=np.complex128)
        lo, hi = max(start, self.start), min(stop, self.stop)
        if lo < hi:
            out[lo - start:hi - start] = self.samples[lo - self.start:hi - self.start]
        return out

    def restrict(self, start: int, stop: int) -> "SampledSignal":
        """The signal cut (or zero-padded) to exactly ``[start, stop)``."""
        return SampledSignal(self.grid, start, self.window(start, stop))

    def trimmed(self, tol: float = 0.0) -> "SampledSignal":
        """Drop leading and trailing samples with modulus ``<= tol``."""
        nz = np.flatnonzero(np.abs(self.samples) > tol)
        if nz.size == 0:
            return SampledSignal.zeros(self.grid, self.start)
        return SampledSignal(self.grid, self.start + nz[0], self.samples[nz[0]:nz[-1] + 1])

    def with_samples(self, samples) -> "SampledSignal":
        return SampledSignal(self.grid, self.offset, samples)

    # -- algebra ----------------------------------------------------------
    def _binary(self, other: "SampledSignal", op) -> "SampledSignal":
        check_same_grid(self, other)
        lo, hi = min(self.start, other.start), max(self.stop, other.stop)
        if len(self) == 0:
            lo, hi = other.start, other.stop
        elif len(other) == 0:
            lo, hi = self.start, self.stop
        return SampledSignal(self.grid, lo, op(self.window(lo, hi), other.window(lo, hi)))

    def __add__(self, other):
        if not isinstance(other, SampledSignal):
            return NotImplemented
        return self._binary(other, np.add)

    def __sub__(self, other):
        if not isinstance(other, SampledSignal):
            return NotImplemented
        return self._binary(other, np.subtract)

    def __mul__(self, scalar):
        if isinstance(scalar, SampledSignal):
            return self._binary(scalar, np.multiply)
        return self.with_samples(self.samples * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self.with_samples(self.samples / scalar)

    def __neg__(self):
        return self.with_samples(-self.samples)

    def conj(self) -> "SampledSignal":
        return self.with_samples(np.conj(self.samples))

    def energy(self) -> float:
        """Squared L2 norm by the left-endpoint rule."""
        return float(np.vdot(self.samples, self.samples).real) * self.grid.dt

    def norm(self) -> float:
        return math.sqrt(self.energy())

    def __repr__(self):
        return (f"SampledSignal(L={self.grid.L}, p={self.grid.p}, q={self.grid.q}, "
                f"support=[{self.start}, {self.stop}))")


@dataclass(frozen=True, eq=False)
class PeriodicSignal:
    """One period of a periodic function; the period is ``len(samples) * dt``.

    Sample ``r`` is the value at ``t = r*dt`` (and at every ``t + k*P``).
    """

    grid: LatticeGrid
    samples: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "samples", _as_samples(self.samples))
        if self.samples.size == 0:
            raise BadParameter("a periodic signal needs at least one sample")

    @classmethod
    def constant(cls, grid: LatticeGrid, period_len: int, value=1.0) -> "PeriodicSignal":
        return cls(grid, np.full(period_len, value, dtype=np.complex128))

    @property
    def period_len(self) -> int:
        return self.samples.size

    def __len__(self):
        return self.samples.size

    def times(self) -> np.ndarray:
        return np.arange(self.period_len) / self.grid.L

    def at(self, indices) -> np.ndarray:
        """Values at arbitrary absolute grid indices (wrapping modulo the period)."""
        return self.samples[np.mod(np.asarray(indices), self.period_len)]

    def extend(self, start: int, stop: int) -> np.ndarray:
        """Periodic extension evaluated on the index range ``[start, stop)``."""
        return self.at(np.arange(start, stop))

    def integral(self) -> complex:
        """Integral over one period (left-endpoint rule)."""
        return complex(self.samples.sum() * self.grid.dt)

    def l2_norm_sq(self) -> float:
        return float(np.vdot(self.samples, self.samples).real) * self.grid.dt

    def l1_norm(self) -> float:
        return float(np.abs(self.samples).sum()) * self.grid.dt

    def shifted(self, steps: int) -> "PeriodicSignal":
        """The translate ``T_s h``: value at ``t`` becomes ``h(t - s*dt)``."""
        return PeriodicSignal(self.grid, np.roll(self.samples, steps))

    def with_samples(self, samples) -> "PeriodicSignal":
        return PeriodicSignal(self.grid, samples)

    def _coerce(self, other):
        if isinstance(other, PeriodicSignal):
            if other.grid.L != self.grid.L:
                raise GridMismatch("periodic signals on different grids")
            if other.period_len != self.period_len:
                raise GridMismatch(
                    f"period mismatch: {self.period_len} vs {other.period_len} steps")
            return other.samples
        return other

    def __add__(self, other):
        return self.with_samples(self.samples + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.with_samples(self.samples - self._coerce(other))

    def __rsub__(self, other):
        return self.with_samples(self._coerce(other) - self.samples)

    def __mul__(self, other):
        return self.with_samples(self.samples * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.with_samples(self.samples / self._coerce(other))

    def __neg__(self):
        return self.with_samples(-self.samples)

    def __abs__(self):
        return self.with_samples(np.abs(self.samples))

    def conj(self) -> "PeriodicSignal":
        return self.with_samples(np.conj(self.samples))

    def __repr__(self):
        return f"PeriodicSignal(L={self.grid.L}, period_len={self.period_len})"


def check_same_grid(*signals) -> LatticeGrid:
    """Return the shared grid or raise :class:`GridMismatch`."""
    grid = signals[0].grid
    for s in signals[1:]:
        if s.grid != grid:
            raise GridMismatch(f"grid mismatch: {grid} vs {s.grid}")
    return grid


# ---------------------------------------------------------------------------
# Unitary operators
# ---------------------------------------------------------------------------

def translate(f: SampledSignal, k: int, unit: str = "shift_a") -> SampledSignal:
    """Translate by ``k`` units of ``a`` (``"shift_a"``), ``1/b`` (``"inv_b"``)
    or raw grid steps (``"raw_steps"``).  Pure offset arithmetic."""
    if unit == "raw_steps":
        steps = k
    else:
        steps = k * f.grid.period_steps(unit)
    return SampledSignal(f.grid, f.offset + int(steps), f.samples)


def _unit_phase(indices: np.ndarray, m: int, period_steps: int) -> np.ndarray:
    # exp(2 pi i m j / P) with the exponent reduced modulo P in integers first
    r = np.mod(np.asarray(indices, dtype=np.int64) * int(m), period_steps)
    return np.exp(2j * np.pi * r / period_steps)


def modulate(f: SampledSignal, m: int, unit: str = "mod_b") -> SampledSignal:
    """Multiply by ``exp(2 pi i m beta t)`` with ``beta = b`` (``"mod_b"``) or
    ``beta = 1/a`` (``"inv_a"``)."""
    if unit == "mod_b":
        period = f.grid.q
    elif unit == "inv_a":
        period = f.grid.p
    else:
        raise BadParameter(f"unknown modulation unit {unit!r}")
    if m % period == 0:
        return f
    return f.with_samples(f.samples * _unit_phase(f.indices(), m, period))


def _dilated_grid(grid: LatticeGrid, num: int, den: int) -> tuple[LatticeGrid, bool]:
    if num == 0 or den == 0:
        raise IncompatibleDilation("dilation factor must be non-zero")
    new_L = Fraction(grid.L * abs(den), abs(num))
    if new_L.denominator != 1:
        raise IncompatibleDilation(
            f"dilation by {num}/{den} maps L={grid.L} to non-integer {new_L}")
    return LatticeGrid(int(new_L), grid.p, grid.q), (num < 0) != (den < 0)


def dilate(f: SampledSignal, num: int, den: int = 1) -> SampledSignal:
    """``D_c f(t) = |c|^{-1/2} f(t/c)`` with ``c = num/den``.

    The result lives on a grid of density ``L * den / num`` carrying the same
    ``p`` and ``q`` step counts, so the lattice is dilated along with the
    signal.  Sample values are reused unchanged up to the ``|c|^{-1/2}``
    factor (and an index reflection when ``c < 0``).
    """
    grid, reflect = _dilated_grid(f.grid, num, den)
    scale = math.sqrt(abs(den) / abs(num))
    if reflect:
        return SampledSignal(grid, -(f.stop - 1), scale * f.samples[::-1])
    return SampledSignal(grid, f.offset, scale * f.samples)


def dilate_periodic(h: PeriodicSignal, num: int, den: int = 1) -> PeriodicSignal:
    """Dilation of a periodic function; the period scales by ``num/den``."""
    grid, reflect = _dilated_grid(h.grid, num, den)
    scale = math.sqrt(abs(den) / abs(num))
    samples = h.samples
    if reflect:
        samples = np.roll(samples[::-1], 1)
    return PeriodicSignal(grid, scale * samples)


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

def inner_product(f: SampledSignal, g: SampledSignal) -> complex:
    """``<f, g> = dt * sum_j f_j conj(g_j)`` over the common support."""
    grid = check_same_grid(f, g)
    lo, hi = max(f.start, g.start), min(f.stop, g.stop)
    if lo >= hi:
        return 0j
    fs = f.samples[lo - f.start:hi - f.start]
    gs = g.samples[lo - g.start:hi - g.start]
    return complex(np.vdot(gs, fs)) * grid.dt


def wiener_amalgam_norm(g: SampledSignal, a_steps: int) -> float:
    """Sum over the cells ``[n a, (n+1) a)`` of the largest ``|g|`` in each cell."""
    if a_steps <= 0:
        raise BadParameter("a_steps must be positive")
    if len(g) == 0:
        return 0.0
    cells = np.floor_divide(g.indices(), a_steps)
    _, first = np.unique(cells, return_index=True)
    return float(np.maximum.reduceat(np.abs(g.samples), first).sum())
