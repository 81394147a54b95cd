import sys

import numpy as np
import pytest

from bracketframe import LatticeGrid, SampledSignal


def random_signal(rng, grid, start, length, real=False):
    z = rng.standard_normal(length)
    if not real:
        z = z + 1j * rng.standard_normal(length)
    return SampledSignal(grid, start, z)


def random_supported(rng, grid, lo=-150, hi=150, min_len=1):
    start = int(rng.integers(lo, hi - min_len))
    length = int(rng.integers(min_len, hi - start + 1))
    return random_signal(rng, grid, start, length)


def rel_err(x, y):
    x, y = np.asarray(x), np.asarray(y)
    scale = max(np.abs(x).max(initial=0.0), np.abs(y).max(initial=0.0), 1e-300)
    return float(np.abs(x - y).max(initial=0.0) / scale)


def signal_err(f, g):
    """Relative sup-norm distance between two signals on the union of supports."""
    lo, hi = min(f.start, g.start), max(f.stop, g.stop)
    return rel_err(f.window(lo, hi), g.window(lo, hi))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def grid64():
    return LatticeGrid(64, 64, 64)


LATTICES = [(1, 1), (1, 2), (2, 3)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.format_result(n))
