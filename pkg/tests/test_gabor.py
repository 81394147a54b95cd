import math

import numpy as np
import pytest

from bracketframe import (
    EmptyProbeSet,
    IndexOutOfRange,
    LatticeGrid,
    LatticeNotCritical,
    SampledSignal,
    WHSystem,
    ZeroWindow,
    a_frame_bounds,
    bracket,
    completeness_check,
    ess_range,
    fiber_energy,
    frame_operator_compressed,
    frame_operator_naive,
    frame_reconstruct,
    gk_function,
    inner_product,
    modulate,
    riesz_sequence_bounds,
    spectral_frame_bounds,
    tight_frame_check,
    translate,
    wh_coefficient,
    wh_frame_identity,
)
from bracketframe.gabor import (
    a_frame_ratios,
    default_probes,
    extremal_probes,
    fourier_proxy,
    frame_operator_matrix,
    gk_residuals,
    inv_b_translates_gram,
    shift_energy,
    tight_projection,
    wh_coefficients,
    zak_fiber,
)
from conftest import LATTICES, random_signal, rel_err, signal_err

# sum_n exp(-n^2) exp(-(n+1)^2) over |n| <= 10
G1_AT_0 = sum(math.exp(-n * n - (n + 1) ** 2) for n in range(-10, 11))


def chi(grid, start, length):
    return SampledSignal.indicator(grid, start, length)


@pytest.fixture
def onb():
    grid = LatticeGrid(32, 32, 32)
    return WHSystem(chi(grid, 0, 32))


@pytest.fixture
def tight2():
    grid = LatticeGrid(32, 32, 64)
    return WHSystem(chi(grid, 0, 32))


# -- G_k ----------------------------------------------------------------------

def test_g0_indicator(onb):
    assert np.array_equal(gk_function(onb.g, 0).samples, np.ones(32))


def test_g1_vanishes_when_supports_shorter_than_inv_b(tight2):
    assert not np.any(gk_function(tight2.g, 1).samples)
    assert gk_residuals(tight2.g) == {}


def test_g1_gaussian_oracle():
    assert abs(G1_AT_0 - 0.7492392970276455) < 1e-15
    grid = LatticeGrid(64, 64, 64)
    g = SampledSignal.gaussian(grid, 1.0, 8.0)
    assert abs(gk_function(g, 1).samples[0] - G1_AT_0) < 1e-12
    assert abs(gk_function(g, 1).samples[0] - gk_function(g, -1).samples[0]) < 1e-15


def test_g0_real_nonnegative(rng):
    grid = LatticeGrid(16, 8, 24)
    g = random_signal(rng, grid, -20, 60)
    G0 = gk_function(g, 0).samples
    assert np.abs(G0.imag).max() == 0 and G0.real.min() >= 0


def test_gk_range_exact(rng):
    grid = LatticeGrid(16, 8, 24)
    g = random_signal(rng, grid, -20, 60)
    kmax = WHSystem(g).k_max()
    assert np.any(gk_function(g, kmax).samples)
    assert not np.any(gk_function(g, kmax + 1).samples)


# -- coefficients -----------------------------------------------------------------

def test_coefficient_examples(onb):
    g = onb.g
    assert wh_coefficient(g, onb, 0, 0) == pytest.approx(1.0, abs=1e-15)
    assert wh_coefficient(g, onb, 0, 1) == 0
    assert abs(wh_coefficient(g, onb, 5, 0)) < 1e-15


def test_coefficient_quadrature_oracle():
    grid = LatticeGrid(512, 512, 1024)
    g = chi(grid, 0, 512)
    c = wh_coefficient(g, WHSystem(g), 1, 0)
    # the left Riemann sum has the closed form dt / sin(pi dt / 2) in modulus
    dt = 1 / 512
    assert abs(abs(c) - dt / math.sin(math.pi * dt / 2)) < 1e-14
    assert abs(abs(c) - 2 / math.pi) < 1e-6


def test_coefficient_matches_definition(rng):
    grid = LatticeGrid(16, 8, 24)
    g = random_signal(rng, grid, -5, 30)
    f = random_signal(rng, grid, -20, 70)
    for m, n in [(0, 0), (3, -1), (23, 2)]:
        ref = inner_product(f, modulate(translate(g, n, "shift_a"), m, "mod_b"))
        assert abs(wh_coefficient(f, WHSystem(g), m, n) - ref) < 1e-13


def test_coefficient_index_range(onb):
    with pytest.raises(IndexOutOfRange):
        wh_coefficient(onb.g, onb, 32, 0)
    with pytest.raises(IndexOutOfRange):
        wh_coefficient(onb.g, onb, -1, 0)


# -- fiberization and compression ---------------------------------------------------

def test_fiber_energy_examples(onb):
    assert fiber_energy(onb.g, onb, 0) == pytest.approx(1.0, abs=1e-15)
    assert fiber_energy(onb.g, onb, 3) == 0.0


@pytest.mark.parametrize("p,q", LATTICES)
def test_fiber_energy_matches_coefficients(rng, p, q):
    grid = LatticeGrid(64, 64 * p, 64 * q)
    for _ in range(4):
        g = random_signal(rng, grid, int(rng.integers(-100, 0)), int(rng.integers(20, 200)))
        f = random_signal(rng, grid, int(rng.integers(-200, 0)), int(rng.integers(20, 400)))
        sysw = WHSystem(g)
        ns, coef = wh_coefficients(f, sysw)
        for i, n in enumerate(ns):
            naive = float(np.sum(np.abs(coef[i]) ** 2))
            assert abs(naive - fiber_energy(f, sysw, n)) <= 1e-10 * max(naive, 1e-300)


def test_frame_operator_examples(onb, tight2, rng):
    f = random_signal(rng, onb.grid, -50, 130)
    for op in (frame_operator_naive, frame_operator_compressed):
        assert signal_err(op(f, onb), f) < 1e-10
    f2 = random_signal(rng, tight2.grid, -50, 130)
    for op in (frame_operator_naive, frame_operator_compressed):
        assert signal_err(op(f2, tight2), 2 * f2) < 1e-10
    zero = SampledSignal.zeros(onb.grid, 0, 10)
    assert not np.any(frame_operator_compressed(zero, onb).samples)


def test_gaussian_reproduced_by_onb():
    grid = LatticeGrid(64, 64, 64)
    sysw = WHSystem(chi(grid, 0, 64))
    f = SampledSignal.gaussian(grid, 1.0, 8.0)
    assert signal_err(frame_operator_compressed(f, sysw), f) < 1e-10


@pytest.mark.parametrize("p,q", LATTICES)
def test_compression_forms_agree(rng, p, q):
    grid = LatticeGrid(64, 64 * p, 64 * q)
    for _ in range(3):
        g = random_signal(rng, grid, int(rng.integers(-100, 0)), int(rng.integers(20, 200)))
        f = random_signal(rng, grid, int(rng.integers(-200, 0)), int(rng.integers(20, 400)))
        sysw = WHSystem(g)
        naive = frame_operator_naive(f, sysw)
        assert signal_err(frame_operator_compressed(f, sysw), naive) <= 1e-10
        assert signal_err(frame_operator_compressed(f, sysw, "projection"), naive) <= 1e-10


def test_frame_operator_structure(rng):
    grid = LatticeGrid(16, 8, 24)
    sysw = WHSystem(random_signal(rng, grid, -10, 40))
    f = random_signal(rng, grid, -30, 80)
    h = random_signal(rng, grid, -20, 60)
    Sf, Sh = frame_operator_compressed(f, sysw), frame_operator_compressed(h, sysw)
    # self-adjoint and positive
    assert abs(inner_product(Sf, h) - inner_product(f, Sh)) <= 1e-10 * Sf.norm() * h.norm()
    assert inner_product(Sf, f).real >= -1e-10
    # commutes with E_mb and with T_a
    for m in (1, 5):
        lhs = frame_operator_compressed(modulate(f, m), sysw)
        assert signal_err(lhs, modulate(Sf, m)) < 1e-10
    assert signal_err(frame_operator_compressed(translate(f, 1), sysw), translate(Sf, 1)) < 1e-10
    # bracket adjoint identity in the 1/b bracket
    assert rel_err(bracket(Sf, h, "inv_b").samples, bracket(f, Sh, "inv_b").samples) < 1e-10


def test_unknown_form(onb):
    from bracketframe import BadParameter

    with pytest.raises(BadParameter):
        frame_operator_compressed(onb.g, onb, "fourier")


# -- WH-frame identity ---------------------------------------------------------------

def test_identity_tight_indicator(tight2, rng):
    f = random_signal(rng, tight2.grid, -60, 200)
    w = wh_frame_identity(f, tight2.g)
    assert w.F2 == 0.0
    assert math.isclose(w.F1, 2 * f.energy(), rel_tol=1e-12)
    assert math.isclose(w.total_direct, w.F1, rel_tol=1e-10)


def test_identity_short_support_has_no_cross_terms(rng):
    grid = LatticeGrid(16, 16, 32)
    g = SampledSignal.gaussian(grid, 1.0, 4.0)
    f = random_signal(rng, grid, 3, 32)  # support inside [0, 1/b]
    assert abs(wh_frame_identity(f, g).F2) <= 1e-12


def test_identity_gaussian_three_way(rng):
    grid = LatticeGrid(64, 64, 64)
    g = SampledSignal.gaussian(grid, 1.0, 8.0)
    for _ in range(3):
        f = random_signal(rng, grid, int(rng.integers(-300, 0)), int(rng.integers(50, 400)))
        w = wh_frame_identity(f, g)
        assert abs(w.total - w.total_direct) <= 1e-8 * w.total_direct
        assert abs(w.total - w.bracket_form) <= 1e-10 * w.total_direct


# -- tightness -----------------------------------------------------------------------

def test_tight_verdicts(onb, tight2):
    v = tight_frame_check(onb)
    assert v.normalized_tight and v.orthonormal_basis and v.frame_bound == 1.0
    assert v.gram_residual < 1e-12 and v.norm_defect == 0.0
    v = tight_frame_check(tight2)
    assert v.tight and not v.normalized_tight and v.frame_bound == 2.0
    assert not v.orthonormal_basis
    g = SampledSignal.gaussian(LatticeGrid(64, 64, 64), 1.0, 8.0)
    v = tight_frame_check(WHSystem(g))
    assert not v.tight
    lo, hi = v.G0_range
    assert abs((hi - lo) - 0.036055) < 1e-6


def test_normalized_tight_restatements():
    grid = LatticeGrid(32, 32, 64)
    g = chi(grid, 0, 32) * (1 / math.sqrt(2))
    v = tight_frame_check(WHSystem(g))
    assert v.normalized_tight and not v.orthonormal_basis
    G = inv_b_translates_gram(g, range(-2, 3))
    eye = np.eye(5)[:, :, None] * np.ones(32)
    assert np.abs(G - eye).max() <= 1e-12


def test_tight_projection_idempotent(rng):
    grid = LatticeGrid(32, 32, 64)
    g = chi(grid, 0, 32) * (1 / math.sqrt(2))
    f = random_signal(rng, grid, -70, 200)
    pf = tight_projection(f, g)
    assert signal_err(tight_projection(pf, g), pf) <= 1e-12
    # the range is the span of the modulated 1/b-translates: signals living on [2k, 2k+1)
    for k in range(-2, 3):
        assert np.abs(pf.window(64 * k + 32, 64 * k + 64)).max(initial=0) == 0
    # with a 1/b^2 weight (here 4 instead of 2) the map is Q = 2P, and
    # Q(Qf) = 4Pf differs from Qf = 2Pf by half its size
    qf = tight_projection(f, g) * 2.0
    qqf = tight_projection(qf, g) * 2.0
    assert abs(signal_err(qqf, qf) - 0.5) < 1e-12


# -- Riesz bounds --------------------------------------------------------------------

def test_riesz_examples():
    grid = LatticeGrid(64, 64, 64)
    rb = riesz_sequence_bounds(chi(grid, 0, 64))
    assert (rb.lower, rb.upper) == (1.0, 1.0)
    rb = riesz_sequence_bounds(chi(grid, 0, 32))
    assert rb.lower == 0.0 and rb.sv_lower == 0.0
    rb = riesz_sequence_bounds(chi(grid, 0, 32), support_restricted=True)
    assert (rb.lower, rb.upper) == (1.0, 1.0)


def test_riesz_gaussian():
    grid = LatticeGrid(64, 64, 64)
    rb = riesz_sequence_bounds(SampledSignal.gaussian(grid, 1.0, 8.0))
    assert abs(rb.lower - 1.235280) < 1e-4 and abs(rb.upper - 1.271341) < 1e-4
    assert abs(rb.sv_lower / rb.lower - 1) < 1e-3 and abs(rb.sv_upper / rb.upper - 1) < 1e-3


def test_riesz_zero_window(onb):
    with pytest.raises(ZeroWindow):
        riesz_sequence_bounds(SampledSignal.zeros(onb.grid, 0, 4))


def test_gaussian_and_fourier_proxy_are_riesz():
    grid = LatticeGrid(64, 64, 64)
    g = SampledSignal.gaussian(grid, 1.0, 8.0)
    ghat = fourier_proxy(g)
    xi = ghat.times()
    assert np.abs(ghat.samples - math.sqrt(math.pi) * np.exp(-math.pi ** 2 * xi ** 2)).max() < 1e-12
    assert riesz_sequence_bounds(g).lower > 1.0
    assert riesz_sequence_bounds(ghat).lower > 0.04


# -- completeness ----------------------------------------------------------------------

def test_completeness_indicators():
    grid = LatticeGrid(64, 64, 64)
    v = completeness_check(chi(grid, 0, 64))
    assert v.verdict == "complete" and v.zero_fraction == 0 and v.verdicts_agree
    v = completeness_check(chi(grid, 0, 32))
    assert v.verdict == "incomplete" and abs(v.zero_fraction - 0.5) <= 1 / 64
    assert not v.sup_complete and v.verdicts_agree


def test_completeness_gaussian():
    grid = LatticeGrid(64, 64, 64)
    g = SampledSignal.gaussian(grid, 1.0, 8.0)
    v = completeness_check(g)
    assert v.verdict == "complete" and v.verdicts_agree
    # frozen: the smallest sampled fiber value, relative to the largest
    assert abs(v.min_ratio - 0.009995434535987108) < 1e-9


def test_gaussian_fiber_has_a_zero():
    # Independent evaluation at y = 1/2, x = 1/2: sum_k exp(-(1/2 - k)^2) (-1)^k
    # cancels in pairs (k, 1 - k), so no positive lower bound on |Z| exists.
    val = sum(math.exp(-(0.5 - k) ** 2) * (-1) ** k for k in range(-20, 21))
    assert abs(val) < 1e-15
    grid = LatticeGrid(64, 64, 64)
    Z = zak_fiber(SampledSignal.gaussian(grid, 1.0, 8.0), x_samples=64, x_offset=0.0)
    assert np.abs(Z[32, 32]) < 1e-12 * np.abs(Z).max()


def test_completeness_random_half_line_windows(rng):
    grid = LatticeGrid(16, 16, 16)
    for _ in range(10):
        g = random_signal(rng, grid, 0, int(rng.integers(4, 60)), real=True)
        v = completeness_check(g)
        assert v.verdicts_agree


def test_completeness_needs_critical_lattice():
    with pytest.raises(LatticeNotCritical):
        completeness_check(chi(LatticeGrid(64, 64, 128), 0, 64))


# -- spectral and a-frame bounds ----------------------------------------------------------

@pytest.mark.parametrize("method", ["power", "lanczos"])
def test_spectral_examples(onb, tight2, method):
    lo, hi = spectral_frame_bounds(onb, method=method)
    assert abs(lo - 1) < 1e-10 and abs(hi - 1) < 1e-10
    lo, hi = spectral_frame_bounds(tight2, method=method)
    assert abs(lo - 2) < 1e-6 and abs(hi - 2) < 1e-6


def test_spectral_gaussian_against_dense_oracle():
    grid = LatticeGrid(32, 32, 64)
    g = SampledSignal.gaussian(grid, 1.0, 4.0)
    sysw = WHSystem(g, window=(-128, 128))
    M = frame_operator_matrix(sysw, naive=True)
    assert np.abs(M - M.conj().T).max() < 1e-12
    ev = np.linalg.eigvalsh(M)
    lo, hi = spectral_frame_bounds(sysw)
    assert abs(lo - ev[0]) < 1e-8 and abs(hi - ev[-1]) < 1e-8
    G0 = ess_range(gk_function(g, 0))
    b = sysw.b
    assert lo <= G0[0] / b + 1e-6 and G0[1] / b <= hi + 1e-6
    assert shift_energy(g, grid.q).max() <= hi + 1e-6


def test_a_frame_examples(onb, tight2, rng):
    probes = default_probes(onb.grid, onb.window, 6, 1)
    lo, hi = a_frame_bounds(onb.g, probes)
    assert abs(lo - 1) <= 1e-10 and abs(hi - 1) <= 1e-10
    probes = default_probes(tight2.grid, tight2.window, 6, 1)
    lo, hi = a_frame_bounds(tight2.g, probes)
    assert abs(lo - 2) <= 1e-10 and abs(hi - 2) <= 1e-10
    grid = LatticeGrid(32, 32, 32)
    half = chi(grid, 0, 16)
    f = chi(grid, 16, 16)
    assert a_frame_ratios(half, f).max() == 0.0


def test_a_frame_empty_probes(onb):
    with pytest.raises(EmptyProbeSet):
        a_frame_bounds(onb.g, [])


def test_extremal_probes_cover_spectrum():
    grid = LatticeGrid(32, 32, 64)
    sysw = WHSystem(SampledSignal.gaussian(grid, 1.0, 3.0))
    lam = spectral_frame_bounds(sysw)
    lo, hi = a_frame_bounds(sysw.g, extremal_probes(sysw))
    assert lo <= lam[0] * (1 + 1e-8) and hi >= lam[1] * (1 - 1e-8)


# -- reconstruction ----------------------------------------------------------------------

def test_reconstruct_onb_and_tight(onb, tight2, rng):
    f = random_signal(rng, onb.grid, -20, 60)
    rec = frame_reconstruct(f, onb)
    assert signal_err(rec.signal, f.restrict(*onb.window)) < 1e-12
    f = random_signal(rng, tight2.grid, -20, 60)
    rec = frame_reconstruct(f, tight2)
    assert signal_err(rec.signal, f.restrict(*tight2.window)) < 1e-8
    assert rel_err(rec.dual_coefficients_source.samples, f.restrict(*tight2.window).samples / 2) < 1e-8


def test_reconstruct_gaussian(rng):
    grid = LatticeGrid(32, 32, 64)
    sysw = WHSystem(SampledSignal.gaussian(grid, 1.0, 4.0))
    f = random_signal(rng, grid, -60, 120)
    rec = frame_reconstruct(f, sysw, cg_tol=1e-10)
    err = (rec.signal - f).norm() / f.norm()
    assert err <= 1e-6


def test_reconstruct_singular_operator():
    from bracketframe import SingularFrameOperator

    grid = LatticeGrid(16, 16, 16)
    half = WHSystem(chi(grid, 0, 8))
    f = chi(grid, 8, 8)
    with pytest.raises(SingularFrameOperator):
        frame_reconstruct(f, half)


def test_gaussian_critical_density_lower_bound_collapses():
    # The modulates of e^{-t^2} form a Riesz sequence, yet (g, 1, 1) is not a
    # frame: the a-frame lower bound keeps falling as the window widens.
    # At b = 1/2 it settles instead.
    def lower(q, pad):
        grid = LatticeGrid(32, 32, q)
        sysw = WHSystem(SampledSignal.gaussian(grid, 1.0, 4.0))
        w = (sysw.window[0] - 32 * pad, sysw.window[1] + 32 * pad)
        return a_frame_bounds(sysw.g, extremal_probes(sysw, window=w))[0]

    critical = [lower(32, pad) for pad in (0, 8, 16)]
    assert critical[0] > critical[1] > critical[2]
    assert critical[2] < 0.1 * critical[0]
    assert riesz_sequence_bounds(SampledSignal.gaussian(LatticeGrid(32, 32, 32), 1.0, 4.0)).lower > 1
    oversampled = [lower(64, pad) for pad in (0, 8, 16)]
    assert min(oversampled) > 0.9 * oversampled[0]
