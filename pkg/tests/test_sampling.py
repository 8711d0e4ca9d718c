import math

import numpy as np
import pytest
from scipy.integrate import quad

from mellin_kit import DomainError, IncompleteDataError, SpectralFunction, WindowTooSmallError, zero_signal
from mellin_kit import testlib
from mellin_kit.kernels import lin_c, rect
from mellin_kit.sampling import (
    KernelQuadrature,
    SamplingConfig,
    centered_range,
    exp_sampling_bound,
    exp_sampling_reconstruct,
    exp_sampling_remainder_sup,
    lattice_samples,
    reproducing_kernel_apply,
    reproducing_kernel_remainder,
    rk_remainder_sup,
)

# oracle: adaptive quadrature of the Gaussian spectrum over |v| >= pi
GAUSS_TAIL_PI = 2 * quad(lambda v: math.sqrt(2 * math.pi) * math.exp(-v * v / 2), math.pi, np.inf)[0]


@pytest.mark.parametrize("x", [0.5, 1.0, math.e])
def test_series_reproduces_band_limited(x):
    pair = testlib.bump_bl(2.0, 8, 1.0)
    cfg = SamplingConfig(1.0, 1.0, (-300, 300))
    rep = exp_sampling_reconstruct(lattice_samples(pair.f, 1.0, cfg.k_range), x, cfg, reference=pair.f)
    assert abs(rep.remainder) < 1e-3
    assert rep.certified_bound == 0.0
    assert rep.truncation_estimate >= 0


def test_series_of_shifted_sinc_vanishes():
    T, c = 2.0, 1.0
    pair = testlib.sinc_shifted(T, c)
    cfg = SamplingConfig(T, c, (-50, 50))
    samples = lattice_samples(pair.f, T, cfg.k_range)
    assert all(v == 0 for v in samples.values())
    for x in (0.7, 1.0, 1.9):
        rep = exp_sampling_reconstruct(samples, x, cfg, reference=pair.f)
        assert rep.value == 0
        assert rep.remainder == pair.f([x])[0]


def test_series_interpolates_at_nodes(bump):
    T = 1.0
    cfg = SamplingConfig(T, bump.f.c, (-40, 40))
    samples = lattice_samples(bump.f, T, cfg.k_range)
    for j in (-3, 0, 5):
        rep = exp_sampling_reconstruct(samples, math.exp(j / T), cfg)
        assert rep.value == pytest.approx(samples[j], abs=1e-15)


def test_lin_kernel_is_kronecker_at_nodes():
    T, c = 1.5, 0.7
    for j in range(-4, 5):
        x = math.exp(j / T)
        vals = [lin_c(math.exp(-k) * x ** T, c / T) for k in range(-6, 7)]
        expect = [1.0 if k == j else 0.0 for k in range(-6, 7)]
        np.testing.assert_allclose(vals, expect, atol=1e-12)


def test_missing_sample_raises(bump):
    cfg = SamplingConfig(1.0, 1.0, (-5, 5))
    samples = lattice_samples(bump.f, 1.0, (-5, 4))
    with pytest.raises(IncompleteDataError):
        exp_sampling_reconstruct(samples, 1.0, cfg)


def test_config_validation():
    with pytest.raises(DomainError):
        SamplingConfig(0.0, 0.0, (0, 1))
    with pytest.raises(DomainError):
        SamplingConfig(1.0, 0.0, (3, 1))
    assert centered_range(math.e ** 2, 2.0, 10) == (-6, 14)


def test_sampling_bound_examples(gauss):
    T = 2.0
    assert exp_sampling_bound(testlib.sinc_shifted(T).phi, T) == pytest.approx(1.0, abs=1e-12)
    assert exp_sampling_bound(testlib.bump_bl(2.0, 8).phi, 1.0) == 0.0
    assert exp_sampling_bound(gauss.phi, 1.0) == pytest.approx(GAUSS_TAIL_PI / math.pi, rel=1e-8)


def test_sampling_sharpness():
    T, c = 2.0, 1.0
    pair = testlib.sinc_shifted(T, c)
    sup = exp_sampling_remainder_sup(pair.f, SamplingConfig(T, c, (-20, 20)))
    assert sup == pytest.approx(exp_sampling_bound(pair.phi, T), abs=1e-3)


def _probe_points():
    return np.exp(np.linspace(-1.5, 1.5, 10))


@pytest.mark.parametrize("pair", testlib.catalog(), ids=lambda p: f"{p.name}{p.params.get('m', '')}")
def test_series_remainder_consistency(pair):
    T = 2.0
    c = pair.f.c
    for x in _probe_points():
        cfg = SamplingConfig(T, c, centered_range(x, T, 300))
        samples = lattice_samples(pair.f, T, cfg.k_range)
        rep = exp_sampling_reconstruct(samples, x, cfg, reference=pair.f, spectrum=pair.phi)
        assert abs(rep.remainder) <= rep.certified_bound + rep.truncation_estimate + 1e-12


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_kernel_reproduces_band_limited(bump, x):
    rep = reproducing_kernel_apply(bump.f, x, 1.0, bump.f.c)
    assert abs(rep.value - bump.f([x])[0]) < 1e-3
    assert rep.certified_bound == 0.0


def test_kernel_sharpness_at_one():
    T, c = 2.0, 1.0
    pair = testlib.sinc_centered(T, c)
    rep = reproducing_kernel_apply(pair.f, 1.0, T, c, KernelQuadrature(tolerance=1e-2))
    assert rep.value == pytest.approx(0.5, abs=1e-3)
    sup = rk_remainder_sup(pair.phi, T)
    assert sup == pytest.approx(0.5, abs=1e-3)
    assert rep.certified_bound == pytest.approx(0.5, abs=1e-12)


def test_kernel_of_zero():
    assert reproducing_kernel_apply(zero_signal(1.0), 1.3, 1.0, 1.0).value == 0


def test_kernel_window_too_small():
    pair = testlib.sinc_centered(2.0, 1.0)
    with pytest.raises(WindowTooSmallError):
        reproducing_kernel_apply(pair.f, 1.0, 2.0, 1.0, KernelQuadrature(half_width=5.0, tolerance=1e-6))


def test_kernel_remainder_examples(gauss):
    T = 2.0
    phi = SpectralFunction(lambda v: rect(v / (2 * T)) / (2 * T), support=2 * math.pi * T)
    val, bound = reproducing_kernel_remainder(phi, 1.0, T, 1.0)
    assert val == pytest.approx(0.5, abs=1e-12)
    assert bound == pytest.approx(0.5, abs=1e-12)
    narrow = SpectralFunction(rect, support=math.pi)
    assert reproducing_kernel_remainder(narrow, 1.0, 1.0, 0.0)[0] == 0
    val, bound = reproducing_kernel_remainder(gauss.phi, 1.0, 1.0, 1.0)
    assert val == pytest.approx(GAUSS_TAIL_PI / (2 * math.pi), rel=1e-9)
    assert abs(val) <= bound * (1 + 1e-12)


@pytest.mark.parametrize("entry", ["gauss", "sob2"])
@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_kernel_remainder_identity(entry, x, request):
    pair = request.getfixturevalue(entry)
    T = 1.0
    rep = reproducing_kernel_apply(pair.f, x, T, pair.f.c)
    val, _ = reproducing_kernel_remainder(pair.phi, x, T, pair.f.c)
    assert abs(rep.remainder - val) < 1e-6
