"""Exponential sampling, the Mellin reproducing-kernel integral and their
remainders.

On the log axis a sample f(e^{k/T}) times the kernel lin_{c/T}(e^{-k} x^T)
is g(k/T) e^{-ct} sinc(Tt - k), so the series and the kernel integral are
ordinary sinc interpolation of the weighted profile g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from .core import SignalFunction, SpectralFunction, _positive
from .distance import DistanceQuery, dist_q
from .errors import DomainError, IncompleteDataError, WindowTooSmallError
from .kernels import sinc
from .quadrature import DEFAULT_FLOOR, decay_cutoff, integrate_panels, panel_edges, refined_sup, trapezoid


@dataclass(frozen=True)
class SamplingConfig:
    T: float
    c: float
    k_range: tuple[int, int]
    kernel_tolerance: float = 1e-3

    def __post_init__(self):
        if not self.T > 0:
            raise DomainError("T must be positive")
        lo, hi = self.k_range
        if int(lo) != lo or int(hi) != hi or lo > hi:
            raise DomainError("k_range must be a nonempty integer interval")
        object.__setattr__(self, "k_range", (int(lo), int(hi)))
        if not self.kernel_tolerance > 0:
            raise DomainError("kernel tolerance must be positive")

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.k_range[0], self.k_range[1] + 1)


@dataclass(frozen=True)
class ReconstructionReport:
    value: complex
    remainder: Optional[complex]
    certified_bound: float
    truncation_estimate: float


def centered_range(x: float, T: float, half_width: int) -> tuple[int, int]:
    """Index range symmetric about the node nearest T log x."""
    k0 = int(round(T * math.log(float(_positive(x)))))
    return k0 - half_width, k0 + half_width


def lattice_samples(f: SignalFunction, T: float, k_range: tuple[int, int]) -> dict[int, complex]:
    """{k: f(e^{k/T})} over the inclusive range, from the exact log nodes k/T."""
    k = np.arange(k_range[0], k_range[1] + 1)
    t = k / T
    vals = np.exp(-f.c * t) * f.weighted_profile(t)
    return {int(j): complex(v) for j, v in zip(k, vals)}


def _series_terms(samples: Mapping[int, complex], cfg: SamplingConfig, t: float):
    k = cfg.indices
    try:
        vals = np.array([samples[int(j)] for j in k], dtype=complex)
    except KeyError as exc:
        raise IncompleteDataError(f"sample k={exc.args[0]} is missing") from None
    # e^{kc/T} f(e^{k/T}) is the profile value g(k/T)
    weighted = vals * np.exp(cfg.c * k / cfg.T)
    return k, weighted


def _series_value(k: np.ndarray, weighted: np.ndarray, t: float, c: float, T: float) -> complex:
    terms = weighted * sinc(T * t - k)
    return complex(math.fsum(terms.real), math.fsum(terms.imag)) * math.exp(-c * t)


def _truncation_estimate(k: np.ndarray, weighted: np.ndarray, t: float, c: float, T: float) -> float:
    # first omitted term at each end, scaled by the largest of the last few
    # samples there; the omitted tail alternates in sign like sinc
    m = min(4, len(k))
    est = 0.0
    lo_mag = float(np.max(np.abs(weighted[:m])))
    hi_mag = float(np.max(np.abs(weighted[-m:])))
    est += lo_mag / (math.pi * max(abs(T * t - (k[0] - 1)), 1.0))
    est += hi_mag / (math.pi * max(abs(T * t - (k[-1] + 1)), 1.0))
    return est * math.exp(-c * t)


def exp_sampling_bound(phi: SpectralFunction, T: float) -> float:
    """(1/pi) dist_1(f, B_{c, pi T}), a bound for ||R_{pi T} f||_{X^inf_c}."""
    if not T > 0:
        raise DomainError("T must be positive")
    return dist_q(phi, DistanceQuery(math.pi * T, 1.0, 0)) / math.pi


def exp_sampling_reconstruct(samples: Mapping[int, complex], x: float, cfg: SamplingConfig,
                             reference: Optional[SignalFunction] = None,
                             spectrum: Optional[SpectralFunction] = None) -> ReconstructionReport:
    """sum_{k in k_range} f(e^{k/T}) lin_{c/T}(e^{-k} x^T).

    With ``reference`` the remainder f(x) - value is reported; with a known
    spectrum (given, or carried by ``reference``) the certified bound
    x^{-c} dist_1/pi is reported, otherwise the bound field is inf.
    """
    x = float(_positive(x))
    t = math.log(x)
    k, weighted = _series_terms(samples, cfg, t)
    value = _series_value(k, weighted, t, cfg.c, cfg.T)
    remainder = None
    if reference is not None:
        remainder = complex(reference(np.array([x]))[0]) - value
        if spectrum is None:
            spectrum = reference.spectrum
    bound = math.inf if spectrum is None else x ** (-cfg.c) * exp_sampling_bound(spectrum, cfg.T)
    return ReconstructionReport(value, remainder, bound,
                                _truncation_estimate(k, weighted, t, cfg.c, cfg.T))


def exp_sampling_remainder_sup(f: SignalFunction, cfg: SamplingConfig,
                               t_grid: Optional[np.ndarray] = None) -> float:
    """sup_x |x^c (f(x) - series(x))| over the span of the sampled lattice,
    with one refinement step around the grid argmax."""
    samples = lattice_samples(f, cfg.T, cfg.k_range)
    k, weighted = _series_terms(samples, cfg, 0.0)
    if t_grid is None:
        lo, hi = cfg.k_range
        t_grid = np.linspace(lo / cfg.T, hi / cfg.T, 16 * (hi - lo) + 1)

    def residual(ts):
        ts = np.atleast_1d(ts)
        series = np.array([_series_value(k, weighted, ti, 0.0, cfg.T) for ti in ts])
        return np.abs(f.weighted_profile(ts) - series)

    return refined_sup(residual, t_grid)


def _kernel_tail(f: SignalFunction, t: float, L: float, step: float, T: float) -> float:
    # |T sinc(T u)| <= 1/(pi |u|) <= 1/(pi L) beyond the window; the mass of
    # |g| just outside the window estimates what the kernel multiplies there
    outer = 0.0
    for sign in (1.0, -1.0):
        s = t + sign * (L + step * np.arange(int(round(L / step)) + 1))
        outer += float(trapezoid(np.abs(f.weighted_profile(s)), step))
    return outer / (math.pi * L)


@dataclass(frozen=True)
class KernelQuadrature:
    half_width: float = 200.0
    step: float = 1.0 / 64.0
    tolerance: float = 1e-3


def reproducing_kernel_apply(f: SignalFunction, x: float, T: float, c: float,
                             quad_cfg: KernelQuadrature = KernelQuadrature()) -> ReconstructionReport:
    """T int_0^inf f(y) lin_{c/T}((x/y)^T) dy/y by trapezoid in s = log y on
    [log x - L, log x + L].

    The report's ``truncation_estimate`` is the kernel tail estimate; the
    certified bound x^{-c} dist_1/(2 pi) is given when f has a spectrum.
    Raises WindowTooSmallError when the tail estimate exceeds the tolerance.
    """
    if c != f.c:
        raise DomainError("exponent differs from the signal exponent")
    if not T > 0:
        raise DomainError("T must be positive")
    x = float(_positive(x))
    t = math.log(x)
    L, h = quad_cfg.half_width, quad_cfg.step
    n = int(round(L / h))
    s = t + h * np.arange(-n, n + 1)
    integrand = f.weighted_profile(s) * sinc(T * (t - s))
    value = complex(T * trapezoid(integrand, h)) * math.exp(-c * t)
    tail = _kernel_tail(f, t, L, h, T) * math.exp(-c * t)
    if tail > quad_cfg.tolerance:
        raise WindowTooSmallError(f"kernel tail estimate {tail:.2e} exceeds {quad_cfg.tolerance:.1e}")
    remainder = complex(f(np.array([x]))[0]) - value
    bound = math.inf
    if f.spectrum is not None:
        bound = x ** (-c) * dist_q(f.spectrum, DistanceQuery(math.pi * T, 1.0, 0)) / (2.0 * math.pi)
    return ReconstructionReport(value, remainder, bound, tail)


def _rk_tail_integral(phi: SpectralFunction, t: float, T: float, floor: float) -> complex:
    a = math.pi * T
    total = 0.0 + 0.0j
    for sign in (1.0, -1.0):
        if phi.support is not None:
            V = phi.support
        else:
            V, _, _ = decay_cutoff(lambda v, sg=sign: np.abs(phi(sg * v)), a, floor=floor)
        if V <= a:
            continue
        edges = panel_edges(a, V, max_width=2.0 * math.pi / (1.0 + abs(t)))
        total += integrate_panels(lambda v, sg=sign: phi(sg * v) * np.exp(-1j * sg * v * t), edges)
    return complex(total / (2.0 * math.pi))


def reproducing_kernel_remainder(phi: SpectralFunction, x: float, T: float, c: float, *,
                                 floor: float = DEFAULT_FLOOR) -> tuple[complex, float]:
    """((x^{-c}/2 pi) int_{|v|>=pi T} phi(v) x^{-iv} dv, x^{-c} dist_1/(2 pi))."""
    if not T > 0:
        raise DomainError("T must be positive")
    x = float(_positive(x))
    value = x ** (-c) * _rk_tail_integral(phi, math.log(x), T, floor)
    bound = x ** (-c) * dist_q(phi, DistanceQuery(math.pi * T, 1.0, 0), floor=floor) / (2.0 * math.pi)
    return value, bound


def rk_remainder_sup(phi: SpectralFunction, T: float, t_grid: Optional[np.ndarray] = None, *,
                     floor: float = DEFAULT_FLOOR) -> float:
    """sup_x |x^c (R*_{pi T} f)(x)| over a log-axis grid, refined at the argmax."""
    if not T > 0:
        raise DomainError("T must be positive")
    if t_grid is None:
        t_grid = np.linspace(-8.0, 8.0, 1601)

    def mag(ts):
        return np.array([abs(_rk_tail_integral(phi, ti, T, floor)) for ti in np.atleast_1d(ts)])

    return refined_sup(mag, t_grid)
