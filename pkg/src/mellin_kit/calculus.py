"""Mellin differences, the modulus of smoothness, and Mellin derivatives.

Everything works on weighted profiles g(t) = e^{ct} f(e^t). With s = log h,

* the r-th Mellin difference has profile sum_j (-1)^{r-j} C(r, j) g(t + j s)
  and spectrum (h^{-iv} - 1)^r phi(v);
* Theta_c is d/dt on profiles and the multiplier (-iv) on spectra;
* the Boas-type series pairs node k with node 1 - k, so that each pair
  contributes a_k x^{-c} [g(t + s_k) - g(t - s_k)] with s_k = (k - 1/2)/T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import comb, polygamma

from .core import (
    DEFAULT_GRID,
    LogUniformGrid,
    SignalFunction,
    SpaceDescriptor,
    SpectralFunction,
    _positive,
    xnorm,
)
from .errors import DomainError, EvaluationDomainError, MellinRangeError, NotInDomainError
from .kernels import sawtooth_phi
from .quadrature import DEFAULT_FLOOR, decay_cutoff, integrate_panels, panel_edges
from .transform import spectral_profile

_EXP_LIMIT = 700.0
DEFAULT_PROBES = 129


def _check_order(r: int, what: str = "r") -> int:
    if int(r) != r or r < 1:
        raise DomainError(f"{what} must be a positive integer")
    return int(r)


def _binomial_weights(r: int) -> np.ndarray:
    j = np.arange(r + 1)
    return (-1.0) ** (r - j) * comb(r, j, exact=False)


def mellin_difference(f: SignalFunction, h: float, r: int, u: float) -> complex:
    """(Delta_h^{r,c} f)(u) = sum_j (-1)^{r-j} C(r,j) f(h^j u) h^{jc}."""
    r = _check_order(r)
    if not h > 0:
        raise DomainError("h must be positive")
    u = float(_positive(u))
    s = math.log(h)
    if r * abs(f.c * s) > _EXP_LIMIT or r * abs(s) > _EXP_LIMIT:
        raise MellinRangeError("h^{jc} is outside the floating point range")
    j = np.arange(r + 1)
    terms = _binomial_weights(r) * f(u * h ** j) * h ** (j * f.c)
    # exact accumulation, so identical terms (h = 1) cancel to 0
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def difference_signal(f: SignalFunction, h: float, r: int) -> SignalFunction:
    """The signal Delta_h^{r,c} f, with its spectrum when f has one."""
    r = _check_order(r)
    if not h > 0:
        raise DomainError("h must be positive")
    s = math.log(h)
    weights = _binomial_weights(r)

    def profile(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for j, w in enumerate(weights):
            out += w * f.weighted_profile(t + j * s)
        return out

    spectrum = None
    if f.spectrum is not None:
        phi = f.spectrum
        spectrum = SpectralFunction(
            lambda v: (np.exp(-1j * np.asarray(v) * s) - 1.0) ** r * phi(v),
            phi.support,
            phi.tags,
        )
    return SignalFunction.from_profile(f.c, profile, spectrum, f.class_tags)


@dataclass(frozen=True)
class ModulusQuery:
    r: int
    delta: float
    space: SpaceDescriptor

    def __post_init__(self):
        _check_order(self.r)
        if not self.delta > 0:
            raise DomainError("delta must be positive")


def _difference_norms(f: SignalFunction, r: int, shifts: np.ndarray, space: SpaceDescriptor,
                      grid: LogUniformGrid) -> np.ndarray:
    out = np.empty(len(shifts))
    for i, s in enumerate(shifts):
        out[i] = 0.0 if s == 0 else xnorm(difference_signal(f, math.exp(s), r), space, grid)
    return out


def _probe_shifts(delta: float, count: int) -> np.ndarray:
    if count < 2:
        raise DomainError("need at least two probes")
    return np.linspace(-delta, delta, count)


def modulus(f: SignalFunction, query: ModulusQuery, h_probe_count: int = DEFAULT_PROBES,
            grid: LogUniformGrid = DEFAULT_GRID) -> float:
    """omega_r(f, delta, X^p_c) as a max over a uniform grid of log h in
    [-delta, delta] (endpoints included). A lower bound of the true sup."""
    shifts = _probe_shifts(query.delta, h_probe_count)
    return float(np.max(_difference_norms(f, query.r, shifts, query.space, grid)))


def modulus_curve(f: SignalFunction, r: int, deltas: Sequence[float], space: SpaceDescriptor,
                  h_probe_count: int = DEFAULT_PROBES,
                  grid: LogUniformGrid = DEFAULT_GRID) -> np.ndarray:
    """omega_r at several deltas, each a max over the pooled probe set.

    All probe grids are merged, and the value at delta is the max over every
    pooled probe with |log h| <= delta. Probe sets are therefore nested and
    the curve is nondecreasing in delta exactly.
    """
    r = _check_order(r)
    deltas = np.asarray(deltas, dtype=float)
    if np.any(~(deltas > 0)):
        raise DomainError("deltas must be positive")
    # ||Delta_{1/h}|| equals ||Delta_h|| (it is a shifted copy up to sign),
    # so only log h >= 0 is probed
    pooled = np.unique(np.concatenate([np.linspace(0.0, d, h_probe_count // 2 + 1) for d in deltas]))
    norms = _difference_norms(f, r, pooled, space, grid)
    running = np.maximum.accumulate(norms)
    idx = np.searchsorted(pooled, deltas, side="right") - 1
    return running[idx]


def derivative_spectral(phi: SpectralFunction, k: int, *, floor: float = DEFAULT_FLOOR) -> SpectralFunction:
    """The spectrum of Theta_c^k f, v -> (-iv)^k phi(v).

    Raises NotInDomainError when |v|^k phi(v) is not integrable.
    """
    k = _check_order(k, "k")
    if phi.support is None:
        for sign in (1.0, -1.0):
            _, alpha, _ = decay_cutoff(
                lambda v, sg=sign: np.abs(v) ** k * np.abs(phi(sg * v)), 0.0, floor=floor
            )
            if alpha <= 1.02:
                raise NotInDomainError(f"v^{k} phi(v) is not integrable (decay ~ v^-{alpha:.3g})")
    return SpectralFunction(lambda v: (-1j * np.asarray(v, dtype=float)) ** k * phi(v),
                            phi.support, phi.tags)


def _spectral_window(phi: SpectralFunction, floor: float) -> tuple[float, float]:
    V = 0.0
    for sign in (1.0, -1.0):
        Vs, _, _ = decay_cutoff(lambda v, sg=sign: np.abs(phi(sg * v)), 0.0, floor=floor)
        V = max(V, Vs)
    return (-V, V)


def mellin_derivative_signal(f: SignalFunction, k: int, v_step: float = 1.0 / 16.0, *,
                             floor: float = DEFAULT_FLOOR) -> SignalFunction:
    """Theta_c^k f as a signal, evaluated by inverting (-iv)^k phi.

    Compactly supported spectra are integrated by Gauss-Legendre panels;
    otherwise a trapezoid over the window where |v^k phi| exceeds ``floor``.
    """
    if f.spectrum is None:
        raise DomainError("the spectral derivative needs a known spectrum")
    psi = derivative_spectral(f.spectrum, k, floor=floor)
    window = None if psi.support is not None else _spectral_window(psi, floor)
    return SignalFunction.from_profile(
        f.c, lambda t: spectral_profile(psi, t, window, v_step, floor=1.0), psi, f.class_tags
    )


def mellin_derivative(f: SignalFunction, k: int, x, v_step: float = 1.0 / 16.0) -> np.ndarray:
    """(Theta_c^k f)(x) via the spectral multiplier."""
    return mellin_derivative_signal(f, k, v_step)(x)


@dataclass(frozen=True)
class BoasConfig:
    T: float
    K: int
    c: float = 0.0

    def __post_init__(self):
        if not self.T > 0:
            raise DomainError("T must be positive")
        if int(self.K) != self.K or self.K < 1:
            raise DomainError("K must be a positive integer")


@dataclass(frozen=True)
class BoasEstimate:
    value: complex
    tail_bound: float


def boas_coefficients(K: int) -> tuple[np.ndarray, np.ndarray]:
    """a_k = (-1)^{k+1}/(2k-1)^2 and the half-integers k - 1/2, k = 1..K."""
    k = np.arange(1, K + 1)
    return (-1.0) ** (k + 1) / (2.0 * k - 1.0) ** 2, k - 0.5


def boas_tail_sum(K: int) -> float:
    """sum over |2k-1| > 2K-1 of (2k-1)^{-2}, i.e. the terms dropped by the
    truncation k in [-K+1, K]."""
    return float(polygamma(1, K + 0.5)) / 2.0


def boas_coefficient_sum(K: int) -> float:
    """Partial sum of (2k-1)^{-2} over k in [-K+1, K]; tends to pi^2/4."""
    k = np.arange(K, 0, -1, dtype=float)  # smallest terms first
    return 2.0 * math.fsum(1.0 / (2.0 * k - 1.0) ** 2)


def _check_nodes(f: SignalFunction, c: float, T: float, K: int) -> None:
    # a profile-backed signal never forms e^{(k-1/2)c/T}; only x-space
    # evaluation of the outer nodes can overflow
    if f.profile is None and (K - 0.5) / T * max(abs(c), 1.0) > _EXP_LIMIT:
        raise MellinRangeError("Boas node e^{(k-1/2)/T} or its weight overflows")


def _boas_profile_sum(f: SignalFunction, t: np.ndarray, T: float, K: int) -> np.ndarray:
    a, half = boas_coefficients(K)
    s = half / T
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t.shape, dtype=complex)
    for i, ti in enumerate(t):
        pair = a * (f.weighted_profile(ti + s) - f.weighted_profile(ti - s))
        pair = pair[::-1]  # accumulate the small far terms first
        out[i] = complex(math.fsum(pair.real), math.fsum(pair.imag))
    return 4.0 * T / math.pi * out


def boas_derivative(f: SignalFunction, x: float, cfg: BoasConfig,
                    grid: LogUniformGrid = DEFAULT_GRID) -> BoasEstimate:
    """Truncated Boas-type series for (Theta_c f)(x), with its tail bound
    (4T/pi) x^{-c} sup|x^c f| sum_{|2k-1|>2K-1} (2k-1)^{-2}."""
    if cfg.c != f.c:
        raise DomainError("config exponent differs from the signal exponent")
    x = float(_positive(x))
    _check_nodes(f, cfg.c, cfg.T, cfg.K)
    t = math.log(x)
    value = complex(_boas_profile_sum(f, np.array([t]), cfg.T, cfg.K)[0]) * x ** (-f.c)
    sup = xnorm(f, SpaceDescriptor(math.inf, f.c), grid)
    bound = 4.0 * cfg.T / math.pi * x ** (-f.c) * sup * boas_tail_sum(cfg.K)
    return BoasEstimate(value, bound)


def boas_psi(v, T: float, K: int) -> np.ndarray:
    """Truncated multiplier psi(v) = (4Ti/pi) sum_k a_k e^{-i(k-1/2)v/T}.

    Terms k and 1-k are combined before summation; the imaginary residue of
    the paired sum must stay below 1e-12 and is dropped.
    """
    if not T > 0:
        raise DomainError("T must be positive")
    _check_order(K, "K")
    was_scalar = np.ndim(v) == 0
    v = np.atleast_1d(np.asarray(v, dtype=float))
    a, half = boas_coefficients(K)
    out = np.empty(v.shape)
    for i, vi in enumerate(v):
        w = half * vi / T
        pair = (4j * T / math.pi) * a * (np.exp(-1j * w) - np.exp(1j * w))
        pair = pair[::-1]
        re, im = math.fsum(pair.real), math.fsum(pair.imag)
        if abs(im) > 1e-12:
            raise EvaluationDomainError(f"psi has imaginary residue {im:.2e}")
        out[i] = re
    return float(out[0]) if was_scalar else out


def boas_psi_tail_bound(T: float, K: int) -> float:
    """Bound on |psi(v) - psi_K(v)| uniformly in v."""
    return 4.0 * T / math.pi * boas_tail_sum(K)


def _oscillatory_edges(a: float, b: float, t: float, breakpoints=()) -> np.ndarray:
    width = 2.0 * math.pi / (1.0 + abs(t))
    return panel_edges(a, b, max_width=width, breakpoints=breakpoints)


def boas_remainder(phi: SpectralFunction, x: float, T: float, c: float, *,
                   floor: float = DEFAULT_FLOOR) -> complex:
    """(R^B_{pi T} f)(x) = (1/2 pi i) int_{|v|>=pi T} [v - pi T phi_saw(v/pi T)]
    phi(v) x^{-c-iv} dv."""
    x = float(_positive(x))
    if not T > 0:
        raise DomainError("T must be positive")
    t = math.log(x)
    a = math.pi * T
    total = 0.0 + 0.0j
    for sign in (1.0, -1.0):
        mag = lambda v, sg=sign: (np.abs(v) + a) * np.abs(phi(sg * v))
        if phi.support is not None:
            V = phi.support
        else:
            V, alpha, _ = decay_cutoff(mag, a, floor=floor)
            if alpha <= 1.02:
                raise NotInDomainError("v phi(v) is not integrable")
        if V <= a:
            continue
        n_odd = int(V / a) + 2
        kinks = [(2 * j + 1) * a for j in range(n_odd)]

        def integrand(v, sg=sign):
            w = sg * v
            return (w - a * sawtooth_phi(w / a)) * phi(w) * np.exp(-1j * w * t)

        total += integrate_panels(integrand, _oscillatory_edges(a, V, t, kinks))
    return complex(x ** (-c) * total / (2j * math.pi))
