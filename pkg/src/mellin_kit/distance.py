"""Distance of a signal from the Mellin-Bernstein space B_{c,sigma}, the
Lipschitz and Sobolev upper bounds for it, rate fitting, and the extended
Bernstein inequality.

The distance of f from B_{c,sigma} equals the L^q mass of its spectrum on
|v| >= sigma, so it is computed as a spectral tail integral.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np
from scipy.interpolate import CubicSpline

from .calculus import modulus_curve
from .core import DEFAULT_GRID, LogUniformGrid, SignalFunction, SpaceDescriptor, SpectralFunction, xnorm
from .errors import (
    DegenerateFitError,
    DomainError,
    InvalidParametersError,
    NotInDomainError,
    UnsupportedSpaceError,
)
from .quadrature import (
    DEFAULT_FLOOR,
    decay_cutoff,
    gauss_nodes,
    integrate_panels,
    panel_edges,
    refined_sup,
    tail_integral,
)
from .transform import SpectralSamples, _check_window_decay

SpectrumLike = Union[SpectralFunction, SpectralSamples]


@dataclass(frozen=True)
class DistanceQuery:
    sigma: float
    q: float = 1.0
    k: int = 0

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError("sigma must be positive")
        if not self.q >= 1:
            raise UnsupportedSpaceError("q must lie in [1, inf]")
        if int(self.k) != self.k or self.k < 0:
            raise DomainError("k must be a nonnegative integer")


def _weighted(phi, k: int, sign: float):
    if k == 0:
        return lambda v: np.abs(phi(sign * np.asarray(v, dtype=float)))
    return lambda v: np.abs(v) ** k * np.abs(phi(sign * np.asarray(v, dtype=float)))


def tail_mass(phi: SpectralFunction, sigma: float, q: float = 1.0, k: int = 0, *,
              floor: float = DEFAULT_FLOOR) -> float:
    """int_{|v| >= sigma} |v^k phi(v)|^q dv."""
    if not phi.has("L1"):
        raise NotInDomainError("spectrum is not tagged L1")
    total = 0.0
    for sign in (1.0, -1.0):
        mag = _weighted(phi, k, sign)
        powered = (lambda v, m=mag: m(v) ** q) if q != 1 else mag
        if phi.support is not None:
            if sigma >= phi.support:
                continue
            total += float(integrate_panels(powered, panel_edges(sigma, phi.support)))
        else:
            total += tail_integral(powered, sigma, floor=floor)
    return total


def _sup_tail(phi: SpectralFunction, sigma: float, k: int, floor: float) -> float:
    best = 0.0
    for sign in (1.0, -1.0):
        mag = _weighted(phi, k, sign)
        if phi.support is not None:
            if sigma > phi.support:
                continue
            hi = phi.support
        else:
            hi, alpha, _ = decay_cutoff(mag, sigma, floor=floor)
            if alpha <= 0:
                raise NotInDomainError("|v^k phi| does not decay")
        edges = panel_edges(sigma, max(hi, sigma + 1e-12), max_width=0.5)
        nodes = np.concatenate([edges, gauss_nodes(edges, 4)[0]])
        nodes.sort()
        best = max(best, refined_sup(mag, nodes))
    return best


def _dist_from_samples(samples: SpectralSamples, query: DistanceQuery, floor: float) -> float:
    if query.q == math.inf:
        raise UnsupportedSpaceError("q = inf needs a continuous spectrum; samples are not tagged continuous")
    _check_window_decay(samples.values, floor, "spectral samples")
    v = samples.v_grid
    vals = (np.abs(v) ** query.k * np.abs(samples.values)) ** query.q
    spline = CubicSpline(v, vals)
    total = 0.0
    if v[-1] > query.sigma:
        total += float(spline.integrate(max(query.sigma, v[0]), v[-1]))
    if v[0] < -query.sigma:
        total += float(spline.integrate(v[0], min(-query.sigma, v[-1])))
    return max(total, 0.0) ** (1.0 / query.q)


def dist_q(phi: SpectrumLike, query: DistanceQuery, *, floor: float = DEFAULT_FLOOR) -> float:
    """(int_{|v|>=sigma} |v^k phi(v)|^q dv)^{1/q}, or the sup for q = inf."""
    if isinstance(phi, SpectralSamples):
        return _dist_from_samples(phi, query, max(floor, 1e-12))
    if query.q == math.inf:
        if not phi.has("continuous"):
            raise UnsupportedSpaceError("q = inf requires a spectrum tagged continuous")
        return _sup_tail(phi, query.sigma, query.k, floor)
    return tail_mass(phi, query.sigma, query.q, query.k, floor=floor) ** (1.0 / query.q)


def dist2_euclidean_check(f: SignalFunction, g: SignalFunction,
                          grid: LogUniformGrid = DEFAULT_GRID) -> tuple[float, float]:
    """(||phi_f - phi_g||_{L^2}, sqrt(2 pi) ||f - g||_{X^2_c})."""
    if f.spectrum is None or g.spectrum is None:
        raise DomainError("both signals need known spectra")
    diff = f - g
    spectral = math.sqrt(tail_mass(diff.spectrum, 0.0, 2.0))
    direct = math.sqrt(2.0 * math.pi) * xnorm(diff, SpaceDescriptor(2, f.c), grid)
    return spectral, direct


class BoundSource(str, enum.Enum):
    LIPSCHITZ_X1 = "lipschitz_X1"
    LIPSCHITZ_X2 = "lipschitz_X2"
    SOBOLEV_X1 = "sobolev_X1"
    SOBOLEV_X2 = "sobolev_X2"


@dataclass(frozen=True)
class BoundReport:
    bound_value: float
    constant_D: float
    source: BoundSource
    parameters: dict = field(default_factory=dict)
    infinite: bool = False

    def __post_init__(self):
        if not self.bound_value >= 0:
            raise ValueError("bound must be nonnegative")
        if not self.constant_D > 0:
            raise ValueError("constant must be positive")


def _check_r(r) -> int:
    if int(r) != r or r < 1:
        raise InvalidParametersError("r must be a positive integer")
    return int(r)


def lipschitz_constant(r: int, q: float, space_p: int) -> float:
    """D in dist_q <= D {int_sigma^inf [weight(v) omega_r(f, 1/v)]^q dv}^{1/q}.

    The factor 2^{1/q} accounts for both half-lines |v| >= sigma.
    """
    both = 1.0 if q == math.inf else 2.0 ** (1.0 / q)
    if space_p == 1:
        return both * ((1.0 + math.pi) / 2.0) ** r
    return both * math.sqrt(2.0 * math.pi) * math.pi ** r


def lipschitz_bound(f: SignalFunction, r: int, sigma: float, q: float, space_p: int, *,
                    h_probe_count: int = 33, v_max: float | None = None,
                    grid: LogUniformGrid = DEFAULT_GRID) -> BoundReport:
    """Upper bound for dist_q(f, B^p_{c,sigma}) from the modulus of smoothness.

    X^1: D {int_sigma^inf omega_r(f, 1/v, X^1_c)^q dv}^{1/q} (q = inf:
    D omega_r(f, 1/sigma)). X^2, 1 <= q <= 2: D {int_sigma^inf v^{-q/2}
    omega_r(f, 1/v, X^2_c)^q dv}^{1/q}. The integral runs over [sigma, v_max]
    by Gauss-Legendre in log v and is closed by the fitted power tail; a tail
    decaying no faster than 1/v gives an infinite, flagged bound.
    """
    r = _check_r(r)
    if not sigma > 0:
        raise InvalidParametersError("sigma must be positive")
    if space_p not in (1, 2):
        raise UnsupportedSpaceError("space_p must be 1 or 2")
    if not q >= 1 or (space_p == 2 and q > 2):
        raise InvalidParametersError("q must lie in [1, inf] for X^1 and [1, 2] for X^2")
    space = SpaceDescriptor(space_p, f.c)
    D = lipschitz_constant(r, q, space_p)
    source = BoundSource.LIPSCHITZ_X1 if space_p == 1 else BoundSource.LIPSCHITZ_X2
    params = {"r": r, "q": q, "sigma": sigma, "space_p": space_p}
    if q == math.inf:
        omega = float(modulus_curve(f, r, [1.0 / sigma], space, h_probe_count, grid)[0])
        params["omega"] = omega
        return BoundReport(D * omega, D, source, params)

    v_max = v_max if v_max is not None else max(1e4, 64.0 * sigma)
    edges = np.linspace(0.0, math.log(v_max / sigma), int(math.ceil(math.log(v_max / sigma))) + 1)
    u, w = gauss_nodes(edges, 8)
    v = sigma * np.exp(u)
    probe_v = np.concatenate([v, [v_max / 2.0, v_max]])
    omega = modulus_curve(f, r, 1.0 / probe_v, space, h_probe_count, grid)
    weight = 1.0 if space_p == 1 else probe_v ** (-q / 2.0)
    F = (weight * omega) ** q
    total = float(np.sum(w * F[:-2] * v))
    f_half, f_end = F[-2], F[-1]
    infinite = False
    if f_end > 0:
        beta = math.log(f_half / f_end) / math.log(2.0) if f_half > 0 else math.inf
        if beta <= 1.02:
            infinite = True
        else:
            total += f_end * v_max / (beta - 1.0)
    params["integral"] = total
    if infinite:
        return BoundReport(math.inf, D, source, params, infinite=True)
    return BoundReport(D * total ** (1.0 / q), D, source, params)


def sobolev_constant(r: int, q: float, space_p: int, derivative_shift: int = 0) -> tuple[float, float]:
    """(D, exponent) with dist_q <= D ||Theta^r_c f|| sigma^{-exponent}.

    Raises InvalidParametersError when the parameters violate the
    integrability constraints behind the bound.
    """
    r = _check_r(r)
    if derivative_shift not in (0, 1):
        raise InvalidParametersError("derivative_shift must be 0 or 1")
    if not q >= 1:
        raise InvalidParametersError("q must be >= 1")
    inv_q = 0.0 if q == math.inf else 1.0 / q
    if space_p == 1:
        if derivative_shift == 0:
            if not r > inv_q:
                raise InvalidParametersError("need r > 1/q")
            if q == math.inf:
                return 1.0, float(r)
            return (2.0 / (r * q - 1.0)) ** inv_q, r - inv_q
        if not r > 1.0 + inv_q:
            raise InvalidParametersError("need r > 1 + 1/q")
        if q == math.inf:
            return 1.0, r - 1.0
        return (2.0 / (r * q - q - 1.0)) ** inv_q, r - 1.0 - inv_q
    if space_p == 2:
        if q > 2:
            raise InvalidParametersError("q must lie in [1, 2] for X^2")
        if derivative_shift == 1 and not r > 1.5 + inv_q:
            raise InvalidParametersError("need r > 3/2 + 1/q")
        rr = r - derivative_shift
        if q == 2:
            return math.sqrt(2.0 * math.pi), float(rr)
        denom = (2.0 * rr + 1.0) * q - 2.0
        if not denom > 0:
            raise InvalidParametersError("need (2r + 1) q > 2")
        D = math.sqrt(2.0 * math.pi) * ((4.0 - 2.0 * q) / denom) ** (inv_q - 0.5)
        return D, rr + 0.5 - inv_q
    raise UnsupportedSpaceError("space_p must be 1 or 2")


def sobolev_bound(theta_r_norm: float, r: int, sigma: float, q: float, space_p: int,
                  derivative_shift: int = 0) -> BoundReport:
    """D ||Theta^r_c f||_{X^p_c} sigma^{-exponent}."""
    if not theta_r_norm >= 0 or not math.isfinite(theta_r_norm):
        raise InvalidParametersError("norm must be finite and nonnegative")
    if not sigma > 0:
        raise InvalidParametersError("sigma must be positive")
    D, expo = sobolev_constant(r, q, space_p, derivative_shift)
    source = BoundSource.SOBOLEV_X1 if space_p == 1 else BoundSource.SOBOLEV_X2
    params = {"r": r, "q": q, "sigma": sigma, "space_p": space_p, "derivative_shift": derivative_shift,
              "norm": theta_r_norm, "exponent": expo}
    return BoundReport(D * theta_r_norm * sigma ** (-expo), D, source, params)


def rate_fit(points: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of log(dist) against log(sigma)."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 4:
        raise InvalidParametersError("need at least four (sigma, dist) pairs")
    sig, dist = pts[:, 0], pts[:, 1]
    if np.any(dist <= 0):
        raise DegenerateFitError("distance vanishes at some sigma; no power law to fit")
    if np.any(sig <= 0):
        raise InvalidParametersError("sigma must be positive")
    ratios = sig[1:] / sig[:-1]
    if not np.allclose(ratios, ratios[0], rtol=1e-6) or ratios[0] == 1:
        raise InvalidParametersError("sigma values must form a geometric sequence")
    slope, _ = np.polyfit(np.log(sig), np.log(dist), 1)
    return float(slope)


def theta_l2_norm(phi: SpectralFunction, r: int = 1) -> float:
    """||Theta^r_c f||_{X^2_c} by Parseval on v^r phi."""
    return math.sqrt(tail_mass(phi, 0.0, 2.0, r) / (2.0 * math.pi))


@dataclass(frozen=True)
class BernsteinCheck:
    lhs: float
    rhs: float
    satisfied: bool


def bernstein_extended_check(f: SignalFunction, T: float, *, grid: LogUniformGrid = DEFAULT_GRID,
                             rtol: float = 1e-9) -> BernsteinCheck:
    """||Theta_c f||_2 <= pi T ||f||_2 + (2 pi)^{-1/2} dist_2(Theta_c f, B_{c,pi T}).

    The left side uses Parseval on v phi(v), the right side the log-axis
    quadrature of f plus the spectral tail of v phi(v).
    """
    if f.spectrum is None:
        raise DomainError("the check needs a known spectrum")
    if not T > 0:
        raise DomainError("T must be positive")
    phi = f.spectrum
    # hypothesis: v phi(v) absolutely integrable
    tail_mass(phi, 0.0, 1.0, 1)
    lhs = theta_l2_norm(phi, 1)
    rhs = math.pi * T * xnorm(f, SpaceDescriptor(2, f.c), grid) + dist_q(
        phi, DistanceQuery(math.pi * T, 2.0, 1)
    ) / math.sqrt(2.0 * math.pi)
    return BernsteinCheck(lhs, rhs, lhs <= rhs * (1.0 + rtol) + rtol)


def bernstein_check(f: SignalFunction, T: float, p: float = 2, *,
                    grid: LogUniformGrid = DEFAULT_GRID, rtol: float = 1e-8) -> BernsteinCheck:
    """||Theta_c f||_p <= pi T ||f||_p for f band-limited to [-pi T, pi T].

    For p = 2 the left side uses Parseval; otherwise Theta_c f is inverted
    from its spectrum and normed on the log axis.
    """
    from .calculus import mellin_derivative_signal

    if f.spectrum is None:
        raise DomainError("the check needs a known spectrum")
    space = SpaceDescriptor(p, f.c)
    if p == 2:
        lhs = theta_l2_norm(f.spectrum, 1)
    else:
        lhs = xnorm(mellin_derivative_signal(f, 1), space, grid)
    rhs = math.pi * T * xnorm(f, space, grid)
    return BernsteinCheck(lhs, rhs, lhs <= rhs * (1.0 + rtol))
