"""Catalog of closed-form signal/spectrum pairs used as ground truth.

Each entry stores the signal through its weighted profile g(t) = e^{ct} f(e^t),
so the same entry works for any Mellin exponent c: the spectrum on the line
c + iR is the Fourier transform of g and does not depend on c.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.special import erfc, eval_hermitenorm, gamma, jv

from .core import SignalFunction, SpectralFunction
from .errors import NotFoundError
from .kernels import lin_c, rect, sinc
from .transform import TransformConfig

SQRT_2PI = math.sqrt(2.0 * math.pi)


class Provenance(str, enum.Enum):
    PUBLISHED = "published"  # quoted closed form
    TRIVIAL = "trivial"
    DERIVED = "derived"  # computed here from an independent formula


@dataclass(frozen=True)
class TestPair:
    __test__ = False  # not a pytest class

    name: str
    f: SignalFunction
    phi: SpectralFunction
    class_tags: frozenset
    analytic_values: dict
    params: dict = field(default_factory=dict)
    roundtrip_tol: float = 1e-8
    transform_cfg: TransformConfig = TransformConfig()
    # (r, t) -> d^r/dt^r of the weighted profile, when known in closed form
    profile_derivative: Optional[Callable[[int, np.ndarray], np.ndarray]] = None

    @property
    def slow_decay(self) -> bool:
        return "slow-decay" in self.class_tags


def _pair(name, c, profile, phi, tags, values, params, **kw) -> TestPair:
    f = SignalFunction.from_profile(c, profile, phi, tags)
    return TestPair(name, f, phi, frozenset(tags), values, params, **kw)


_SLOW_CFG = dict(t_window=(-1000.0, 1000.0), t_step=1.0 / 16.0, v_step=1.0 / 32.0, allow_slow_decay=True)


def sinc_shifted(T: float = 2.0, c: float = 1.0) -> TestPair:
    """f(x) = x^{-c} sinc(2T log x - 1); every lattice sample f(e^{k/T}) is 0."""
    phi = SpectralFunction(
        lambda v: np.exp(1j * v / (2 * T)) / (2 * T) * rect(v / (2 * T)),
        support=2 * math.pi * T,
        tags={"L1", "L2", "Linf"},
    )
    values = {
        "dist1_at_piT": (math.pi, Provenance.PUBLISHED),
        "lattice_samples": (0.0, Provenance.PUBLISHED),
        "exp_sampling_remainder_sup": (1.0, Provenance.PUBLISHED),
        "support": (2 * math.pi * T, Provenance.TRIVIAL),
    }
    return _pair("sinc_shifted", c, lambda t: sinc(2 * T * np.asarray(t) - 1), phi,
                 {f"band-limited sigma={2 * math.pi * T:g}", "slow-decay"}, values,
                 {"T": T, "c": c}, roundtrip_tol=5e-2, transform_cfg=TransformConfig(**_SLOW_CFG))


def sinc_centered(T: float = 2.0, c: float = 1.0) -> TestPair:
    """f(x) = x^{-c} sinc(2T log x)."""
    phi = SpectralFunction(lambda v: rect(v / (2 * T)) / (2 * T), support=2 * math.pi * T,
                           tags={"L1", "L2", "Linf"})
    values = {
        "dist1_at_piT": (math.pi, Provenance.PUBLISHED),
        "rk_remainder_sup": (0.5, Provenance.PUBLISHED),
        "rk_remainder_at_1": (0.5, Provenance.PUBLISHED),
        "support": (2 * math.pi * T, Provenance.TRIVIAL),
    }
    return _pair("sinc_centered", c, lambda t: sinc(2 * T * np.asarray(t)), phi,
                 {f"band-limited sigma={2 * math.pi * T:g}", "slow-decay"}, values,
                 {"T": T, "c": c}, roundtrip_tol=5e-2, transform_cfg=TransformConfig(**_SLOW_CFG))


def gauss_log(c: float = 1.0) -> TestPair:
    """f(x) = x^{-c} exp(-(log x)^2/2), phi(v) = sqrt(2 pi) exp(-v^2/2)."""
    phi = SpectralFunction(lambda v: SQRT_2PI * np.exp(-0.5 * np.asarray(v) ** 2),
                           tags={"L1", "L2", "Linf", "continuous"})
    values = {
        "phi_at_0": (SQRT_2PI, Provenance.DERIVED),
        "x2_norm": (math.pi ** 0.25, Provenance.DERIVED),
        "dist1_sigma2": (2 * math.pi * float(erfc(math.sqrt(2.0))), Provenance.DERIVED),
    }

    def derivative(r, t):
        t = np.asarray(t, dtype=float)
        return (-1.0) ** r * eval_hermitenorm(r, t) * np.exp(-0.5 * t * t)

    return _pair("gauss_log", c, lambda t: np.exp(-0.5 * np.asarray(t) ** 2), phi,
                 {"Sobolev(all r, p)", "Lipschitz(all orders)"}, values, {"c": c},
                 profile_derivative=derivative)


def _bump_profile(sigma0: float, n: int):
    nu = n + 0.5
    scale = sigma0 / (2 * math.pi) * math.sqrt(math.pi) * math.gamma(n + 1) * 2.0 ** nu
    m = np.arange(12)
    # series of J_nu(z)/z^nu, used near z = 0
    coef = (-1.0) ** m / (4.0 ** m * gamma(m + 1) * gamma(m + nu + 1) * 2.0 ** nu)

    def profile(t):
        z = sigma0 * np.abs(np.asarray(t, dtype=float))
        out = np.empty(z.shape)
        small = z < 1.0
        zs = z[small]
        out[small] = np.polyval(coef[::-1], zs * zs)
        zb = z[~small]
        out[~small] = jv(nu, zb) / zb ** nu
        return scale * out

    return profile


def bump_bl(sigma0: float = 2.0, n: int = 8, c: float = 1.0) -> TestPair:
    """phi(v) = (1 - (v/sigma0)^2)^n on [-sigma0, sigma0], zero outside.

    The profile is the closed form
    (sigma0/2 pi) sqrt(pi) n! 2^nu J_nu(z)/z^nu, nu = n + 1/2, z = sigma0 |t|,
    which decays like |t|^{-(n+1)}.
    """
    if not sigma0 > 0 or int(n) != n or n < 1:
        raise ValueError("bump_bl needs sigma0 > 0 and an integer n >= 1")
    phi = SpectralFunction(
        lambda v: np.clip(1.0 - (np.asarray(v, dtype=float) / sigma0) ** 2, 0.0, None) ** n,
        support=sigma0,
        tags={"L1", "L2", "Linf", "continuous"},
    )
    values = {
        "dist_beyond_support": (0.0, Provenance.TRIVIAL),
        "support": (sigma0, Provenance.TRIVIAL),
        "phi_at_0": (1.0, Provenance.TRIVIAL),
    }
    cfg = TransformConfig(t_window=(-80.0, 80.0), floor=1e-11)
    return _pair("bump_bl", c, _bump_profile(sigma0, int(n)), phi,
                 {f"band-limited sigma={sigma0:g}"}, values, {"sigma0": sigma0, "n": int(n), "c": c},
                 transform_cfg=cfg)


def sobolev_tail(m: int, sigma: float) -> float:
    """int_sigma^inf (1 + v^2)^{-m} dv by the reduction
    I_{j+1} = (2j-1)/(2j) I_j - sigma / (2j (1 + sigma^2)^j)."""
    total = math.pi / 2 - math.atan(sigma)
    for j in range(1, m):
        total = (2 * j - 1) / (2 * j) * total - sigma / (2 * j * (1 + sigma * sigma) ** j)
    return total


def _sobolev_poly(m: int) -> np.ndarray:
    # coefficients of P(z), highest power first, with
    # (1/2 pi) int (1+v^2)^{-m} e^{-ivt} dv = e^{-|t|} P(|t|) / (2^m (m-1)!)
    coeffs = np.zeros(m)
    for j in range(m):
        coeffs[j] = math.factorial(m - 1 + j) / (math.factorial(j) * math.factorial(m - 1 - j)) / 2.0 ** j
    return coeffs


def sobolev_m(m: int = 2, c: float = 1.0) -> TestPair:
    """phi(v) = (1 + v^2)^{-m}; Theta^r_c f lies in X^2_c for r < 2m - 1/2."""
    if int(m) != m or m < 1:
        raise ValueError("m must be a positive integer")
    m = int(m)
    poly = _sobolev_poly(m)
    norm = 2.0 ** m * math.factorial(m - 1)

    def profile(t):
        a = np.abs(np.asarray(t, dtype=float))
        return np.exp(-a) * np.polyval(poly, a) / norm

    def derivative(r, t):
        if r > 2 * m - 1:
            raise ValueError(f"profile derivative of order {r} is not a function")
        t = np.asarray(t, dtype=float)
        p = np.poly1d(poly)
        for _ in range(r):
            p = p.deriv() - p
        return np.sign(t) ** r * np.exp(-np.abs(t)) * p(np.abs(t)) / norm

    phi = SpectralFunction(lambda v: (1.0 + np.asarray(v, dtype=float) ** 2) ** (-m),
                           tags={"L1", "L2", "Linf", "continuous"})
    values = {
        "tail_slope_q1": (-(2.0 * m - 1.0), Provenance.DERIVED),
        "dist1_sigma4": (2.0 * sobolev_tail(m, 4.0), Provenance.DERIVED),
        "phi_at_0": (1.0, Provenance.TRIVIAL),
    }
    # v_window stays below the alias frequency pi/t_step of the forward trapezoid
    V = 100.0
    cfg = TransformConfig(t_step=1.0 / 128.0, v_window=(-V, V), v_step=1.0 / 16.0,
                          floor=2.0 * (1 + V * V) ** (-m))
    # slow spectral decay leaves a window-truncation error of order V^{1-2m}
    tol = {1: 1e-2, 2: 1e-6}.get(m, 1e-8)
    return _pair("sobolev_m", c, profile, phi, {f"Sobolev(r < {2 * m - 0.5:g}, p=2)"}, values,
                 {"m": m, "c": c}, roundtrip_tol=tol, transform_cfg=cfg, profile_derivative=derivative)


def lin_kernel(c: float = 1.0) -> TestPair:
    """f = lin_c, phi = indicator of [-pi, pi]."""
    phi = SpectralFunction(rect, support=math.pi, tags={"L1", "L2", "Linf"})
    f = SignalFunction(c=c, evaluator=lambda x: lin_c(x, c), spectrum=phi,
                       class_tags={"band-limited sigma=pi", "slow-decay"},
                       profile=lambda t: sinc(np.asarray(t, dtype=float)))
    values = {
        "phi_at_0": (1.0, Provenance.PUBLISHED),
        "value_at_1": (1.0, Provenance.PUBLISHED),
        "support": (math.pi, Provenance.PUBLISHED),
    }
    return TestPair("lin_kernel", f, phi, f.class_tags, values, {"c": c},
                    roundtrip_tol=5e-2, transform_cfg=TransformConfig(**_SLOW_CFG))


_BUILDERS = {
    "sinc_shifted": sinc_shifted,
    "sinc_centered": sinc_centered,
    "gauss_log": gauss_log,
    "bump_bl": bump_bl,
    "sobolev_m": sobolev_m,
    "lin_kernel": lin_kernel,
}

NAMES = tuple(_BUILDERS)


def lookup(name: str, **params) -> TestPair:
    """Build the named entry with the given parameters."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise NotFoundError(f"unknown catalog entry {name!r}; known: {', '.join(NAMES)}") from None
    return builder(**params)


def catalog(c: float = 1.0, T: float = 2.0) -> list[TestPair]:
    """Default instances of every entry (three Sobolev orders)."""
    return [
        sinc_shifted(T, c),
        sinc_centered(T, c),
        gauss_log(c),
        bump_bl(2.0, 8, c),
        sobolev_m(1, c),
        sobolev_m(2, c),
        sobolev_m(3, c),
        lin_kernel(c),
    ]
