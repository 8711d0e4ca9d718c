"""Closed-form kernels: sinc, lin_c, rect and the 4-periodic sawtooth."""

from __future__ import annotations

import enum

import numpy as np

from .errors import DomainError

SINC_SERIES_THRESHOLD = 1e-4


class KernelId(str, enum.Enum):
    SINC = "sinc"
    LIN_C = "lin_c"
    RECT = "rect"
    SAWTOOTH_PHI = "sawtooth_phi"


def _scalar_or_array(arr: np.ndarray, was_scalar: bool):
    return float(arr) if was_scalar else arr


def sinc(t):
    """Normalized sinc, sin(pi t)/(pi t), with sinc(0) = 1.

    Returns exactly 0 at nonzero integers. Near 0 a three-term Taylor series
    replaces the quotient.
    """
    was_scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)
    pt = np.pi * t
    small = np.abs(t) < SINC_SERIES_THRESHOLD
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = np.sin(pt) / pt
    pt2 = pt * pt
    series = 1.0 - pt2 / 6.0 + pt2 * pt2 / 120.0
    out = np.where(small, series, direct)
    out = np.where((t == np.round(t)) & (t != 0), 0.0, out)
    return _scalar_or_array(out, was_scalar)


def lin_c(x, c: float):
    """lin_c(x) = x^{-c} sinc(log x); lin_c(1) = 1."""
    was_scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("lin_c is defined for x > 0 only")
    out = x ** (-c) * sinc(np.log(x))
    out = np.where(x == 1.0, 1.0, out)
    return _scalar_or_array(out, was_scalar)


def lin_c_log(t, c: float):
    """lin_c evaluated at x = e^t, i.e. e^{-ct} sinc(t)."""
    t = np.asarray(t, dtype=float)
    return np.exp(-c * t) * sinc(t)


def rect(x):
    """1 for |x| < pi, 1/2 for |x| = pi, 0 for |x| > pi."""
    was_scalar = np.ndim(x) == 0
    a = np.abs(np.asarray(x, dtype=float))
    out = np.where(a < np.pi, 1.0, np.where(a == np.pi, 0.5, 0.0))
    return _scalar_or_array(out, was_scalar)


def sawtooth_phi(v):
    """phi(v) = |v + 1 - 4 floor((v + 3)/4)| - 1.

    4-periodic, equal to v on [-1, 1] and to 2 - v on [1, 3].
    """
    was_scalar = np.ndim(v) == 0
    v = np.asarray(v, dtype=float)
    out = np.abs(v + 1.0 - 4.0 * np.floor((v + 3.0) / 4.0)) - 1.0
    return _scalar_or_array(out, was_scalar)


KERNELS = {
    KernelId.SINC: sinc,
    KernelId.LIN_C: lin_c,
    KernelId.RECT: rect,
    KernelId.SAWTOOTH_PHI: sawtooth_phi,
}


def kernel(name: str):
    return KERNELS[KernelId(name)]

