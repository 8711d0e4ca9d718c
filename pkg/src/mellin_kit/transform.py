"""Forward and inverse Mellin transforms on the line c + iR.

Under x = e^t the forward transform becomes the Fourier integral
``phi(v) = int e^{ivt} g(t) dt`` of the weighted profile g, and the inverse
becomes ``f(x) = x^{-c}/(2 pi) int phi(v) e^{-ivt} dv``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .core import SignalFunction, SpectralFunction, _positive
from .errors import EvaluationDomainError, WindowTooSmallError
from .quadrature import DEFAULT_FLOOR, gauss_nodes, panel_edges

DEFAULT_T_WINDOW = (-40.0, 40.0)
DEFAULT_T_STEP = 1.0 / 64.0
DEFAULT_V_WINDOW = (-40.0, 40.0)
DEFAULT_V_STEP = 1.0 / 128.0

# complex entries per block in the dense oscillatory sums
_BLOCK = 1 << 22


@dataclass(frozen=True)
class SpectralSamples:
    """phi sampled on a uniform, strictly increasing v grid."""

    v_grid: np.ndarray
    values: np.ndarray
    c: float

    def __post_init__(self):
        v = np.asarray(self.v_grid, dtype=float)
        vals = np.asarray(self.values, dtype=complex)
        if v.ndim != 1 or len(v) < 2:
            raise ValueError("v_grid needs at least two points")
        if vals.shape != v.shape:
            raise ValueError("values length must equal grid length")
        d = np.diff(v)
        if np.any(d <= 0):
            raise ValueError("v_grid must be strictly increasing")
        if not np.allclose(d, d[0], rtol=1e-9, atol=1e-12):
            raise ValueError("v_grid must be uniform")
        object.__setattr__(self, "v_grid", v)
        object.__setattr__(self, "values", vals)

    @property
    def step(self) -> float:
        return float(self.v_grid[1] - self.v_grid[0])

    def to_csv(self, target: Union[str, Path, io.TextIOBase, None] = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["v", "re", "im"])
        for v, z in zip(self.v_grid, self.values):
            w.writerow([repr(float(v)), repr(float(z.real)), repr(float(z.imag))])
        text = buf.getvalue()
        if isinstance(target, (str, Path)):
            Path(target).write_text(text, encoding="utf-8")
        elif target is not None:
            target.write(text)
        return text

    @classmethod
    def from_csv(cls, source: Union[str, Path, io.TextIOBase], c: float) -> "SpectralSamples":
        if isinstance(source, (str, Path)):
            source = io.StringIO(Path(source).read_text(encoding="utf-8"))
        reader = csv.DictReader(source)
        if reader.fieldnames != ["v", "re", "im"]:
            raise ValueError("expected CSV header v,re,im")
        rows = [(float(r["v"]), complex(float(r["re"]), float(r["im"]))) for r in reader]
        v, z = zip(*rows)
        return cls(np.array(v), np.array(z), c)


def _dense_fourier(nodes: np.ndarray, coeffs: np.ndarray, t: np.ndarray, sign: float) -> np.ndarray:
    """sum_j coeffs_j exp(sign * i * nodes_j * t_m) for every t_m (fixed order)."""
    t = np.asarray(t, dtype=float).ravel()
    out = np.empty(t.shape, dtype=complex)
    rows = max(1, _BLOCK // max(1, len(nodes)))
    for start in range(0, len(t), rows):
        tt = t[start:start + rows]
        phase = np.exp(sign * 1j * np.outer(tt, nodes))
        out[start:start + rows] = phase @ coeffs
    return out


def _check_window_decay(values: np.ndarray, floor: float, what: str) -> None:
    mag = np.abs(values)
    peak = mag.max()
    if peak > 0 and max(mag[0], mag[-1]) > floor * peak:
        raise WindowTooSmallError(
            f"{what} has not decayed at the window ends "
            f"({max(mag[0], mag[-1]) / peak:.2e} of peak > floor {floor:.1e})"
        )


def mellin_forward(
    f: SignalFunction,
    v_grid: Sequence[float],
    t_window: tuple[float, float] = DEFAULT_T_WINDOW,
    t_step: float = DEFAULT_T_STEP,
    *,
    floor: float = DEFAULT_FLOOR,
    allow_slow_decay: bool = False,
) -> SpectralSamples:
    """Sample [f]^_{M_c}(c + iv) on ``v_grid`` by trapezoid on the log axis.

    Raises WindowTooSmallError when the profile exceeds ``floor`` (relative
    to its peak) at the window ends, unless ``allow_slow_decay`` is set for
    known slowly decaying inputs such as lin_c.
    """
    a, b = t_window
    n = int(round((b - a) / t_step))
    t = a + t_step * np.arange(n + 1)
    g = f.weighted_profile(t)
    if not np.all(np.isfinite(g)):
        raise EvaluationDomainError("non-finite integrand in forward transform")
    if not allow_slow_decay:
        _check_window_decay(g, floor, "weighted profile")
    w = np.full(t.shape, t_step)
    w[0] = w[-1] = 0.5 * t_step
    v = np.asarray(v_grid, dtype=float)
    values = _dense_fourier(t, w * g, v, +1.0)
    return SpectralSamples(v, values, f.c)


def _support_panels(s0: float, v_step: float, t: np.ndarray):
    tmax = float(np.max(np.abs(t))) if t.size else 0.0
    width = 16.0 * v_step
    if tmax > 0:
        width = min(width, 8.0 / tmax)
    edges = panel_edges(-s0, s0, min_width=width, max_width=width)
    return gauss_nodes(edges)


def spectral_profile(
    phi: Union[SpectralFunction, SpectralSamples],
    t,
    v_window: tuple[float, float] | None = None,
    v_step: float = DEFAULT_V_STEP,
    *,
    floor: float = DEFAULT_FLOOR,
) -> np.ndarray:
    """(1/2 pi) int phi(v) e^{-ivt} dv, i.e. the weighted profile of the
    inverse transform, at log-axis points t."""
    t_arr = np.asarray(t, dtype=float)
    flat = t_arr.ravel()
    if isinstance(phi, SpectralSamples):
        _check_window_decay(phi.values, floor, "spectral samples")
        w = np.full(phi.v_grid.shape, phi.step)
        w[0] = w[-1] = 0.5 * phi.step
        out = _dense_fourier(phi.v_grid, w * phi.values, flat, -1.0)
    elif phi.support is not None and v_window is None:
        if phi.support == 0:
            return np.zeros(t_arr.shape, dtype=complex)
        nodes, weights = _support_panels(phi.support, v_step, flat)
        out = _dense_fourier(nodes, weights * phi(nodes), flat, -1.0)
    else:
        a, b = v_window if v_window is not None else DEFAULT_V_WINDOW
        n = int(round((b - a) / v_step))
        v = a + v_step * np.arange(n + 1)
        vals = phi(v)
        if phi.support is None or phi.support > max(-a, b):
            _check_window_decay(vals, floor, "spectrum")
        w = np.full(v.shape, v_step)
        w[0] = w[-1] = 0.5 * v_step
        out = _dense_fourier(v, w * vals, flat, -1.0)
    return (out / (2.0 * np.pi)).reshape(t_arr.shape)


def mellin_inverse(
    phi: Union[SpectralFunction, SpectralSamples],
    c: float,
    x_points,
    v_window: tuple[float, float] | None = None,
    v_step: float = DEFAULT_V_STEP,
    *,
    floor: float = DEFAULT_FLOOR,
) -> np.ndarray:
    """(x^{-c}/2 pi) int phi(v) x^{-iv} dv at each x.

    Spectra with support metadata are integrated over their support by
    Gauss-Legendre panels; otherwise a trapezoid over ``v_window`` is used
    and the window must capture the spectrum to within ``floor``.
    """
    x = _positive(x_points)
    prof = spectral_profile(phi, np.log(x), v_window, v_step, floor=floor)
    return x ** (-c) * prof


@dataclass(frozen=True)
class TransformConfig:
    t_window: tuple[float, float] = DEFAULT_T_WINDOW
    t_step: float = DEFAULT_T_STEP
    v_window: tuple[float, float] = DEFAULT_V_WINDOW
    v_step: float = DEFAULT_V_STEP
    floor: float = DEFAULT_FLOOR
    allow_slow_decay: bool = False
    probe_t: tuple[float, ...] = field(default_factory=lambda: tuple(np.linspace(-3.0, 3.0, 25)))


def roundtrip_error(f: SignalFunction, cfg: TransformConfig = TransformConfig()) -> float:
    """sup over probe points of |f(x) - M^{-1}[M[f]](x)| x^c.

    The v grid covers the spectrum's support when it is known, otherwise
    ``cfg.v_window``.
    """
    if f.spectrum is not None and f.spectrum.support is not None:
        # support ends land on interior nodes so a jump there gets the
        # midpoint treatment of the trapezoid rule
        s0 = max(f.spectrum.support, cfg.v_step)
        half = int(math.ceil(s0 / cfg.v_step))
        step = s0 / half
        v = step * np.arange(-half - 4, half + 5)
    else:
        v_lo, v_hi = cfg.v_window
        n = max(2, int(math.ceil((v_hi - v_lo) / cfg.v_step)))
        v = np.linspace(v_lo, v_hi, n + 1)
    samples = mellin_forward(f, v, cfg.t_window, cfg.t_step,
                             floor=cfg.floor, allow_slow_decay=cfg.allow_slow_decay)
    t = np.asarray(cfg.probe_t, dtype=float)
    back = spectral_profile(samples, t, floor=cfg.floor if not cfg.allow_slow_decay else 1.0)
    return float(np.max(np.abs(f.weighted_profile(t) - back)))
