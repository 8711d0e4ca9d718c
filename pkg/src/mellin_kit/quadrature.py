"""Deterministic quadrature helpers shared by the transform, distance and
remainder computations.

Two rules are used throughout:

* composite trapezoid on uniform grids (the log axis, sampled spectra),
* composite Gauss-Legendre on panels for finite or tail intervals in the
  spectral variable. Panel nodes never touch the panel edges, so jump
  discontinuities placed on an edge (support ends, sawtooth kinks) are
  integrated without evaluating the function at the jump.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import NotInDomainError

DEFAULT_FLOOR = 1e-14
GL_ORDER = 20
V_CAP = 1e6


@lru_cache(maxsize=8)
def _leggauss(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def trapezoid(values: np.ndarray, step: float, axis: int = -1) -> np.ndarray:
    """Composite trapezoid rule on a uniform grid."""
    values = np.asarray(values)
    inner = np.sum(values, axis=axis)
    first = np.take(values, 0, axis=axis)
    last = np.take(values, -1, axis=axis)
    return step * (inner - 0.5 * (first + last))


def panel_edges(
    a: float,
    b: float,
    *,
    max_width: float = math.inf,
    min_width: float = 0.25,
    growth: float = 0.25,
    breakpoints: Iterable[float] = (),
) -> np.ndarray:
    """Panel edges on [a, b].

    Widths start at ``min_width`` and grow proportionally to |v| (relative
    factor ``growth``), capped at ``max_width``. Breakpoints inside (a, b) are
    always edges.
    """
    if not b > a:
        return np.array([a, a])
    cut = sorted({float(p) for p in breakpoints if a < p < b})
    stops = cut + [b]
    edges = [a]
    v = a
    for stop in stops:
        while v < stop:
            w = max(min_width, growth * abs(v))
            w = min(w, max_width)
            nxt = v + w
            # avoid a sliver panel in front of a stop
            if nxt >= stop or stop - nxt < 0.25 * w:
                nxt = stop
            edges.append(nxt)
            v = nxt
    return np.asarray(edges, dtype=float)


def gauss_nodes(edges: Sequence[float], order: int = GL_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of composite Gauss-Legendre over consecutive edges."""
    edges = np.asarray(edges, dtype=float)
    x, w = _leggauss(order)
    left, right = edges[:-1], edges[1:]
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def integrate_panels(
    func: Callable[[np.ndarray], np.ndarray], edges: Sequence[float], order: int = GL_ORDER
):
    """Integrate ``func`` over the panel partition given by ``edges``."""
    if len(edges) < 2 or edges[-1] <= edges[0]:
        return 0.0
    nodes, weights = gauss_nodes(edges, order)
    return np.sum(weights * func(nodes))


def _probe_points(a: float, v_cap: float) -> np.ndarray:
    near = a + np.linspace(0.0, 16.0, 257)
    far = a + np.geomspace(16.0, v_cap, 160)
    return np.concatenate([near, far[1:]])


def decay_cutoff(
    absfunc: Callable[[np.ndarray], np.ndarray],
    a: float,
    *,
    floor: float = DEFAULT_FLOOR,
    v_cap: float = V_CAP,
) -> tuple[float, float, float]:
    """Locate where a nonnegative function on [a, inf) becomes negligible.

    Returns ``(V, alpha, peak)``: the truncation point, the fitted power-law
    decay exponent at V (``inf`` when the function is below the floor there),
    and the peak magnitude seen on the probes.
    """
    probes = _probe_points(a, v_cap)
    vals = np.abs(np.asarray(absfunc(probes), dtype=float))
    if not np.all(np.isfinite(vals)):
        raise NotInDomainError("integrand is not finite on the tail")
    peak = float(vals.max())
    if peak == 0.0:
        return a, math.inf, 0.0
    above = np.nonzero(vals > floor * peak)[0]
    last = int(above[-1])
    if last < len(probes) - 1:
        return float(probes[last + 1]), math.inf, peak
    v1, v2 = probes[-9], probes[-1]
    f1, f2 = vals[-9], vals[-1]
    alpha = math.log(f1 / f2) / math.log(v2 / v1) if f2 > 0 and f1 > 0 else math.inf
    return float(v_cap), alpha, peak


def tail_integral(
    absfunc: Callable[[np.ndarray], np.ndarray],
    a: float,
    *,
    floor: float = DEFAULT_FLOOR,
    v_cap: float = V_CAP,
    breakpoints: Iterable[float] = (),
    order: int = GL_ORDER,
) -> float:
    """Integral of a nonnegative, eventually decaying function over [a, inf).

    Power-law tails that have not reached the floor by ``v_cap`` are closed
    with the analytic tail of the fitted power; exponents <= 1 mean the
    integral diverges.
    """
    V, alpha, peak = decay_cutoff(absfunc, a, floor=floor, v_cap=v_cap)
    if peak == 0.0:
        return 0.0
    if math.isfinite(alpha) and alpha <= 1.02:
        raise NotInDomainError(f"tail decays like v^-{alpha:.3g}; not integrable")
    edges = panel_edges(a, V, breakpoints=breakpoints)
    total = float(integrate_panels(absfunc, edges, order))
    if math.isfinite(alpha):
        fV = float(np.abs(absfunc(np.array([V])))[0])
        total += fV * V / (alpha - 1.0)
    return total


def refined_sup(
    func: Callable[[np.ndarray], np.ndarray], grid: np.ndarray, values: np.ndarray | None = None
) -> float:
    """Grid supremum of a nonnegative function plus one local refinement pass
    around the grid argmax."""
    grid = np.asarray(grid, dtype=float)
    if values is None:
        values = np.asarray(func(grid), dtype=float)
    i = int(np.argmax(values))
    best = float(values[i])
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    if hi > lo:
        res = minimize_scalar(
            lambda s: -float(np.asarray(func(np.array([s])), dtype=float)[0]),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-12 * max(1.0, abs(lo), abs(hi))},
        )
        best = max(best, -float(res.fun))
    return best
