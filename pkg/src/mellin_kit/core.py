"""Domain types shared by every module: signals on the positive half-line,
their Mellin spectra on the line c + iR, log-uniform grids and X^p_c norms.

All quadrature happens on the log axis t = log x. A signal is therefore best
described by its *weighted profile* g(t) = e^{ct} f(e^t); every X^p_c norm of
f is an ordinary L^p norm of g, and the Mellin transform of f at c + iv is
the Fourier integral of g with kernel e^{ivt}.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .errors import (
    DomainError,
    EvaluationDomainError,
    MellinRangeError,
    UnsupportedSpaceError,
)
from .quadrature import refined_sup, trapezoid

ArrayFunc = Callable[[np.ndarray], np.ndarray]

# exp() overflows just above 709.78
_EXP_LIMIT = 700.0


def _evaluate(func: ArrayFunc, arg) -> np.ndarray:
    arr = np.asarray(arg, dtype=float)
    out = np.asarray(func(arr), dtype=complex)
    return np.broadcast_to(out, arr.shape).copy() if out.shape != arr.shape else out


def _positive(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("points must be positive reals")
    return x


@dataclass(frozen=True)
class SpaceDescriptor:
    """The space X^p_c: integrability index p and Mellin exponent c."""

    p: float
    c: float = 0.0

    def __post_init__(self):
        if not self.p >= 1:
            raise UnsupportedSpaceError(f"p must lie in [1, inf], got {self.p}")
        if not math.isfinite(self.c):
            raise DomainError("Mellin exponent c must be finite")

    @property
    def normable(self) -> bool:
        return self.p in (1, 2, math.inf)


@dataclass(frozen=True)
class BandLimit:
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError("band limit must be positive")


@dataclass(frozen=True)
class SpectralFunction:
    """The v-density phi(v) = [f]^_{M_c}(c + iv).

    ``support`` is the half-width s0 of a closed interval [-s0, s0] outside
    which phi vanishes; ``tags`` is a subset of {"L1", "L2", "Linf",
    "continuous"}.
    """

    evaluator: ArrayFunc
    support: Optional[float] = None
    tags: frozenset = frozenset({"L1", "L2", "Linf"})

    def __post_init__(self):
        if self.support is not None and not self.support >= 0:
            raise DomainError("support half-width must be nonnegative")
        object.__setattr__(self, "tags", frozenset(self.tags))

    def __call__(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        out = _evaluate(self.evaluator, v)
        if self.support is not None:
            out = np.where(np.abs(v) > self.support, 0.0, out)
        return out

    def has(self, tag: str) -> bool:
        return tag in self.tags

    def _combine(self, other: "SpectralFunction", a: complex, b: complex) -> "SpectralFunction":
        if self.support is None or other.support is None:
            support = None
        else:
            support = max(self.support, other.support)
        return SpectralFunction(
            lambda v: a * self(v) + b * other(v), support, self.tags & other.tags
        )

    def __add__(self, other):
        return self._combine(other, 1.0, 1.0)

    def __sub__(self, other):
        return self._combine(other, 1.0, -1.0)

    def __mul__(self, scalar):
        return SpectralFunction(lambda v: scalar * self(v), self.support, self.tags)

    __rmul__ = __mul__


@dataclass(frozen=True)
class SignalFunction:
    """A map f: R+ -> C with Mellin exponent c.

    Either ``evaluator`` (x -> f(x)) or ``profile`` (t -> e^{ct} f(e^t)) must
    be given; the profile is preferred for quadrature because it never
    overflows on wide log windows.
    """

    c: float
    evaluator: Optional[ArrayFunc] = None
    spectrum: Optional[SpectralFunction] = None
    class_tags: frozenset = field(default_factory=frozenset)
    profile: Optional[ArrayFunc] = None

    def __post_init__(self):
        if self.evaluator is None and self.profile is None:
            raise ValueError("a signal needs an evaluator or a profile")
        if not math.isfinite(self.c):
            raise DomainError("Mellin exponent c must be finite")
        object.__setattr__(self, "class_tags", frozenset(self.class_tags))

    @classmethod
    def from_profile(cls, c, profile, spectrum=None, class_tags=()) -> "SignalFunction":
        return cls(c=c, spectrum=spectrum, class_tags=frozenset(class_tags), profile=profile)

    def __call__(self, x) -> np.ndarray:
        x = _positive(x)
        if self.evaluator is not None:
            return _evaluate(self.evaluator, x)
        return x ** (-self.c) * _evaluate(self.profile, np.log(x))

    def weighted_profile(self, t) -> np.ndarray:
        """g(t) = e^{ct} f(e^t)."""
        t = np.asarray(t, dtype=float)
        if self.profile is not None:
            return _evaluate(self.profile, t)
        if np.any(np.abs(t) > _EXP_LIMIT) or np.any(np.abs(self.c * t) > _EXP_LIMIT):
            raise MellinRangeError("log-axis point outside the representable range")
        return np.exp(self.c * t) * _evaluate(self.evaluator, np.exp(t))

    def with_spectrum(self, spectrum: SpectralFunction) -> "SignalFunction":
        return replace(self, spectrum=spectrum)

    def _combine(self, other: "SignalFunction", a: complex, b: complex) -> "SignalFunction":
        if other.c != self.c:
            raise DomainError("cannot combine signals with different Mellin exponents")
        spectrum = None
        if self.spectrum is not None and other.spectrum is not None:
            spectrum = self.spectrum._combine(other.spectrum, a, b)
        return SignalFunction(
            c=self.c,
            spectrum=spectrum,
            class_tags=self.class_tags & other.class_tags,
            profile=lambda t: a * self.weighted_profile(t) + b * other.weighted_profile(t),
        )

    def __add__(self, other):
        return self._combine(other, 1.0, 1.0)

    def __sub__(self, other):
        return self._combine(other, 1.0, -1.0)

    def __mul__(self, scalar):
        spectrum = None if self.spectrum is None else scalar * self.spectrum
        return SignalFunction(
            c=self.c,
            spectrum=spectrum,
            class_tags=self.class_tags,
            profile=lambda t: scalar * self.weighted_profile(t),
        )

    __rmul__ = __mul__


def zero_signal(c: float = 0.0) -> SignalFunction:
    spectrum = SpectralFunction(lambda v: np.zeros_like(v), support=0.0,
                                tags={"L1", "L2", "Linf", "continuous"})
    return SignalFunction.from_profile(c, lambda t: np.zeros_like(t), spectrum, {"band-limited"})


class Axis(str, enum.Enum):
    X = "x_axis"
    LOG = "log_axis"


@dataclass(frozen=True)
class LogUniformGrid:
    """Nodes x_k = e^{k/T} for k_min <= k <= k_max (uniform step 1/T in t)."""

    T: float
    k_min: int
    k_max: int
    values_axis: Axis = Axis.X

    def __post_init__(self):
        if not self.T > 0:
            raise DomainError("T must be positive")
        if not self.k_min < self.k_max:
            raise DomainError("k_min must be smaller than k_max")
        object.__setattr__(self, "values_axis", Axis(self.values_axis))

    @classmethod
    def symmetric(cls, T: float = 64.0, half_width: float = 40.0) -> "LogUniformGrid":
        K = int(math.ceil(half_width * T))
        return cls(T, -K, K)

    @property
    def step(self) -> float:
        return 1.0 / self.T

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.k_min, self.k_max + 1)

    def log_node(self, k):
        return np.asarray(k) / self.T

    def node(self, k):
        return np.exp(self.log_node(k))

    @property
    def log_nodes(self) -> np.ndarray:
        return self.indices / self.T

    @property
    def nodes(self) -> np.ndarray:
        return np.exp(self.log_nodes)

    def coordinates(self) -> np.ndarray:
        return self.log_nodes if self.values_axis is Axis.LOG else self.nodes


DEFAULT_GRID = LogUniformGrid.symmetric()


def lp_norm_on_grid(values: np.ndarray, p: float, step: float) -> float:
    a = np.abs(values)
    if p == 1:
        return float(trapezoid(a, step))
    if p == 2:
        return float(math.sqrt(trapezoid(a * a, step)))
    raise UnsupportedSpaceError(f"p={p}")


def xnorm(f: SignalFunction, space: SpaceDescriptor, grid: LogUniformGrid = DEFAULT_GRID) -> float:
    """Norm of f in X^p_c for p in {1, 2, inf}, by quadrature on the log axis.

    Uses the exponent stored in ``space``; it must agree with ``f.c``.
    """
    if not space.normable:
        raise UnsupportedSpaceError(f"X^p_c norm only for p in {{1, 2, inf}}, got p={space.p}")
    if space.c != f.c:
        raise DomainError("space exponent differs from the signal exponent")
    t = grid.log_nodes
    g = f.weighted_profile(t)
    if not np.all(np.isfinite(g)):
        raise EvaluationDomainError("signal evaluator returned non-finite values")
    if space.p == math.inf:
        return refined_sup(lambda s: np.abs(f.weighted_profile(s)), t, np.abs(g))
    return lp_norm_on_grid(g, space.p, grid.step)


def translate(f: SignalFunction, h: float) -> SignalFunction:
    """Mellin translation (tau_h^c f)(x) = h^c f(hx)."""
    if not h > 0:
        raise DomainError("translation parameter h must be positive")
    s = math.log(h)
    c = f.c
    evaluator = None
    if f.evaluator is not None:
        evaluator = lambda x: h ** c * f(h * np.asarray(x, dtype=float))
    profile = lambda t: f.weighted_profile(np.asarray(t, dtype=float) + s)
    spectrum = None
    if f.spectrum is not None:
        phi = f.spectrum
        spectrum = SpectralFunction(lambda v: np.exp(-1j * v * s) * phi(v), phi.support, phi.tags)
    return SignalFunction(c=c, evaluator=evaluator, spectrum=spectrum,
                          class_tags=f.class_tags, profile=profile)
