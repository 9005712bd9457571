"""Parametric severity laws and their lambda-monotonicity checkers.

Every margin exposes ``cdf`` / ``survival`` / ``pdf`` / ``quantile``, all
accepting scalars or numpy arrays.  Each family singles out one parameter
(``lam``) that the comparison theorems vary; ``with_lam`` rebuilds a margin
of the same family at a new value of it, and ``structure`` tags whether the
family is of scale, proportional-hazards or transmuted type in that
parameter.
"""

from __future__ import annotations

import dataclasses
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .reports import ConditionReport

__all__ = [
    "regularized_lower_incomplete_gamma",
    "BaselineLaw",
    "StdExponential",
    "StdUniform",
    "Margin",
    "Gamma",
    "Pareto",
    "Weibull",
    "TransmutedExponential",
    "ScaleMargin",
    "PHRMargin",
    "TGMargin",
    "same_family",
    "check_survival_decreasing_in_lambda",
    "check_survival_convex_in_lambda",
    "check_density_decreasing",
]

_MAX_ITER = 500
_REL_EPS = 1e-14
_FPMIN = 1e-300


def _split(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _join(out: np.ndarray, scalar: bool):
    return float(out) if scalar else out


def _inc_gamma_pq(a: float, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Regularized lower/upper incomplete gamma pair (P, Q) for scalar a > 0."""
    p = np.zeros_like(x)
    q = np.ones_like(x)
    lg = math.lgamma(a)
    pos = x > 0
    # prefactor x^a e^{-x} / Gamma(a); underflows cleanly to 0 far in the tail
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        pref = np.where(pos, np.exp(a * np.log(np.where(pos, x, 1.0)) - x - lg), 0.0)

    lower = pos & (x < a + 1.0)
    if lower.any():
        xs = x[lower]
        term = np.full_like(xs, 1.0 / a)
        total = term.copy()
        ap = a
        active = np.ones_like(xs, dtype=bool)
        for _ in range(_MAX_ITER):
            ap += 1.0
            term = term * xs / ap
            total = np.where(active, total + term, total)
            active &= np.abs(term) > np.abs(total) * _REL_EPS
            if not active.any():
                break
        else:
            raise RuntimeError("incomplete gamma series failed to converge")
        pv = pref[lower] * total
        p[lower] = pv
        q[lower] = 1.0 - pv

    upper = pos & ~lower
    if upper.any():
        xs = x[upper]
        # modified Lentz continued fraction for Q
        b = xs + 1.0 - a
        c = np.full_like(xs, 1.0 / _FPMIN)
        d = 1.0 / np.where(np.abs(b) < _FPMIN, _FPMIN, b)
        h = d.copy()
        active = np.ones_like(xs, dtype=bool)
        for i in range(1, _MAX_ITER + 1):
            an = -i * (i - a)
            b = b + 2.0
            d = an * d + b
            d = np.where(np.abs(d) < _FPMIN, _FPMIN, d)
            c = b + an / c
            c = np.where(np.abs(c) < _FPMIN, _FPMIN, c)
            d = 1.0 / d
            delta = d * c
            h = np.where(active, h * delta, h)
            active &= np.abs(delta - 1.0) > _REL_EPS
            if not active.any():
                break
        else:
            raise RuntimeError("incomplete gamma continued fraction failed to converge")
        qv = pref[upper] * h
        q[upper] = qv
        p[upper] = 1.0 - qv

    return p, q


def regularized_lower_incomplete_gamma(a: float, x):
    """Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.

    Uses the power series for x < a + 1 and a continued fraction
    otherwise, with relative termination 1e-14 and a 500-iteration cap.
    """
    if not (a > 0):
        raise ValueError(f"shape parameter must be positive, got {a}")
    arr, scalar = _split(x)
    if np.any(arr < 0):
        raise ValueError("x must be non-negative")
    p, _ = _inc_gamma_pq(float(a), np.atleast_1d(arr))
    return _join(p.reshape(arr.shape), scalar)


def _invert_cdf(cdf, q: np.ndarray, lo: float, hi0: float) -> np.ndarray:
    """Bisect a monotone CDF: expand the upper bracket, then halve to width 1e-12."""
    hi = np.full_like(q, max(hi0, lo + 1.0))
    for _ in range(1100):
        short = cdf(hi) <= q
        if not short.any():
            break
        hi = np.where(short, 2.0 * hi + 1.0, hi)
    else:
        raise RuntimeError("quantile bracket expansion failed")
    lo_arr = np.full_like(q, lo)
    for _ in range(200):
        mid = 0.5 * (lo_arr + hi)
        below = cdf(mid) < q
        lo_arr = np.where(below, mid, lo_arr)
        hi = np.where(below, hi, mid)
        if np.max(hi - lo_arr) < 1e-12:
            break
    return 0.5 * (lo_arr + hi)


def _check_prob(q: np.ndarray):
    if np.any(q <= 0.0) or np.any(q >= 1.0):
        raise ValueError("quantile level must lie strictly inside (0, 1)")


class BaselineLaw(ABC):
    """Parameter-free non-negative law used inside the generic wrappers."""

    support_lo: float = 0.0

    @abstractmethod
    def cdf(self, x): ...

    @abstractmethod
    def pdf(self, x): ...

    @abstractmethod
    def quantile(self, q): ...

    def survival(self, x):
        return 1.0 - self.cdf(x)


@dataclass(frozen=True)
class StdExponential(BaselineLaw):
    """Unit-rate exponential."""

    def cdf(self, x):
        arr, scalar = _split(x)
        return _join(-np.expm1(-np.maximum(arr, 0.0)), scalar)

    def survival(self, x):
        arr, scalar = _split(x)
        return _join(np.exp(-np.maximum(arr, 0.0)), scalar)

    def pdf(self, x):
        arr, scalar = _split(x)
        return _join(np.where(arr < 0.0, 0.0, np.exp(-np.maximum(arr, 0.0))), scalar)

    def quantile(self, q):
        arr, scalar = _split(q)
        _check_prob(arr)
        return _join(-np.log1p(-arr), scalar)


@dataclass(frozen=True)
class StdUniform(BaselineLaw):
    """Uniform on [0, 1]."""

    def cdf(self, x):
        arr, scalar = _split(x)
        return _join(np.clip(arr, 0.0, 1.0), scalar)

    def pdf(self, x):
        arr, scalar = _split(x)
        return _join(np.where((arr >= 0.0) & (arr <= 1.0), 1.0, 0.0), scalar)

    def quantile(self, q):
        arr, scalar = _split(q)
        _check_prob(arr)
        return _join(arr.copy(), scalar)


class Margin(ABC):
    """A severity law with one designated comparison parameter ``lam``."""

    _LAM_FIELD: str = ""
    structure: str = "generic"  # "scale" | "phr" | "tg" | "generic"
    lambda_domain: tuple[float, float] = (-math.inf, math.inf)
    support_lo: float = 0.0

    @property
    def lam(self) -> float:
        return getattr(self, self._LAM_FIELD)

    def with_lam(self, lam: float) -> "Margin":
        return dataclasses.replace(self, **{self._LAM_FIELD: float(lam)})

    @abstractmethod
    def cdf(self, x): ...

    @abstractmethod
    def pdf(self, x): ...

    @abstractmethod
    def quantile(self, q): ...

    def survival(self, x):
        return 1.0 - self.cdf(x)


def same_family(a: Margin, b: Margin) -> bool:
    """True iff ``a`` and ``b`` differ at most in their lam parameter."""
    return type(a) is type(b) and a.with_lam(b.lam) == b


@dataclass(frozen=True)
class Gamma(Margin):
    """Gamma law with density lam^shape x^(shape-1) e^(-lam x) / Gamma(shape)."""

    shape: float
    rate: float

    _LAM_FIELD = "rate"
    structure = "scale"
    lambda_domain = (0.0, math.inf)

    def __post_init__(self):
        if not (self.shape > 0 and self.rate > 0):
            raise ValueError(f"gamma requires shape > 0 and rate > 0, got {self}")

    def cdf(self, x):
        arr, scalar = _split(x)
        z = np.maximum(arr, 0.0) * self.rate
        p, _ = _inc_gamma_pq(self.shape, np.atleast_1d(z))
        return _join(p.reshape(arr.shape), scalar)

    def survival(self, x):
        arr, scalar = _split(x)
        z = np.maximum(arr, 0.0) * self.rate
        _, q = _inc_gamma_pq(self.shape, np.atleast_1d(z))
        return _join(q.reshape(arr.shape), scalar)

    def pdf(self, x):
        arr, scalar = _split(x)
        a, lam = self.shape, self.rate
        pos = arr > 0
        with np.errstate(divide="ignore", over="ignore", under="ignore"):
            val = np.where(
                pos,
                np.exp(
                    a * math.log(lam)
                    + (a - 1.0) * np.log(np.where(pos, arr, 1.0))
                    - lam * arr
                    - math.lgamma(a)
                ),
                0.0,
            )
        if a < 1.0:
            val = np.where(arr == 0.0, np.inf, val)
        elif a == 1.0:
            val = np.where(arr == 0.0, lam, val)
        return _join(val, scalar)

    def quantile(self, q):
        arr, scalar = _split(q)
        _check_prob(arr)
        flat = np.atleast_1d(arr)
        out = _invert_cdf(self.cdf, flat, lo=0.0, hi0=(self.shape + 1.0) / self.rate)
        return _join(out.reshape(arr.shape), scalar)


@dataclass(frozen=True)
class Pareto(Margin):
    """Pareto law on [scale, inf) with survival (scale/x)^exponent."""

    scale: float
    exponent: float

    _LAM_FIELD = "exponent"
    structure = "phr"
    lambda_domain = (0.0, math.inf)

    def __post_init__(self):
        if not (self.scale > 0 and self.exponent > 0):
            raise ValueError(f"pareto requires scale > 0 and exponent > 0, got {self}")

    @property
    def support_lo(self) -> float:
        return self.scale

    def survival(self, x):
        arr, scalar = _split(x)
        inside = arr > self.scale
        with np.errstate(divide="ignore"):
            val = np.where(
                inside, np.exp(self.exponent * np.log(self.scale / np.where(inside, arr, 1.0))), 1.0
            )
        return _join(val, scalar)

    def cdf(self, x):
        return 1.0 - self.survival(x)

    def pdf(self, x):
        arr, scalar = _split(x)
        inside = arr >= self.scale
        safe = np.where(inside, arr, self.scale)
        val = np.where(inside, (self.exponent / safe) * (self.scale / safe) ** self.exponent, 0.0)
        return _join(val, scalar)

    def quantile(self, q):
        arr, scalar = _split(q)
        _check_prob(arr)
        return _join(self.scale * np.exp(-np.log1p(-arr) / self.exponent), scalar)


@dataclass(frozen=True)
class Weibull(Margin):
    """Weibull law with survival e^(-(rate x)^shape)."""

    shape: float
    rate: float

    _LAM_FIELD = "rate"
    structure = "scale"
    lambda_domain = (0.0, math.inf)

    def __post_init__(self):
        if not (self.shape > 0 and self.rate > 0):
            raise ValueError(f"weibull requires shape > 0 and rate > 0, got {self}")

    def survival(self, x):
        arr, scalar = _split(x)
        z = np.maximum(arr, 0.0) * self.rate
        return _join(np.exp(-(z**self.shape)), scalar)

    def cdf(self, x):
        arr, scalar = _split(x)
        z = np.maximum(arr, 0.0) * self.rate
        return _join(-np.expm1(-(z**self.shape)), scalar)

    def pdf(self, x):
        arr, scalar = _split(x)
        a, lam = self.shape, self.rate
        pos = arr > 0
        z = np.where(pos, arr, 1.0) * lam
        val = np.where(pos, a * lam * z ** (a - 1.0) * np.exp(-(z**a)), 0.0)
        if a < 1.0:
            val = np.where(arr == 0.0, np.inf, val)
        elif a == 1.0:
            val = np.where(arr == 0.0, lam, val)
        return _join(val, scalar)

    def quantile(self, q):
        arr, scalar = _split(q)
        _check_prob(arr)
        return _join((-np.log1p(-arr)) ** (1.0 / self.shape) / self.rate, scalar)


def _transmuted_root(r: np.ndarray, lam: float) -> np.ndarray:
    """Solve lam s^2 + (1-lam) s = r for the root s in [0, 1] (stable form)."""
    return 2.0 * r / ((1.0 - lam) + np.sqrt((1.0 - lam) ** 2 + 4.0 * lam * r))


@dataclass(frozen=True)
class TransmutedExponential(Margin):
    """Exponential with mean ``scale`` skewed by a transmute parameter in [-1, 1]."""

    scale: float
    transmute: float

    _LAM_FIELD = "transmute"
    structure = "tg"
    lambda_domain = (-1.0, 1.0)

    def __post_init__(self):
        if not (self.scale > 0 and -1.0 <= self.transmute <= 1.0):
            raise ValueError(f"requires scale > 0 and transmute in [-1, 1], got {self}")

    def survival(self, x):
        arr, scalar = _split(x)
        s = np.exp(-np.maximum(arr, 0.0) / self.scale)
        return _join(s * (1.0 - self.transmute * (1.0 - s)), scalar)

    def cdf(self, x):
        return 1.0 - self.survival(x)

    def pdf(self, x):
        arr, scalar = _split(x)
        s = np.exp(-np.maximum(arr, 0.0) / self.scale)
        val = s * ((1.0 - self.transmute) + 2.0 * self.transmute * s) / self.scale
        return _join(np.where(arr < 0.0, 0.0, val), scalar)

    def quantile(self, q):
        arr, scalar = _split(q)
        _check_prob(arr)
        s = _transmuted_root(1.0 - arr, self.transmute)
        return _join(-self.scale * np.log(s), scalar)


@dataclass(frozen=True)
class ScaleMargin(Margin):
    """Baseline law accelerated by a positive rate: cdf(x) = F0(rate x)."""

    baseline: BaselineLaw
    rate: float

    _LAM_FIELD = "rate"
    structure = "scale"
    lambda_domain = (0.0, math.inf)

    def __post_init__(self):
        if not self.rate > 0:
            raise ValueError(f"scale margin requires rate > 0, got {self.rate}")

    @property
    def support_lo(self) -> float:
        return self.baseline.support_lo / self.rate

    def cdf(self, x):
        arr, scalar = _split(x)
        return _join(np.asarray(self.baseline.cdf(arr * self.rate), dtype=float), scalar)

    def survival(self, x):
        arr, scalar = _split(x)
        return _join(np.asarray(self.baseline.survival(arr * self.rate), dtype=float), scalar)

    def pdf(self, x):
        arr, scalar = _split(x)
        return _join(self.rate * np.asarray(self.baseline.pdf(arr * self.rate), dtype=float), scalar)

    def quantile(self, q):
        arr, scalar = _split(q)
        _check_prob(arr)
        return _join(np.asarray(self.baseline.quantile(arr), dtype=float) / self.rate, scalar)


@dataclass(frozen=True)
class PHRMargin(Margin):
    """Proportional-hazards tilt of a baseline: survival(x) = S0(x)^power."""

    baseline: BaselineLaw
    power: float

    _LAM_FIELD = "power"
    structure = "phr"
    lambda_domain = (0.0, math.inf)

    def __post_init__(self):
        if not self.power > 0:
            raise ValueError(f"phr margin requires power > 0, got {self.power}")

    @property
    def support_lo(self) -> float:
        return self.baseline.support_lo

    def survival(self, x):
        arr, scalar = _split(x)
        s0 = np.asarray(self.baseline.survival(arr), dtype=float)
        return _join(s0**self.power, scalar)

    def cdf(self, x):
        return 1.0 - self.survival(x)

    def pdf(self, x):
        arr, scalar = _split(x)
        s0 = np.asarray(self.baseline.survival(arr), dtype=float)
        f0 = np.asarray(self.baseline.pdf(arr), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.where(s0 > 0.0, self.power * s0 ** (self.power - 1.0) * f0, 0.0)
        return _join(val, scalar)

    def quantile(self, q):
        arr, scalar = _split(q)
        _check_prob(arr)
        q0 = -np.expm1(np.log1p(-arr) / self.power)
        return _join(np.asarray(self.baseline.quantile(q0), dtype=float), scalar)


@dataclass(frozen=True)
class TGMargin(Margin):
    """Transmuted baseline: survival(x) = S0(x) (1 - transmute F0(x))."""

    baseline: BaselineLaw
    transmute: float

    _LAM_FIELD = "transmute"
    structure = "tg"
    lambda_domain = (-1.0, 1.0)

    def __post_init__(self):
        if not -1.0 <= self.transmute <= 1.0:
            raise ValueError(f"tg margin requires transmute in [-1, 1], got {self.transmute}")

    @property
    def support_lo(self) -> float:
        return self.baseline.support_lo

    def survival(self, x):
        arr, scalar = _split(x)
        s0 = np.asarray(self.baseline.survival(arr), dtype=float)
        return _join(s0 * (1.0 - self.transmute * (1.0 - s0)), scalar)

    def cdf(self, x):
        return 1.0 - self.survival(x)

    def pdf(self, x):
        arr, scalar = _split(x)
        s0 = np.asarray(self.baseline.survival(arr), dtype=float)
        f0 = np.asarray(self.baseline.pdf(arr), dtype=float)
        return _join(f0 * ((1.0 - self.transmute) + 2.0 * self.transmute * s0), scalar)

    def quantile(self, q):
        arr, scalar = _split(q)
        _check_prob(arr)
        s = _transmuted_root(1.0 - arr, self.transmute)
        return _join(np.asarray(self.baseline.quantile(1.0 - s), dtype=float), scalar)


def _family_fn(family):
    """Accept a Margin (vary its lam), a family object with .at, or a callable."""
    if isinstance(family, Margin):
        return family.with_lam
    at = getattr(family, "at", None)
    if at is not None:
        return at
    if callable(family):
        return family
    raise TypeError(f"cannot interpret {family!r} as a lambda-indexed margin family")


def _grid_desc(x_grid: np.ndarray, lam_grid: np.ndarray) -> str:
    return (
        f"x[{x_grid.min():.6g}..{x_grid.max():.6g}]x{x_grid.size}, "
        f"lam[{lam_grid.min():.6g}..{lam_grid.max():.6g}]x{lam_grid.size}"
    )


def _survival_table(family, x_grid: np.ndarray, lam_grid: np.ndarray) -> np.ndarray:
    make = _family_fn(family)
    return np.stack([np.asarray(make(lam).survival(x_grid), dtype=float) for lam in lam_grid])


def check_survival_decreasing_in_lambda(
    family, x_grid, lam_grid, tol: float = 1e-9
) -> ConditionReport:
    """Report whether survival(x; lam) is non-increasing in lam at every grid x."""
    x_grid = np.asarray(x_grid, dtype=float)
    lam_grid = np.asarray(lam_grid, dtype=float)
    if x_grid.size == 0 or lam_grid.size == 0:
        raise ValueError("grids must be non-empty")
    if np.any(np.diff(lam_grid) <= 0):
        raise ValueError("lam_grid must be strictly ascending")
    table = _survival_table(family, x_grid, lam_grid)
    rises = np.diff(table, axis=0)  # > 0 means survival grew as lam grew
    worst = float(rises.max(initial=0.0))
    k, j = np.unravel_index(int(np.argmax(rises)), rises.shape) if rises.size else (0, 0)
    witness = f"x={x_grid[j]:.6g}, lam {lam_grid[k]:.6g}->{lam_grid[k + 1]:.6g}" if rises.size else "-"
    return ConditionReport.from_violation(worst, witness, _grid_desc(x_grid, lam_grid), tol)


def check_survival_convex_in_lambda(
    family, x_grid, lam_grid, tol: float = 1e-9
) -> ConditionReport:
    """Second-difference convexity test of survival(x; lam) along an even lam grid."""
    x_grid = np.asarray(x_grid, dtype=float)
    lam_grid = np.asarray(lam_grid, dtype=float)
    if lam_grid.size < 3:
        raise ValueError("lam_grid needs at least 3 points")
    steps = np.diff(lam_grid)
    if np.any(steps <= 0) or np.max(steps) - np.min(steps) > 1e-9 * np.max(np.abs(lam_grid)):
        raise ValueError("lam_grid must be evenly spaced ascending")
    table = _survival_table(family, x_grid, lam_grid)
    sec = table[:-2] - 2.0 * table[1:-1] + table[2:]
    worst = float(np.maximum(0.0, -sec).max(initial=0.0))
    k, j = np.unravel_index(int(np.argmin(sec)), sec.shape) if sec.size else (0, 0)
    witness = f"x={x_grid[j]:.6g}, lam={lam_grid[k + 1]:.6g}" if sec.size else "-"
    return ConditionReport.from_violation(worst, witness, _grid_desc(x_grid, lam_grid), tol)


def check_density_decreasing(m: Margin, x_grid, tol: float = 1e-9) -> ConditionReport:
    """Report whether the density of ``m`` is non-increasing along a sorted grid."""
    x_grid = np.asarray(x_grid, dtype=float)
    if np.any(np.diff(x_grid) <= 0):
        raise ValueError("x_grid must be strictly ascending")
    dens = np.asarray(m.pdf(x_grid), dtype=float)
    rises = np.diff(dens)
    worst = float(rises.max(initial=0.0))
    j = int(np.argmax(rises)) if rises.size else 0
    witness = f"x {x_grid[j]:.6g}->{x_grid[j + 1]:.6g}" if rises.size else "-"
    grid = f"x[{x_grid.min():.6g}..{x_grid.max():.6g}]x{x_grid.size}"
    return ConditionReport.from_violation(worst, witness, grid, tol)
