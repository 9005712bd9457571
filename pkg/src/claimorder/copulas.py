"""Dependence structures: evaluation, partial derivatives, numeric checkers, sampling.

Families implemented: independence (any dimension), the
Farlie-Gumbel-Morgenstern copula (any dimension), Ali-Mikhail-Haq and
Gumbel-Hougaard (bivariate), and a trivariate Frank copula.  Points are
arrays whose last axis is the copula dimension; leading axes broadcast.

Checkers return :class:`ConditionReport`; violations of closed-form
quantities are judged at 1e-9, checks that go through finite differences
at 1e-6.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .reports import ConditionReport

__all__ = [
    "Copula",
    "Independence",
    "FGM",
    "AMH",
    "GumbelHougaard",
    "Frank3",
    "is_pqd",
    "check_symmetry",
    "check_partial_ordering",
    "is_schur_concave",
    "plod_less",
    "check_axioms",
    "conditional_sample",
    "conditional_sample_many",
]

CLOSED_FORM_TOL = 1e-9
FINITE_DIFF_TOL = 1e-6
AXIOM_TOL = 1e-10
_FD_STEP = 1e-6
_FD_STEP_MIXED = 1e-4
_EDGE = 1e-12


def _check_points(v, dim: int, interior: bool = False) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape[-1:] != (dim,):
        raise ValueError(f"expected points with last axis {dim}, got shape {arr.shape}")
    if interior:
        if np.any(arr <= 0.0) or np.any(arr >= 1.0):
            raise ValueError("point must lie in the open unit cube")
    elif np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError("point must lie in the closed unit cube")
    return arr


class Copula(ABC):
    """Copula of a fixed dimension."""

    dim: int
    analytic_partials: bool = True

    @abstractmethod
    def eval(self, v): ...

    def partial(self, v, i: int):
        """First partial derivative with respect to coordinate ``i`` (interior points)."""
        arr = _check_points(v, self.dim, interior=True)
        if not 0 <= i < self.dim:
            raise IndexError(f"coordinate index {i} out of range for dimension {self.dim}")
        return self._partial(arr, i)

    def _partial(self, arr: np.ndarray, i: int):
        return _fd_partial(self.eval, arr, i)


def _fd_partial(eval_fn, arr: np.ndarray, i: int, step: float = _FD_STEP) -> np.ndarray:
    """Central difference, clamped at the cube boundary (one-sided there)."""
    vi = arr[..., i]
    up = np.minimum(vi + step, 1.0)
    dn = np.maximum(vi - step, 0.0)
    vp = arr.copy()
    vp[..., i] = up
    vm = arr.copy()
    vm[..., i] = dn
    return (np.asarray(eval_fn(vp)) - np.asarray(eval_fn(vm))) / (up - dn)


def _prod_others(arr: np.ndarray, i: int) -> np.ndarray:
    return np.prod(np.delete(arr, i, axis=-1), axis=-1)


@dataclass(frozen=True)
class Independence(Copula):
    """Product copula of any dimension."""

    dim: int = 2

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dimension must be at least 2")

    def eval(self, v):
        return np.prod(_check_points(v, self.dim), axis=-1)

    def _partial(self, arr, i):
        return _prod_others(arr, i)


@dataclass(frozen=True)
class FGM(Copula):
    """Farlie-Gumbel-Morgenstern copula: prod v_i + theta prod v_i (1 - v_i)."""

    dim: int = 2
    theta: float = 0.0

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dimension must be at least 2")
        if not -1.0 <= self.theta <= 1.0:
            raise ValueError(f"theta must lie in [-1, 1], got {self.theta}")

    def eval(self, v):
        arr = _check_points(v, self.dim)
        return np.prod(arr, axis=-1) + self.theta * np.prod(arr * (1.0 - arr), axis=-1)

    def _partial(self, arr, i):
        others = _prod_others(arr, i)
        others_skew = _prod_others(arr * (1.0 - arr), i)
        return others + self.theta * (1.0 - 2.0 * arr[..., i]) * others_skew


@dataclass(frozen=True)
class AMH(Copula):
    """Bivariate Ali-Mikhail-Haq copula: v1 v2 / (1 - theta (1-v1)(1-v2))."""

    theta: float = 0.0
    dim: int = 2

    def __post_init__(self):
        if self.dim != 2:
            raise ValueError("AMH copula is bivariate")
        if not -1.0 <= self.theta <= 1.0:
            raise ValueError(f"theta must lie in [-1, 1], got {self.theta}")

    def eval(self, v):
        arr = _check_points(v, self.dim)
        v1, v2 = arr[..., 0], arr[..., 1]
        den = 1.0 - self.theta * (1.0 - v1) * (1.0 - v2)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(v1 * v2 == 0.0, 0.0, v1 * v2 / den)
        return out

    def _partial(self, arr, i):
        vi, vj = arr[..., i], arr[..., 1 - i]
        den = 1.0 - self.theta * (1.0 - vi) * (1.0 - vj)
        return vj * (1.0 - self.theta * (1.0 - vj)) / den**2


@dataclass(frozen=True)
class GumbelHougaard(Copula):
    """Bivariate Gumbel-Hougaard copula with parameter theta >= 1."""

    theta: float = 1.0
    dim: int = 2

    def __post_init__(self):
        if self.dim != 2:
            raise ValueError("Gumbel-Hougaard copula is bivariate")
        if not self.theta >= 1.0:
            raise ValueError(f"theta must be >= 1, got {self.theta}")

    def _log_radius(self, arr):
        # log[(-log v1)^theta + (-log v2)^theta], computed in log space
        with np.errstate(divide="ignore"):
            la = np.log(-np.log(arr[..., 0]))
            lb = np.log(-np.log(arr[..., 1]))
        return np.logaddexp(self.theta * la, self.theta * lb), la, lb

    def eval(self, v):
        arr = _check_points(v, self.dim)
        zero = np.any(arr == 0.0, axis=-1)
        safe = np.where(arr == 0.0, 0.5, arr)
        big, _, _ = self._log_radius(safe)
        out = np.exp(-np.exp(big / self.theta))
        return np.where(zero, 0.0, out)

    def _partial(self, arr, i):
        big, la, lb = self._log_radius(arr)
        li = la if i == 0 else lb
        s = np.exp(big / self.theta)
        log_d = -s + (self.theta - 1.0) * li + (1.0 / self.theta - 1.0) * big - np.log(arr[..., i])
        return np.exp(log_d)


@dataclass(frozen=True)
class Frank3(Copula):
    """Trivariate Frank copula with parameter theta > 0.

    Partial derivatives use central finite differences (step 1e-6, clamped
    at the cube boundary); everything else is closed-form.
    """

    theta: float
    dim: int = 3
    analytic_partials = False

    def __post_init__(self):
        if self.dim != 3:
            raise ValueError("this Frank copula is trivariate")
        if not self.theta > 0:
            raise ValueError(f"theta must be positive, got {self.theta}")

    def eval(self, v):
        arr = _check_points(v, self.dim)
        th = self.theta
        t = np.expm1(-th * arr)
        den = math.expm1(-th) ** 2
        g = t[..., 0] * t[..., 1] * t[..., 2] / den
        return -np.log1p(g) / th


def _uniform_grid(res: int, dim: int, interior: bool) -> np.ndarray:
    if res < 2:
        raise ValueError("grid resolution must be at least 2")
    axis = np.linspace(0.0, 1.0, res)
    if interior:
        axis = axis[1:-1]
    mesh = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _default_res(dim: int, res: int | None) -> int:
    if res is not None:
        return res
    return 101 if dim == 2 else 41


def _point_str(pt: np.ndarray) -> str:
    return "(" + ", ".join(f"{x:.6g}" for x in np.atleast_1d(pt)) + ")"


def is_pqd(c: Copula, grid_resolution: int = 101, tol: float = CLOSED_FORM_TOL) -> ConditionReport:
    """Check C(v1, v2) >= v1 v2 on a uniform grid (bivariate only)."""
    if c.dim != 2:
        raise ValueError("positive quadrant dependence is a bivariate check")
    pts = _uniform_grid(grid_resolution, 2, interior=False)
    gap = np.prod(pts, axis=-1) - np.asarray(c.eval(pts))
    k = int(np.argmax(gap))
    return ConditionReport.from_violation(
        float(gap[k]), _point_str(pts[k]), f"uniform {grid_resolution}^2 on [0,1]^2", tol
    )


def check_symmetry(
    c: Copula, samples: int = 256, seed: int = 0, tol: float = CLOSED_FORM_TOL
) -> ConditionReport:
    """Check invariance of C under coordinate transpositions at random points."""
    rng = np.random.default_rng(seed)
    pts = rng.random((samples, c.dim))
    base = np.asarray(c.eval(pts))
    worst, wit = 0.0, "-"
    for i in range(c.dim - 1):
        swapped = pts.copy()
        swapped[:, [i, i + 1]] = swapped[:, [i + 1, i]]
        diff = np.abs(np.asarray(c.eval(swapped)) - base)
        k = int(np.argmax(diff))
        if diff[k] > worst:
            worst, wit = float(diff[k]), f"swap({i},{i + 1}) at {_point_str(pts[k])}"
    return ConditionReport.from_violation(worst, wit, f"{samples} random points (seed {seed})", tol)


def check_partial_ordering(
    c: Copula, grid_resolution: int | None = None, tol: float | None = None
) -> ConditionReport:
    """Check d C/d v_i >= d C/d v_{i+1} on the sorted region v_1 <= ... <= v_n."""
    res = _default_res(c.dim, grid_resolution)
    if tol is None:
        tol = CLOSED_FORM_TOL if c.analytic_partials else FINITE_DIFF_TOL
    pts = _uniform_grid(res, c.dim, interior=True)
    sorted_mask = np.all(np.diff(pts, axis=-1) >= 0.0, axis=-1)
    pts = pts[sorted_mask]
    parts = [np.asarray(c.partial(pts, i)) for i in range(c.dim)]
    worst, wit = 0.0, "-"
    for i in range(c.dim - 1):
        gap = parts[i + 1] - parts[i]
        k = int(np.argmax(gap))
        if gap[k] > worst:
            worst, wit = float(gap[k]), f"coords ({i},{i + 1}) at {_point_str(pts[k])}"
    return ConditionReport.from_violation(
        worst, wit, f"sorted region of interior {res}^{c.dim} grid", tol
    )


def is_schur_concave(c: Copula, grid_resolution: int | None = None) -> ConditionReport:
    """Symmetry plus derivative ordering on the sorted region, as one report.

    The two parts carry different tolerances, so the combined
    ``worst_violation`` is normalized: each part's violation divided by its
    own tolerance, compared against 1.
    """
    sym = check_symmetry(c)
    order = check_partial_ordering(c, grid_resolution)
    ratios = (
        (sym.worst_violation / sym.tolerance, f"symmetry: {sym.witness}"),
        (order.worst_violation / order.tolerance, f"partial ordering: {order.witness}"),
    )
    worst, wit = max(ratios, key=lambda t: t[0])
    grid = f"symmetry[{sym.grid_descriptor}] + ordering[{order.grid_descriptor}]"
    return ConditionReport.from_violation(worst, wit, grid, 1.0)


def plod_less(
    c1: Copula, c2: Copula, grid_resolution: int | None = None, tol: float = CLOSED_FORM_TOL
) -> ConditionReport:
    """Check the pointwise lower-orthant ordering c1 <= c2 on a uniform grid."""
    if c1.dim != c2.dim:
        raise ValueError(f"dimension mismatch: {c1.dim} vs {c2.dim}")
    res = _default_res(c1.dim, grid_resolution)
    pts = _uniform_grid(res, c1.dim, interior=False)
    gap = np.asarray(c1.eval(pts)) - np.asarray(c2.eval(pts))
    k = int(np.argmax(gap))
    return ConditionReport.from_violation(
        float(gap[k]), _point_str(pts[k]), f"uniform {res}^{c1.dim} on the cube", tol
    )


def check_axioms(
    c: Copula, sample_count: int = 10_000, seed: int = 0, tol: float = AXIOM_TOL
) -> ConditionReport:
    """Groundedness, uniform margins and non-negative rectangle volumes.

    Rectangle corners are enumerated with inclusion-exclusion over
    ``sample_count`` random axis-aligned rectangles.
    """
    rng = np.random.default_rng(seed)
    n = c.dim
    worst, wit = 0.0, "-"

    m = min(sample_count, 512)
    for i in range(n):
        pts = rng.random((m, n))
        pts[:, i] = 0.0
        bad = np.abs(np.asarray(c.eval(pts)))
        k = int(np.argmax(bad))
        if bad[k] > worst:
            worst, wit = float(bad[k]), f"grounded, coord {i} at {_point_str(pts[k])}"
    for i in range(n):
        pts = np.ones((m, n))
        u = rng.random(m)
        pts[:, i] = u
        bad = np.abs(np.asarray(c.eval(pts)) - u)
        k = int(np.argmax(bad))
        if bad[k] > worst:
            worst, wit = float(bad[k]), f"margin, coord {i} at u={u[k]:.6g}"

    lows = rng.random((sample_count, n))
    highs = lows + rng.random((sample_count, n)) * (1.0 - lows)
    volume = np.zeros(sample_count)
    for mask in range(2**n):
        bits = np.array([(mask >> j) & 1 for j in range(n)], dtype=bool)
        corner = np.where(bits, highs, lows)
        volume += (-1.0) ** (n - int(bits.sum())) * np.asarray(c.eval(corner))
    neg = -volume
    k = int(np.argmax(neg))
    if neg[k] > worst:
        worst = float(neg[k])
        wit = f"rectangle [{_point_str(lows[k])}, {_point_str(highs[k])}]"
    grid = f"{sample_count} random rectangles + boundary probes (seed {seed})"
    return ConditionReport.from_violation(worst, wit, grid, tol)


def _bisect_unit(g, targets: np.ndarray, iters: int = 50) -> np.ndarray:
    """Invert an increasing map of [0,1] onto [0,1] at each target value."""
    lo = np.full_like(targets, _EDGE)
    hi = np.full_like(targets, 1.0 - _EDGE)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        below = g(mid) < targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def _second_mixed(eval_fn, v1, v2, t, step: float = _FD_STEP_MIXED):
    """Mixed second derivative of C(., ., t) in its first two slots."""
    up1, dn1 = np.minimum(v1 + step, 1.0), np.maximum(v1 - step, 0.0)
    up2, dn2 = np.minimum(v2 + step, 1.0), np.maximum(v2 - step, 0.0)

    def c(a, b):
        return np.asarray(eval_fn(np.stack([a, b, t], axis=-1)))

    num = c(up1, up2) - c(up1, dn2) - c(dn1, up2) + c(dn1, dn2)
    return num / ((up1 - dn1) * (up2 - dn2))


def conditional_sample_many(c: Copula, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` points from the copula by sequential conditional inversion.

    Coordinate 1 is uniform; each later coordinate inverts its conditional
    CDF given the earlier ones by bisection (tolerance ~1e-15 on the
    argument).  Dimensions 2 and 3 are supported (any dimension for the
    independence copula).
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    u = np.clip(rng.random((count, c.dim)), _EDGE, 1.0 - _EDGE)
    if isinstance(c, Independence):
        return u
    if c.dim == 2:
        v1 = u[:, 0]

        def g(t):
            return np.asarray(c.partial(np.stack([v1, t], axis=-1), 0))

        norm = g(np.full_like(v1, 1.0 - _EDGE))
        v2 = _bisect_unit(lambda t: g(t) / norm, u[:, 1])
        return np.stack([v1, v2], axis=-1)
    if c.dim == 3:
        v1 = u[:, 0]
        ones = np.ones_like(v1)

        def g2(t):
            pts = np.stack([v1, t, ones], axis=-1)
            return _fd_partial(c.eval, pts, 0)

        norm2 = g2(np.full_like(v1, 1.0 - _EDGE))
        v2 = _bisect_unit(lambda t: g2(t) / norm2, u[:, 1])

        def g3(t):
            return _second_mixed(c.eval, v1, v2, t)

        norm3 = g3(np.full_like(v1, 1.0 - _EDGE))
        v3 = _bisect_unit(lambda t: g3(t) / norm3, u[:, 2])
        return np.stack([v1, v2, v3], axis=-1)
    raise ValueError(f"conditional sampling supports dimensions 2 and 3, got {c.dim}")


def conditional_sample(c: Copula, rng: np.random.Generator) -> np.ndarray:
    """One draw from the copula; see :func:`conditional_sample_many`."""
    return conditional_sample_many(c, 1, rng)[0]
