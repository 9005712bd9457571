"""Largest claim amount of a dependent portfolio: exact laws, sampling, verdicts.

A portfolio couples severity margins through a copula and switches each
claim on or off with an occurrence indicator (independent per-policy
probabilities, or a joint pmf for a pair).  The distribution of the
largest claim is available in three exact forms plus a Monte Carlo
sampler, and two portfolios can be compared in the usual stochastic order
on a grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .copulas import Copula, conditional_sample, conditional_sample_many
from .margins import Margin, _invert_cdf, _join, _split

__all__ = [
    "IndependentIndicators",
    "JointPairIndicators",
    "LwsaiReport",
    "lwsai_check",
    "Portfolio",
    "cdf_max",
    "cdf_max_pair_closed",
    "cdf_max_joint_pair",
    "cdf_max_auto",
    "survival_max",
    "sample_max",
    "sample_max_many",
    "Relation",
    "OrderVerdict",
    "st_compare",
    "default_grid",
]

DOMINANCE_TOL = 1e-12
CROSSING_TOL = 1e-10
_MAX_ENUM_DIM = 20
PMF_TOL = 1e-12


@dataclass(frozen=True)
class IndependentIndicators:
    """Independent Bernoulli occurrence indicators with means ``p``."""

    p: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(float(v) for v in self.p))
        if len(self.p) == 0:
            raise ValueError("need at least one indicator probability")
        if any(not 0.0 <= v <= 1.0 for v in self.p):
            raise ValueError(f"indicator probabilities must lie in [0, 1], got {self.p}")

    @property
    def n(self) -> int:
        return len(self.p)


@dataclass(frozen=True)
class JointPairIndicators:
    """Joint pmf of a pair of occurrence indicators on {0,1}^2."""

    p00: float
    p01: float
    p10: float
    p11: float

    def __post_init__(self):
        vals = (self.p00, self.p01, self.p10, self.p11)
        if any(v < 0.0 for v in vals):
            raise ValueError(f"pmf entries must be non-negative, got {vals}")
        if abs(sum(vals) - 1.0) > PMF_TOL:
            raise ValueError(f"pmf must sum to 1 within {PMF_TOL}, got {sum(vals)!r}")

    @property
    def n(self) -> int:
        return 2

    def pmf(self) -> dict[tuple[int, int], float]:
        return {(0, 0): self.p00, (0, 1): self.p01, (1, 0): self.p10, (1, 1): self.p11}


@dataclass(frozen=True)
class LwsaiReport:
    """Arrangement-increasing check for a joint indicator pair."""

    passed: bool
    p10: float
    p01: float


def lwsai_check(ind: JointPairIndicators) -> LwsaiReport:
    """The pair is arrangement-increasing in the left tail iff p(1,0) <= p(0,1)."""
    return LwsaiReport(ind.p10 <= ind.p01 + PMF_TOL, ind.p10, ind.p01)


@dataclass(frozen=True)
class Portfolio:
    """Severity margins coupled by a copula, with occurrence indicators."""

    margins: tuple[Margin, ...]
    copula: Copula
    indicators: IndependentIndicators | JointPairIndicators

    def __post_init__(self):
        object.__setattr__(self, "margins", tuple(self.margins))
        n = len(self.margins)
        if n == 0:
            raise ValueError("portfolio needs at least one margin")
        if self.copula.dim != n:
            raise ValueError(f"copula dimension {self.copula.dim} != number of margins {n}")
        if self.indicators.n != n:
            raise ValueError(f"indicator count {self.indicators.n} != number of margins {n}")
        if isinstance(self.indicators, JointPairIndicators) and n != 2:
            raise ValueError("joint indicator pmf is only defined for two policies")

    @property
    def n(self) -> int:
        return len(self.margins)


def _pattern_weights(pf: Portfolio) -> list[tuple[tuple[int, ...], float]]:
    ind = pf.indicators
    if isinstance(ind, JointPairIndicators):
        return [(mu, w) for mu, w in ind.pmf().items()]
    out = []
    for mu in itertools.product((0, 1), repeat=pf.n):
        w = 1.0
        for bit, p in zip(mu, ind.p):
            w *= p if bit else 1.0 - p
        out.append((mu, w))
    return out


def cdf_max(pf: Portfolio, x):
    """CDF of the largest claim via the full {0,1}^n indicator mixture.

    Each indicator pattern contributes its probability times the copula
    evaluated at the margins' CDFs, with switched-off coordinates replaced
    by 1.  Supported up to 20 policies.
    """
    if pf.n > _MAX_ENUM_DIM:
        raise ValueError(f"mixture enumeration capped at {_MAX_ENUM_DIM} policies")
    arr, scalar = _split(x)
    flat = np.atleast_1d(arr).ravel()
    fs = np.stack([np.asarray(m.cdf(flat), dtype=float) for m in pf.margins], axis=-1)
    out = np.zeros(flat.shape)
    for mu, w in _pattern_weights(pf):
        if w == 0.0:
            continue
        z = np.where(np.asarray(mu, dtype=bool), fs, 1.0)
        out += w * np.asarray(pf.copula.eval(z))
    out = np.where(flat < 0.0, 0.0, out)
    return _join(out.reshape(arr.shape), scalar)


def cdf_max_pair_closed(pf: Portfolio, x):
    """Closed bivariate form for independent indicators:

    prod_i (1 - p_i S_i(x)) + p1 p2 [C(F1, F2) - F1 F2].
    """
    if pf.n != 2 or not isinstance(pf.indicators, IndependentIndicators):
        raise ValueError("closed pair form needs two margins and independent indicators")
    p1, p2 = pf.indicators.p
    arr, scalar = _split(x)
    flat = np.atleast_1d(arr).ravel()
    f1 = np.asarray(pf.margins[0].cdf(flat), dtype=float)
    f2 = np.asarray(pf.margins[1].cdf(flat), dtype=float)
    cval = np.asarray(pf.copula.eval(np.stack([f1, f2], axis=-1)))
    out = (1.0 - p1 * (1.0 - f1)) * (1.0 - p2 * (1.0 - f2)) + p1 * p2 * (cval - f1 * f2)
    out = np.where(flat < 0.0, 0.0, out)
    return _join(out.reshape(arr.shape), scalar)


def cdf_max_joint_pair(pf: Portfolio, x):
    """Bivariate form for a joint indicator pmf:

    p00 + p11 C(F1, F2) + p01 F2 + p10 F1.
    """
    if pf.n != 2 or not isinstance(pf.indicators, JointPairIndicators):
        raise ValueError("joint pair form needs two margins and a joint indicator pmf")
    ind = pf.indicators
    arr, scalar = _split(x)
    flat = np.atleast_1d(arr).ravel()
    f1 = np.asarray(pf.margins[0].cdf(flat), dtype=float)
    f2 = np.asarray(pf.margins[1].cdf(flat), dtype=float)
    cval = np.asarray(pf.copula.eval(np.stack([f1, f2], axis=-1)))
    out = ind.p00 + ind.p11 * cval + ind.p01 * f2 + ind.p10 * f1
    out = np.where(flat < 0.0, 0.0, out)
    return _join(out.reshape(arr.shape), scalar)


def cdf_max_auto(pf: Portfolio, x):
    """Pick the exact formula that fits the portfolio's indicator model."""
    if isinstance(pf.indicators, JointPairIndicators):
        return cdf_max_joint_pair(pf, x)
    if pf.n == 2:
        return cdf_max_pair_closed(pf, x)
    return cdf_max(pf, x)


def survival_max(pf: Portfolio, x):
    """Survival function of the largest claim."""
    return 1.0 - cdf_max_auto(pf, x)


def _draw_patterns(pf: Portfolio, count: int, rng: np.random.Generator) -> np.ndarray:
    ind = pf.indicators
    if isinstance(ind, IndependentIndicators):
        return rng.random((count, pf.n)) < np.asarray(ind.p)
    cum = np.cumsum([ind.p00, ind.p01, ind.p10, ind.p11])
    pat = np.searchsorted(cum, rng.random(count), side="right")
    pat = np.minimum(pat, 3)
    return np.stack([pat >= 2, (pat % 2) == 1], axis=-1)


def sample_max_many(pf: Portfolio, count: int, rng: np.random.Generator) -> np.ndarray:
    """Vectorized draws of the largest claim.

    Indicators are drawn first; copula vectors and severity quantiles are
    only materialized for draws with at least one occurring claim, so the
    stream consumption differs from :func:`sample_max` (both are
    deterministic for a fixed generator state).
    """
    occurs = _draw_patterns(pf, count, rng)
    y = np.zeros(count)
    rows = np.flatnonzero(occurs.any(axis=1))
    if rows.size:
        v = conditional_sample_many(pf.copula, rows.size, rng)
        for i, margin in enumerate(pf.margins):
            need = occurs[rows, i]
            if need.any():
                sev = np.asarray(margin.quantile(v[need, i]), dtype=float)
                target = rows[need]
                y[target] = np.maximum(y[target], sev)
    return y


def sample_max(pf: Portfolio, rng: np.random.Generator) -> float:
    """One draw of the largest claim: copula vector, severities, then indicators."""
    v = conditional_sample(pf.copula, rng)
    sev = np.array([m.quantile(v[i]) for i, m in enumerate(pf.margins)])
    occurs = _draw_patterns(pf, 1, rng)[0]
    return float(np.max(np.where(occurs, sev, 0.0)))


class Relation(Enum):
    A_DOMINATES = "A_st_dominates_B"
    B_DOMINATES = "B_st_dominates_A"
    CROSSING = "crossing"
    INDISTINGUISHABLE = "indistinguishable"


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of comparing two largest-claim survival curves on a grid.

    ``max_gap_a_over_b`` is the largest amount by which A's survival
    exceeds B's anywhere on the grid (and symmetrically); a crossing is
    declared only when both direction gaps exceed the crossing tolerance,
    with the location estimated as the midpoint of the first sign-flip
    interval.
    """

    relation: Relation
    max_gap_a_over_b: float
    max_gap_b_over_a: float
    crossing_location: float | None
    grid_descriptor: str

    def __post_init__(self):
        if (self.relation is Relation.CROSSING) != (self.crossing_location is not None):
            raise ValueError("crossing_location must accompany exactly the crossing relation")


def _crossing_location(grid: np.ndarray, diff: np.ndarray, tol: float) -> float:
    signs = np.zeros_like(diff)
    signs[diff > tol] = 1.0
    signs[diff < -tol] = -1.0
    idx = np.flatnonzero(signs)
    for a, b in zip(idx[:-1], idx[1:]):
        if signs[a] * signs[b] < 0:
            return 0.5 * (grid[a] + grid[b])
    raise AssertionError("no sign flip found despite two-sided violations")


def st_compare(
    a: Portfolio,
    b: Portfolio,
    grid,
    dominance_tol: float = DOMINANCE_TOL,
    crossing_tol: float = CROSSING_TOL,
) -> OrderVerdict:
    """Compare the largest-claim laws of two portfolios on a grid of points.

    Reports which portfolio stochastically dominates (survival everywhere
    at least the other's), a crossing, or indistinguishability when the
    curves agree within ``dominance_tol`` everywhere.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0 or np.any(np.diff(grid) < 0):
        raise ValueError("grid must be non-empty and sorted ascending")
    sa = np.asarray(survival_max(a, grid), dtype=float)
    sb = np.asarray(survival_max(b, grid), dtype=float)
    diff = sa - sb
    gap_ab = float(np.max(diff, initial=0.0))
    gap_ba = float(np.max(-diff, initial=0.0))
    desc = f"[{grid[0]:.6g}..{grid[-1]:.6g}] n={grid.size}"

    relation, where = Relation.INDISTINGUISHABLE, None
    if gap_ab > crossing_tol and gap_ba > crossing_tol:
        relation = Relation.CROSSING
        where = _crossing_location(grid, diff, crossing_tol)
    elif gap_ab <= dominance_tol and gap_ba <= dominance_tol:
        relation = Relation.INDISTINGUISHABLE
    elif gap_ab <= dominance_tol:
        relation = Relation.B_DOMINATES
    elif gap_ba <= dominance_tol:
        relation = Relation.A_DOMINATES
    elif gap_ab <= crossing_tol < gap_ba:
        relation = Relation.B_DOMINATES
    elif gap_ba <= crossing_tol < gap_ab:
        relation = Relation.A_DOMINATES
    return OrderVerdict(relation, gap_ab, gap_ba, where, desc)


def default_grid(
    portfolios,
    points: int = 2001,
    qlo: float = 1e-4,
    qhi: float = 0.9999,
) -> np.ndarray:
    """Geometric grid between quantiles of the pooled-margin mixture.

    The mixture weighs every margin of every portfolio equally; its
    quantiles bracket the region where all the laws live, including tails.
    """
    margins = [m for pf in portfolios for m in pf.margins]
    if not margins:
        raise ValueError("no margins to build a grid from")
    if points < 1:
        raise ValueError("points must be positive")
    if not 0.0 < qlo < qhi < 1.0:
        raise ValueError("need 0 < qlo < qhi < 1")

    def mix_cdf(x):
        return sum(np.asarray(m.cdf(x), dtype=float) for m in margins) / len(margins)

    ends = _invert_cdf(mix_cdf, np.array([qlo, qhi]), lo=0.0, hi0=1.0)
    lo, hi = float(ends[0]), float(ends[1])
    if lo <= 0.0:
        lo = hi * 1e-12
    return np.geomspace(lo, hi, points)
