"""Randomized scenario generation inside each result's hypothesis region.

Used by the soundness suite: scenarios are drawn so that the hypotheses of
the chosen result hold by construction, re-checked with
:func:`claimorder.theorems.check_hypotheses`, and the surviving ones must
all yield verdicts consistent with A <=_st B.  Seeds are fixed constants
so failures are reproducible.
"""

from __future__ import annotations

import numpy as np

from .claims import IndependentIndicators, JointPairIndicators, Portfolio
from .copulas import AMH, FGM, Copula, Frank3, GumbelHougaard, Independence
from .margins import (
    Gamma,
    Margin,
    Pareto,
    PHRMargin,
    ScaleMargin,
    StdExponential,
    StdUniform,
    TGMargin,
    TransmutedExponential,
    Weibull,
)
from .theorems import HFunction, IdentityH, LogShift2H, Scenario, SqrtH, TheoremId

__all__ = ["HARNESS_SEED_BASE", "harness_seed", "generate_scenario", "generate_scenarios"]

HARNESS_SEED_BASE = 20260811


def harness_seed(theorem: TheoremId) -> int:
    return HARNESS_SEED_BASE + 97 * list(TheoremId).index(TheoremId(theorem))


def _gamma_dec(rng):
    return Gamma(rng.uniform(0.5, 1.0), 1.0), (0.3, 3.0)


def _gamma_any(rng):
    return Gamma(rng.uniform(0.5, 2.5), 1.0), (0.3, 3.0)


def _pareto(rng):
    return Pareto(1.0, 2.0), (1.5, 6.0)


def _weibull_dec(rng):
    return Weibull(rng.uniform(0.6, 1.0), 1.0), (0.3, 3.0)


def _weibull_any(rng):
    return Weibull(rng.uniform(0.6, 3.0), 1.0), (0.3, 3.0)


def _te(rng):
    return TransmutedExponential(rng.uniform(0.5, 3.0), 0.0), (-0.9, 0.9)


def _phr_exp(rng):
    return PHRMargin(StdExponential(), 1.0), (0.5, 4.0)


def _scale_exp(rng):
    return ScaleMargin(StdExponential(), 1.0), (0.3, 3.0)


def _tg_exp(rng):
    return TGMargin(StdExponential(), 0.0), (-0.9, 0.9)


def _tg_unif(rng):
    return TGMargin(StdUniform(), 0.0), (-0.9, 0.9)


# families whose survival is decreasing in lam / also convex in lam / by structure
_POOLS = {
    "dec": (_gamma_any, _pareto, _weibull_any, _te, _phr_exp, _scale_exp),
    "convex": (_phr_exp, _pareto, _te, _tg_exp, _tg_unif, _gamma_dec, _weibull_dec, _scale_exp),
    "scale_dec": (_gamma_dec, _weibull_dec, _scale_exp),
    "scale_any": (_gamma_any, _weibull_any, _scale_exp),
    "phr": (_phr_exp, _pareto),
    "tg": (_te, _tg_exp, _tg_unif),
}


def _family(rng, pool: str) -> tuple[Margin, tuple[float, float]]:
    makers = _POOLS[pool]
    return makers[rng.integers(len(makers))](rng)


def _h(rng) -> HFunction:
    return (IdentityH(), SqrtH(), LogShift2H())[rng.integers(3)]


def _pqd_copula(rng) -> Copula:
    k = rng.integers(3)
    if k == 0:
        return FGM(2, rng.uniform(0.0, 1.0))
    if k == 1:
        return AMH(rng.uniform(0.0, 1.0))
    return GumbelHougaard(rng.uniform(1.0, 5.0))


def _schur_copula(rng) -> Copula:
    k = rng.integers(3)
    if k == 0:
        return FGM(2, rng.uniform(-1.0, 1.0))
    if k == 1:
        return AMH(rng.uniform(-1.0, 1.0))
    return GumbelHougaard(rng.uniform(1.0, 5.0))


def _any_copula(rng, n: int) -> Copula:
    if n == 2:
        k = rng.integers(4)
        return (
            Independence(2)
            if k == 0
            else FGM(2, rng.uniform(-1.0, 1.0))
            if k == 1
            else AMH(rng.uniform(-1.0, 1.0))
            if k == 2
            else GumbelHougaard(rng.uniform(1.0, 5.0))
        )
    k = rng.integers(3)
    if k == 0:
        return Independence(3)
    if k == 1:
        return FGM(3, rng.uniform(-1.0, 1.0))
    return Frank3(rng.uniform(0.2, 3.0))


def _ordered_copulas(rng, n: int) -> tuple[Copula, Copula]:
    """A pointwise-ordered pair (smaller, larger) from one family."""
    if n == 2:
        k = rng.integers(4)
        if k == 0:
            lo, hi = np.sort(rng.uniform(-1.0, 1.0, 2))
            return FGM(2, lo), FGM(2, hi)
        if k == 1:
            lo, hi = np.sort(rng.uniform(-1.0, 1.0, 2))
            return AMH(lo), AMH(hi)
        if k == 2:
            lo, hi = np.sort(rng.uniform(1.0, 5.0, 2))
            return GumbelHougaard(lo), GumbelHougaard(hi)
        return Independence(2), FGM(2, rng.uniform(0.0, 1.0))
    k = rng.integers(3)
    if k == 0:
        lo, hi = np.sort(rng.uniform(-1.0, 1.0, 2))
        return FGM(3, lo), FGM(3, hi)
    if k == 1:
        lo, hi = np.sort(rng.uniform(0.2, 3.0, 2))
        return Frank3(lo), Frank3(hi)
    return Independence(3), FGM(3, rng.uniform(0.0, 1.0))


def _p_pair_descending(rng) -> np.ndarray:
    return np.sort(rng.uniform(0.02, 0.45, 2))[::-1]


def _margins(rep: Margin, lams) -> tuple[Margin, ...]:
    return tuple(rep.with_lam(float(v)) for v in np.atleast_1d(lams))


def _pinch(rng, u: np.ndarray) -> np.ndarray:
    """One mean-preserving transfer toward the middle; keeps descending order."""
    t = rng.uniform(0.0, 0.5 * (u[0] - u[1]))
    return np.array([u[0] - t, u[1] + t])


def _raise_sorted(rng, lam: np.ndarray, hi: float, scale: float) -> np.ndarray:
    bumped = np.minimum(lam + rng.uniform(0.0, scale, lam.size), hi)
    return np.sort(bumped)


def _scenario_p_side(rng, pool: str, copula_fn) -> Scenario:
    rep, (llo, lhi) = _family(rng, pool)
    lam = np.sort(rng.uniform(llo, lhi, 2))
    h = _h(rng)
    p = _p_pair_descending(rng)
    u = np.asarray(h.eval(p))
    p_star = np.asarray(h.inverse(_pinch(rng, u)))
    margins = _margins(rep, lam)
    cop = copula_fn(rng)
    a = Portfolio(margins, cop, IndependentIndicators(tuple(p_star)))
    b = Portfolio(margins, cop, IndependentIndicators(tuple(p)))
    return Scenario(a, b, h=h)


def _scenario_lambda_side(rng, pool: str) -> Scenario:
    rep, (llo, lhi) = _family(rng, pool)
    lam = np.sort(rng.uniform(llo, lhi, 2))
    lam_star = _raise_sorted(rng, lam, lhi, 0.3 * (lhi - llo))
    h = _h(rng)
    p = _p_pair_descending(rng)
    cop = _schur_copula(rng)
    ind = IndependentIndicators(tuple(p))
    a = Portfolio(_margins(rep, lam_star), cop, ind)
    b = Portfolio(_margins(rep, lam), cop, ind)
    return Scenario(a, b, h=h)


def _scenario_both_sides(rng, pool: str) -> Scenario:
    rep, (llo, lhi) = _family(rng, pool)
    lam = np.sort(rng.uniform(llo, lhi, 2))
    lam_star = _raise_sorted(rng, lam, lhi, 0.3 * (lhi - llo))
    h = _h(rng)
    p = _p_pair_descending(rng)
    u = np.asarray(h.eval(p))
    p_star = np.asarray(h.inverse(_pinch(rng, u)))
    cop = _pqd_copula(rng)
    a = Portfolio(_margins(rep, lam_star), cop, IndependentIndicators(tuple(p_star)))
    b = Portfolio(_margins(rep, lam), cop, IndependentIndicators(tuple(p)))
    return Scenario(a, b, h=h)


def _scenario_joint(rng, pool: str) -> Scenario:
    rep, (llo, lhi) = _family(rng, pool)
    lam = np.sort(rng.uniform(llo, lhi, 2))[::-1]  # descending
    lam_star = _pinch(rng, lam)
    g = rng.uniform(0.05, 1.0, 4)
    g = g / g.sum()
    p01, p10 = max(g[1], g[2]), min(g[1], g[2])
    ind = JointPairIndicators(g[0], p01, p10, g[3])
    cop = _schur_copula(rng)
    a = Portfolio(_margins(rep, lam_star), cop, ind)
    b = Portfolio(_margins(rep, lam), cop, ind)
    return Scenario(a, b)


def _scenario_componentwise(rng, pool: str, ordered_copulas: bool, shift: bool) -> Scenario:
    n = 2 + int(rng.integers(2))
    rep, (llo, lhi) = _family(rng, pool)
    span = lhi - llo
    lam = rng.uniform(llo, lhi - 0.3 * span, n)
    lam_star = lam + rng.uniform(0.0, 0.3 * span, n) if shift else lam.copy()
    cop_b, cop_a = _ordered_copulas(rng, n) if ordered_copulas else (None, None)
    if cop_b is None:
        cop_b = cop_a = _any_copula(rng, n)
    ind = IndependentIndicators(tuple(rng.uniform(0.02, 0.45, n)))
    a = Portfolio(_margins(rep, lam_star), cop_a, ind)
    b = Portfolio(_margins(rep, lam), cop_b, ind)
    return Scenario(a, b)


_BUILDERS = {
    TheoremId.T1: lambda rng: _scenario_p_side(rng, "dec", _pqd_copula),
    TheoremId.T2: lambda rng: _scenario_lambda_side(rng, "convex"),
    TheoremId.T3: lambda rng: _scenario_both_sides(rng, "convex"),
    TheoremId.T5: lambda rng: _scenario_both_sides(rng, "scale_dec"),
    TheoremId.T6: lambda rng: _scenario_both_sides(rng, "phr"),
    TheoremId.T7: lambda rng: _scenario_both_sides(rng, "tg"),
    TheoremId.T8: lambda rng: _scenario_joint(rng, "convex"),
    TheoremId.T9: lambda rng: _scenario_joint(rng, "scale_dec"),
    TheoremId.T10: lambda rng: _scenario_joint(rng, "phr"),
    TheoremId.T11: lambda rng: _scenario_joint(rng, "tg"),
    TheoremId.T12: lambda rng: _scenario_componentwise(rng, "dec", False, True),
    TheoremId.T13: lambda rng: _scenario_componentwise(rng, "dec", True, False),
    TheoremId.T14: lambda rng: _scenario_componentwise(rng, "dec", True, True),
    TheoremId.T15: lambda rng: _scenario_componentwise(rng, "scale_any", True, True),
    TheoremId.T16: lambda rng: _scenario_componentwise(rng, "phr", True, True),
    TheoremId.T17: lambda rng: _scenario_componentwise(rng, "tg", True, True),
}


def generate_scenario(theorem: TheoremId, rng: np.random.Generator) -> Scenario:
    """One scenario drawn inside the hypothesis region of the given result."""
    return _BUILDERS[TheoremId(theorem)](rng)


def generate_scenarios(theorem: TheoremId, count: int, seed: int | None = None) -> list[Scenario]:
    """Reproducible scenarios for one result; seed defaults to the recorded constant."""
    rng = np.random.default_rng(harness_seed(theorem) if seed is None else seed)
    return [generate_scenario(theorem, rng) for _ in range(count)]
