"""Ordering results as executable checklists.

Each supported result takes a pair of portfolios (A is the starred one,
conjectured stochastically smaller), numerically verifies every stated
hypothesis, and then confirms or refutes the conclusion A <=_st B with the
grid comparison from :mod:`claimorder.claims`.

The bivariate results are T1-T11, the general-dimension ones T12-T17;
there is deliberately no T4 in the identifier set.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import majorize
from .claims import (
    IndependentIndicators,
    JointPairIndicators,
    OrderVerdict,
    Portfolio,
    Relation,
    default_grid,
    lwsai_check,
    st_compare,
)
from .copulas import check_partial_ordering, check_symmetry, is_pqd, plod_less
from .margins import (
    Margin,
    check_density_decreasing,
    check_survival_convex_in_lambda,
    check_survival_decreasing_in_lambda,
    same_family,
)
from .reports import ConditionReport

__all__ = [
    "HFunction",
    "IdentityH",
    "SqrtH",
    "LogShift2H",
    "TabulatedMonotoneH",
    "check_h_increasing",
    "check_h_conditions",
    "TheoremId",
    "GridSpec",
    "Scenario",
    "HypothesisReport",
    "TheoremVerdict",
    "check_hypotheses",
    "verify_theorem",
    "format_verdict",
]

_H_GRID_POINTS = 201
_X_GRID_POINTS = 33
_LAM_GRID_POINTS = 21
_EXACT_DESC = "exact comparison"


class HFunction(ABC):
    """Strictly increasing reparameterization of claim probabilities on (0, 1]."""

    @abstractmethod
    def eval(self, p): ...

    @abstractmethod
    def inverse(self, u): ...

    def _check_domain(self, p):
        arr = np.asarray(p, dtype=float)
        if np.any(arr <= 0.0) or np.any(arr > 1.0):
            raise ValueError("argument must lie in (0, 1]")
        return arr


@dataclass(frozen=True)
class IdentityH(HFunction):
    def eval(self, p):
        return self._check_domain(p) + 0.0

    def inverse(self, u):
        arr = np.asarray(u, dtype=float)
        if np.any(arr <= 0.0) or np.any(arr > 1.0):
            raise ValueError("value outside the function's range (0, 1]")
        return arr + 0.0


@dataclass(frozen=True)
class SqrtH(HFunction):
    def eval(self, p):
        return np.sqrt(self._check_domain(p))

    def inverse(self, u):
        arr = np.asarray(u, dtype=float)
        if np.any(arr <= 0.0) or np.any(arr > 1.0 + 1e-12):
            raise ValueError("value outside the function's range (0, 1]")
        return np.minimum(arr, 1.0) ** 2


@dataclass(frozen=True)
class LogShift2H(HFunction):
    """h(p) = log(p + 2), increasing and concave with range (log 2, log 3]."""

    def eval(self, p):
        return np.log(self._check_domain(p) + 2.0)

    def inverse(self, u):
        arr = np.asarray(u, dtype=float)
        if np.any(arr <= math.log(2.0)) or np.any(arr > math.log(3.0) + 1e-12):
            raise ValueError("value outside the function's range (log 2, log 3]")
        return np.minimum(np.exp(arr) - 2.0, 1.0)


@dataclass(frozen=True)
class TabulatedMonotoneH(HFunction):
    """Monotone table of (p, h(p)) knots, interpolated linearly."""

    knots: tuple[tuple[float, float], ...]

    def __post_init__(self):
        ps = np.array([k[0] for k in self.knots])
        vs = np.array([k[1] for k in self.knots])
        if len(self.knots) < 2:
            raise ValueError("need at least two knots")
        if np.any(ps <= 0.0) or np.any(ps > 1.0):
            raise ValueError("knot abscissae must lie in (0, 1]")
        if np.any(np.diff(ps) <= 0.0) or np.any(np.diff(vs) <= 0.0):
            raise ValueError("knots must be strictly increasing in both coordinates")

    def _table(self):
        ps = np.array([k[0] for k in self.knots])
        vs = np.array([k[1] for k in self.knots])
        return ps, vs

    def eval(self, p):
        arr = self._check_domain(p)
        ps, vs = self._table()
        if np.any(arr < ps[0] - 1e-12) or np.any(arr > ps[-1] + 1e-12):
            raise ValueError("argument outside the tabulated range")
        return np.interp(arr, ps, vs)

    def inverse(self, u):
        arr = np.asarray(u, dtype=float)
        ps, vs = self._table()
        if np.any(arr < vs[0] - 1e-12) or np.any(arr > vs[-1] + 1e-12):
            raise ValueError("value outside the tabulated range")
        return np.interp(arr, vs, ps)


def _default_h_grid() -> np.ndarray:
    return np.linspace(1e-3, 1.0, _H_GRID_POINTS)


def check_h_increasing(h: HFunction, grid=None, tol: float = 1e-9) -> ConditionReport:
    """Strict increase of h along a grid in (0, 1]."""
    grid = _default_h_grid() if grid is None else np.asarray(grid, dtype=float)
    vals = np.asarray(h.eval(grid), dtype=float)
    drops = -np.diff(vals)
    worst = float(drops.max(initial=0.0))
    j = int(np.argmax(drops)) if drops.size else 0
    return ConditionReport.from_violation(
        worst, f"p {grid[j]:.6g}->{grid[j + 1]:.6g}", f"grid (0,1] x{grid.size}", tol
    )


def check_h_conditions(h: HFunction, grid=None, tol: float = 1e-9) -> ConditionReport:
    """Full profile: positive, strictly increasing, concave, log-concave inverse.

    Concavity and log-concavity are judged by exact second differences on
    evenly spaced grids, which are sign-exact for smooth functions.
    """
    grid = _default_h_grid() if grid is None else np.asarray(grid, dtype=float)
    vals = np.asarray(h.eval(grid), dtype=float)
    worst, wit = 0.0, "-"

    neg = float(-vals.min())
    if neg > worst:
        worst, wit = neg, f"positivity at p={grid[int(np.argmin(vals))]:.6g}"
    drops = -np.diff(vals)
    if drops.size and float(drops.max()) > worst:
        j = int(np.argmax(drops))
        worst, wit = float(drops.max()), f"increase at p={grid[j]:.6g}"
    sec = vals[:-2] - 2.0 * vals[1:-1] + vals[2:]
    if sec.size and float(sec.max()) > worst:
        j = int(np.argmax(sec))
        worst, wit = float(sec.max()), f"concavity at p={grid[j + 1]:.6g}"

    u_grid = np.linspace(vals[0], vals[-1], grid.size)
    log_inv = np.log(np.asarray(h.inverse(u_grid), dtype=float))
    sec_inv = log_inv[:-2] - 2.0 * log_inv[1:-1] + log_inv[2:]
    if sec_inv.size and float(sec_inv.max()) > worst:
        j = int(np.argmax(sec_inv))
        worst, wit = float(sec_inv.max()), f"log-concave inverse at u={u_grid[j + 1]:.6g}"
    return ConditionReport.from_violation(worst, wit, f"grid (0,1] x{grid.size}", tol)


class TheoremId(Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T5 = "T5"
    T6 = "T6"
    T7 = "T7"
    T8 = "T8"
    T9 = "T9"
    T10 = "T10"
    T11 = "T11"
    T12 = "T12"
    T13 = "T13"
    T14 = "T14"
    T15 = "T15"
    T16 = "T16"
    T17 = "T17"


@dataclass(frozen=True)
class GridSpec:
    """Grid controls for the conclusion comparison."""

    points: int = 2001
    qlo: float = 1e-4
    qhi: float = 0.9999


@dataclass(frozen=True)
class Scenario:
    """Two portfolios to compare; portfolio A is the starred (conjectured smaller) one.

    ``majorization_tol`` is the absolute slack used in all parameter-vector
    comparisons; raise it when the inputs are quoted to few decimals.
    """

    portfolio_a: Portfolio
    portfolio_b: Portfolio
    h: HFunction | None = None
    majorization_tol: float = majorize.DEFAULT_TOL
    grid: GridSpec = field(default_factory=GridSpec)

    def build_grid(self) -> np.ndarray:
        return default_grid(
            [self.portfolio_a, self.portfolio_b],
            points=self.grid.points,
            qlo=self.grid.qlo,
            qhi=self.grid.qhi,
        )


@dataclass(frozen=True)
class HypothesisReport:
    theorem: TheoremId
    conditions: tuple[tuple[str, ConditionReport], ...]

    @property
    def all_passed(self) -> bool:
        return all(rep.passed for _, rep in self.conditions)

    def failures(self) -> list[str]:
        return [name for name, rep in self.conditions if not rep.passed]


@dataclass(frozen=True)
class TheoremVerdict:
    hypotheses: HypothesisReport
    verdict: OrderVerdict
    conclusion_confirmed: bool


def _bool_report(ok: bool, witness: str) -> ConditionReport:
    return ConditionReport(ok, 0.0 if ok else 1.0, witness, _EXACT_DESC, 0.0)


def _vec_str(v) -> str:
    return "(" + ", ".join(f"{x:.6g}" for x in np.atleast_1d(np.asarray(v, float))) + ")"


def _maj_report(x, y, tol: float, what: str) -> ConditionReport:
    xs = np.cumsum(np.sort(np.asarray(x, float)))
    ys = np.cumsum(np.sort(np.asarray(y, float)))
    worst = max(float(np.max(ys - xs)), abs(float(xs[-1] - ys[-1])))
    wit = f"{what}: {_vec_str(x)} vs {_vec_str(y)}"
    return ConditionReport.from_violation(worst, wit, _EXACT_DESC, tol)


def _supermaj_report(x, y, tol: float, what: str) -> ConditionReport:
    xs = np.cumsum(np.sort(np.asarray(x, float)))
    ys = np.cumsum(np.sort(np.asarray(y, float)))
    worst = float(np.max(ys - xs))
    wit = f"{what}: {_vec_str(x)} vs {_vec_str(y)}"
    return ConditionReport.from_violation(worst, wit, _EXACT_DESC, tol)


def _opposite_order_report(a, b, tol: float, what: str) -> ConditionReport:
    aa, ba = np.asarray(a, float), np.asarray(b, float)
    prod = (aa[:, None] - aa[None, :]) * (ba[:, None] - ba[None, :])
    worst = float(prod.max())
    wit = f"{what}: {_vec_str(a)} against {_vec_str(b)}"
    return ConditionReport.from_violation(worst, wit, _EXACT_DESC, tol)


def _componentwise_le_report(x, y, tol: float, what: str) -> ConditionReport:
    gap = float(np.max(np.asarray(x, float) - np.asarray(y, float)))
    wit = f"{what}: {_vec_str(x)} <= {_vec_str(y)}"
    return ConditionReport.from_violation(gap, wit, _EXACT_DESC, tol)


def _descending_report(v, tol: float, what: str) -> ConditionReport:
    arr = np.asarray(v, float)
    worst = float(np.diff(arr).max(initial=0.0))
    return ConditionReport.from_violation(worst, f"{what}: {_vec_str(v)}", _EXACT_DESC, tol)


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def _lams(pf: Portfolio) -> np.ndarray:
    return np.array([m.lam for m in pf.margins])


def _ps(pf: Portfolio) -> np.ndarray:
    ind = pf.indicators
    _require(isinstance(ind, IndependentIndicators), "independent indicators required")
    return np.array(ind.p)


def _shared_family(scenario: Scenario) -> Margin:
    ms = list(scenario.portfolio_a.margins) + list(scenario.portfolio_b.margins)
    rep = ms[0]
    _require(
        all(same_family(rep, m) for m in ms),
        "all margins must come from one family varying only its lam parameter",
    )
    return rep


def _margin_x_grid(scenario: Scenario) -> np.ndarray:
    return default_grid(
        [scenario.portfolio_a, scenario.portfolio_b], points=_X_GRID_POINTS, qlo=1e-3, qhi=0.999
    )


def _lam_grid(rep: Margin, lam_values: np.ndarray) -> np.ndarray:
    lo, hi = float(np.min(lam_values)), float(np.max(lam_values))
    span = hi - lo if hi > lo else max(abs(hi), 1.0) * 0.5
    lo -= 0.25 * span
    hi += 0.25 * span
    dom_lo, dom_hi = rep.lambda_domain
    if dom_lo == 0.0:
        lo = max(lo, 0.5 * float(np.min(lam_values)))
    else:
        lo = max(lo, dom_lo)
    hi = min(hi, dom_hi)
    return np.linspace(lo, hi, _LAM_GRID_POINTS)


def _survival_lambda_conditions(
    scenario: Scenario, conds: list, convex: bool
) -> Margin:
    rep = _shared_family(scenario)
    x_grid = _margin_x_grid(scenario)
    lam_values = np.concatenate([_lams(scenario.portfolio_a), _lams(scenario.portfolio_b)])
    lam_grid = _lam_grid(rep, lam_values)
    conds.append(
        ("survival_decreasing_in_lambda", check_survival_decreasing_in_lambda(rep, x_grid, lam_grid))
    )
    if convex:
        conds.append(
            ("survival_convex_in_lambda", check_survival_convex_in_lambda(rep, x_grid, lam_grid))
        )
    return rep


def _shape_condition(scenario: Scenario, structure: str, conds: list) -> Margin:
    rep = _shared_family(scenario)
    ok = rep.structure == structure
    conds.append(
        (
            f"margins_{structure}_shape",
            _bool_report(ok, f"family {type(rep).__name__} has structure '{rep.structure}'"),
        )
    )
    if ok and structure == "scale":
        return rep.with_lam(1.0)
    return rep


def _h_conditions(scenario: Scenario, conds: list, full: bool):
    _require(scenario.h is not None, "this result needs an h function in the scenario")
    if full:
        conds.append(("h_profile", check_h_conditions(scenario.h)))
    else:
        conds.append(("h_strictly_increasing", check_h_increasing(scenario.h)))


def _same_copula(scenario: Scenario):
    _require(
        scenario.portfolio_a.copula == scenario.portfolio_b.copula,
        "both portfolios must share one copula for this result",
    )
    return scenario.portfolio_b.copula


def _pair_setup(scenario: Scenario):
    _require(
        scenario.portfolio_a.n == 2 and scenario.portfolio_b.n == 2,
        "this result compares portfolios of two policies",
    )


def _conds_t1(s: Scenario) -> list:
    _pair_setup(s)
    _require(s.portfolio_a.margins == s.portfolio_b.margins, "margins must coincide (only p varies)")
    cop = _same_copula(s)
    conds: list = []
    _h_conditions(s, conds, full=True)
    _survival_lambda_conditions(s, conds, convex=False)
    conds.append(("copula_pqd", is_pqd(cop)))
    lam = _lams(s.portfolio_b)
    hp_b = np.asarray(s.h.eval(_ps(s.portfolio_b)))
    hp_a = np.asarray(s.h.eval(_ps(s.portfolio_a)))
    tol = s.majorization_tol
    conds.append(("opposite_order_base", _opposite_order_report(lam, hp_b, tol, "lam vs h(p)")))
    conds.append(("opposite_order_starred", _opposite_order_report(lam, hp_a, tol, "lam vs h(p*)")))
    conds.append(("h_p_majorized", _maj_report(hp_a, hp_b, tol, "h(p*) majorized by h(p)")))
    return conds


def _conds_t2(s: Scenario) -> list:
    _pair_setup(s)
    cop = _same_copula(s)
    _require(s.portfolio_a.indicators == s.portfolio_b.indicators, "indicators must coincide")
    conds: list = []
    _h_conditions(s, conds, full=False)
    _survival_lambda_conditions(s, conds, convex=True)
    conds.append(("copula_partial_ordering", check_partial_ordering(cop)))
    hp = np.asarray(s.h.eval(_ps(s.portfolio_b)))
    lam_b, lam_a = _lams(s.portfolio_b), _lams(s.portfolio_a)
    tol = s.majorization_tol
    conds.append(("opposite_order_base", _opposite_order_report(lam_b, hp, tol, "lam vs h(p)")))
    conds.append(("opposite_order_starred", _opposite_order_report(lam_a, hp, tol, "lam* vs h(p)")))
    conds.append(
        ("lambda_weakly_supermajorized", _supermaj_report(lam_a, lam_b, tol, "lam* against lam"))
    )
    return conds


def _conds_t3(s: Scenario) -> list:
    _pair_setup(s)
    cop = _same_copula(s)
    conds: list = []
    _h_conditions(s, conds, full=True)
    _survival_lambda_conditions(s, conds, convex=True)
    conds.append(("copula_pqd", is_pqd(cop)))
    conds.append(("copula_partial_ordering", check_partial_ordering(cop)))
    lam_b, lam_a = _lams(s.portfolio_b), _lams(s.portfolio_a)
    hp_b = np.asarray(s.h.eval(_ps(s.portfolio_b)))
    hp_a = np.asarray(s.h.eval(_ps(s.portfolio_a)))
    tol = s.majorization_tol
    conds.append(("opposite_order_base", _opposite_order_report(lam_b, hp_b, tol, "lam vs h(p)")))
    conds.append(("opposite_order_starred", _opposite_order_report(lam_a, hp_a, tol, "lam* vs h(p*)")))
    conds.append(("h_p_majorized", _maj_report(hp_a, hp_b, tol, "h(p*) majorized by h(p)")))
    conds.append(
        ("lambda_weakly_supermajorized", _supermaj_report(lam_a, lam_b, tol, "lam* against lam"))
    )
    return conds


def _conds_scale_specialization(s: Scenario, base) -> list:
    conds: list = []
    rep_baseline = _shape_condition(s, "scale", conds)
    if conds[-1][1].passed:
        x_grid = _margin_x_grid(s)
        conds.append(("baseline_density_decreasing", check_density_decreasing(rep_baseline, x_grid)))
    return conds + base(s)


def _conds_t8(s: Scenario) -> list:
    _pair_setup(s)
    _same_copula(s)
    cop = s.portfolio_b.copula
    _require(
        isinstance(s.portfolio_b.indicators, JointPairIndicators)
        and s.portfolio_a.indicators == s.portfolio_b.indicators,
        "this result needs one shared joint indicator pmf",
    )
    conds: list = []
    rep = lwsai_check(s.portfolio_b.indicators)
    conds.append(
        (
            "indicators_lwsai",
            _bool_report(rep.passed, f"p(1,0)={rep.p10:.6g} vs p(0,1)={rep.p01:.6g}"),
        )
    )
    _survival_lambda_conditions(s, conds, convex=True)
    lam_b, lam_a = _lams(s.portfolio_b), _lams(s.portfolio_a)
    tol = s.majorization_tol
    conds.append(("lambda_majorized", _maj_report(lam_a, lam_b, tol, "lam* majorized by lam")))
    conds.append(("lambda_descending_base", _descending_report(lam_b, tol, "lam")))
    conds.append(("lambda_descending_starred", _descending_report(lam_a, tol, "lam*")))
    conds.append(("copula_symmetric", check_symmetry(cop)))
    conds.append(("copula_partial_ordering", check_partial_ordering(cop)))
    return conds


def _conds_t12(s: Scenario) -> list:
    _same_copula(s)
    _require(
        isinstance(s.portfolio_b.indicators, IndependentIndicators)
        and s.portfolio_a.indicators == s.portfolio_b.indicators,
        "this result needs one shared set of independent indicators",
    )
    conds: list = []
    _survival_lambda_conditions(s, conds, convex=False)
    conds.append(
        (
            "lambda_componentwise_dominates",
            _componentwise_le_report(
                _lams(s.portfolio_b), _lams(s.portfolio_a), s.majorization_tol, "lam vs lam*"
            ),
        )
    )
    return conds


def _conds_t13(s: Scenario) -> list:
    _require(s.portfolio_a.margins == s.portfolio_b.margins, "margins must coincide")
    _require(s.portfolio_a.indicators == s.portfolio_b.indicators, "indicators must coincide")
    return [("copula_plod_ordered", plod_less(s.portfolio_b.copula, s.portfolio_a.copula))]


def _conds_t14(s: Scenario) -> list:
    _require(s.portfolio_a.indicators == s.portfolio_b.indicators, "indicators must coincide")
    conds: list = []
    _survival_lambda_conditions(s, conds, convex=False)
    conds.append(
        (
            "lambda_componentwise_dominates",
            _componentwise_le_report(
                _lams(s.portfolio_b), _lams(s.portfolio_a), s.majorization_tol, "lam vs lam*"
            ),
        )
    )
    conds.append(("copula_plod_ordered", plod_less(s.portfolio_b.copula, s.portfolio_a.copula)))
    return conds


def _with_shape(structure: str, base):
    def build(s: Scenario) -> list:
        conds: list = []
        _shape_condition(s, structure, conds)
        return conds + base(s)

    return build


_CONDITION_BUILDERS = {
    TheoremId.T1: _conds_t1,
    TheoremId.T2: _conds_t2,
    TheoremId.T3: _conds_t3,
    TheoremId.T5: lambda s: _conds_scale_specialization(s, _conds_t3),
    TheoremId.T6: _with_shape("phr", _conds_t3),
    TheoremId.T7: _with_shape("tg", _conds_t3),
    TheoremId.T8: _conds_t8,
    TheoremId.T9: lambda s: _conds_scale_specialization(s, _conds_t8),
    TheoremId.T10: _with_shape("phr", _conds_t8),
    TheoremId.T11: _with_shape("tg", _conds_t8),
    TheoremId.T12: _conds_t12,
    TheoremId.T13: _conds_t13,
    TheoremId.T14: _conds_t14,
    TheoremId.T15: _with_shape("scale", _conds_t14),
    TheoremId.T16: _with_shape("phr", _conds_t14),
    TheoremId.T17: _with_shape("tg", _conds_t14),
}


def check_hypotheses(theorem: TheoremId, scenario: Scenario) -> HypothesisReport:
    """Verify every stated hypothesis of the given result on the scenario."""
    builder = _CONDITION_BUILDERS[TheoremId(theorem)]
    conds = builder(scenario)
    return HypothesisReport(TheoremId(theorem), tuple(conds))


def verify_theorem(theorem: TheoremId, scenario: Scenario) -> TheoremVerdict:
    """Run the hypothesis checklist, then test the conclusion on the default grid.

    The conclusion A <=_st B counts as confirmed when B dominates or the
    two laws are indistinguishable at closed-form precision.
    """
    report = check_hypotheses(theorem, scenario)
    verdict = st_compare(scenario.portfolio_a, scenario.portfolio_b, scenario.build_grid())
    confirmed = verdict.relation in (Relation.B_DOMINATES, Relation.INDISTINGUISHABLE)
    return TheoremVerdict(report, verdict, confirmed)


def format_verdict(tv: TheoremVerdict) -> str:
    """Serialize a verdict as key: value lines, one condition per line."""
    lines = [f"theorem: {tv.hypotheses.theorem.value}"]
    for name, rep in tv.hypotheses.conditions:
        lines.append(f"condition.{name}: {rep.one_line()}")
    lines.append(f"hypotheses: {'pass' if tv.hypotheses.all_passed else 'FAIL'}")
    lines.append(f"relation: {tv.verdict.relation.value}")
    lines.append(f"max_gap_a_over_b: {tv.verdict.max_gap_a_over_b:.17g}")
    lines.append(f"max_gap_b_over_a: {tv.verdict.max_gap_b_over_a:.17g}")
    loc = tv.verdict.crossing_location
    lines.append(f"crossing_location: {loc:.17g}" if loc is not None else "crossing_location: -")
    lines.append(f"grid: {tv.verdict.grid_descriptor}")
    lines.append(f"conclusion: {'confirmed' if tv.conclusion_confirmed else 'refuted'}")
    return "\n".join(lines) + "\n"
