"""Exact and simulated laws of the largest claim amount in dependent portfolios.

The package compares the largest claim of two copula-coupled risk
portfolios in the usual stochastic order: closed-form mixture CDFs, a
Monte Carlo oracle, numeric checkers for every hypothesis of the
supported ordering results, and a CLI that reproduces the bundled
scenarios.
"""

from .claims import (
    IndependentIndicators,
    JointPairIndicators,
    LwsaiReport,
    OrderVerdict,
    Portfolio,
    Relation,
    cdf_max,
    cdf_max_auto,
    cdf_max_joint_pair,
    cdf_max_pair_closed,
    default_grid,
    lwsai_check,
    sample_max,
    sample_max_many,
    st_compare,
    survival_max,
)
from .copulas import (
    AMH,
    FGM,
    Copula,
    Frank3,
    GumbelHougaard,
    Independence,
    check_axioms,
    check_partial_ordering,
    check_symmetry,
    conditional_sample,
    conditional_sample_many,
    is_pqd,
    is_schur_concave,
    plod_less,
)
from .majorize import (
    in_opposite_order_set,
    majorized,
    sort_descending,
    weakly_submajorized,
    weakly_supermajorized,
)
from .margins import (
    BaselineLaw,
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
    check_density_decreasing,
    check_survival_convex_in_lambda,
    check_survival_decreasing_in_lambda,
    regularized_lower_incomplete_gamma,
    same_family,
)
from .reports import ConditionReport
from .scenario_io import ParsedScenario, ScenarioParseError, parse_scenario_text
from .theorems import (
    GridSpec,
    HFunction,
    HypothesisReport,
    IdentityH,
    LogShift2H,
    Scenario,
    SqrtH,
    TabulatedMonotoneH,
    TheoremId,
    TheoremVerdict,
    check_h_conditions,
    check_h_increasing,
    check_hypotheses,
    format_verdict,
    verify_theorem,
)

__version__ = "0.1.0"
