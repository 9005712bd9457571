"""The seven bundled comparison scenarios, embedded as text constants.

Each constant is byte-identical to the matching file under ``scenarios/``
in the repository, so running a bundled example and checking the file give
the same result.  ``EXPECTED_OUTCOME`` records the documented verdict each
scenario is supposed to produce.
"""

from __future__ import annotations

EXPECTED_OUTCOME: dict[int, str] = {
    1: "dominance",
    2: "crossing",
    3: "dominance",
    4: "dominance",
    5: "dominance",
    6: "crossing",
    7: "dominance",
}

EXAMPLE_TEXT: dict[int, str] = {
    1: """\
# Gamma severities under an FGM copula; starred portfolio pinches the
# claim probabilities and evens out the rates. Expected: dominance.
theorem = T5
h = identity

portfolio_a.margin.1.family = gamma
portfolio_a.margin.1.shape = 0.8
portfolio_a.margin.1.rate = 0.4
portfolio_a.margin.2.family = gamma
portfolio_a.margin.2.shape = 0.8
portfolio_a.margin.2.rate = 0.6
portfolio_a.copula.family = fgm
portfolio_a.copula.theta = 0.5
portfolio_a.indicators.kind = independent
portfolio_a.indicators.p.1 = 0.026
portfolio_a.indicators.p.2 = 0.024

portfolio_b.margin.1.family = gamma
portfolio_b.margin.1.shape = 0.8
portfolio_b.margin.1.rate = 0.26
portfolio_b.margin.2.family = gamma
portfolio_b.margin.2.shape = 0.8
portfolio_b.margin.2.rate = 0.74
portfolio_b.copula.family = fgm
portfolio_b.copula.theta = 0.5
portfolio_b.indicators.kind = independent
portfolio_b.indicators.p.1 = 0.03
portfolio_b.indicators.p.2 = 0.02
""",
    2: """\
# Same setup as the first scenario, but the claim probabilities now run in
# the same direction as the rates, so the opposite-ordering hypothesis
# fails. Expected: the survival curves cross.
theorem = T5
h = identity

portfolio_a.margin.1.family = gamma
portfolio_a.margin.1.shape = 0.8
portfolio_a.margin.1.rate = 0.4
portfolio_a.margin.2.family = gamma
portfolio_a.margin.2.shape = 0.8
portfolio_a.margin.2.rate = 0.6
portfolio_a.copula.family = fgm
portfolio_a.copula.theta = 0.5
portfolio_a.indicators.kind = independent
portfolio_a.indicators.p.1 = 0.028
portfolio_a.indicators.p.2 = 0.022

portfolio_b.margin.1.family = gamma
portfolio_b.margin.1.shape = 0.8
portfolio_b.margin.1.rate = 0.26
portfolio_b.margin.2.family = gamma
portfolio_b.margin.2.shape = 0.8
portfolio_b.margin.2.rate = 0.74
portfolio_b.copula.family = fgm
portfolio_b.copula.theta = 0.5
portfolio_b.indicators.kind = independent
portfolio_b.indicators.p.1 = 0.02
portfolio_b.indicators.p.2 = 0.03
""",
    3: """\
# Pareto severities under an Ali-Mikhail-Haq copula with h(p) = log(p + 2).
# The starred claim probabilities are quoted to four decimals, so the
# majorization totals only match to about 2e-5; the tolerance reflects
# that rounding. Expected: dominance.
theorem = T6
h = log_shift_2
majorization_tol = 1e-4

portfolio_a.margin.1.family = pareto
portfolio_a.margin.1.scale = 1
portfolio_a.margin.1.exponent = 4
portfolio_a.margin.2.family = pareto
portfolio_a.margin.2.scale = 1
portfolio_a.margin.2.exponent = 6
portfolio_a.copula.family = amh
portfolio_a.copula.theta = 0.3
portfolio_a.indicators.kind = independent
portfolio_a.indicators.p.1 = 0.0479
portfolio_a.indicators.p.2 = 0.0319

portfolio_b.margin.1.family = pareto
portfolio_b.margin.1.scale = 1
portfolio_b.margin.1.exponent = 4
portfolio_b.margin.2.family = pareto
portfolio_b.margin.2.scale = 1
portfolio_b.margin.2.exponent = 2
portfolio_b.copula.family = amh
portfolio_b.copula.theta = 0.3
portfolio_b.indicators.kind = independent
portfolio_b.indicators.p.1 = 0.02
portfolio_b.indicators.p.2 = 0.06
""",
    4: """\
# Transmuted-exponential severities under a strongly dependent
# Gumbel-Hougaard copula with h(p) = sqrt(p). Expected: dominance.
theorem = T7
h = sqrt

portfolio_a.margin.1.family = transmuted_exponential
portfolio_a.margin.1.scale = 3
portfolio_a.margin.1.transmute = 0.1
portfolio_a.margin.2.family = transmuted_exponential
portfolio_a.margin.2.scale = 3
portfolio_a.margin.2.transmute = 0.4
portfolio_a.copula.family = gumbel_hougaard
portfolio_a.copula.theta = 10
portfolio_a.indicators.kind = independent
portfolio_a.indicators.p.1 = 0.0676
portfolio_a.indicators.p.2 = 0.0576

portfolio_b.margin.1.family = transmuted_exponential
portfolio_b.margin.1.scale = 3
portfolio_b.margin.1.transmute = 0.6
portfolio_b.margin.2.family = transmuted_exponential
portfolio_b.margin.2.scale = 3
portfolio_b.margin.2.transmute = -0.2
portfolio_b.copula.family = gumbel_hougaard
portfolio_b.copula.theta = 10
portfolio_b.indicators.kind = independent
portfolio_b.indicators.p.1 = 0.04
portfolio_b.indicators.p.2 = 0.09
""",
    5: """\
# Pareto severities with one shared joint occurrence pmf; the starred
# exponents pinch the base ones toward their mean. Expected: dominance.
theorem = T10

portfolio_a.margin.1.family = pareto
portfolio_a.margin.1.scale = 1
portfolio_a.margin.1.exponent = 5.5
portfolio_a.margin.2.family = pareto
portfolio_a.margin.2.scale = 1
portfolio_a.margin.2.exponent = 3.5
portfolio_a.copula.family = fgm
portfolio_a.copula.theta = 0.7
portfolio_a.indicators.kind = joint
portfolio_a.indicators.p00 = 0.89
portfolio_a.indicators.p01 = 0.06
portfolio_a.indicators.p10 = 0.04
portfolio_a.indicators.p11 = 0.01

portfolio_b.margin.1.family = pareto
portfolio_b.margin.1.scale = 1
portfolio_b.margin.1.exponent = 7
portfolio_b.margin.2.family = pareto
portfolio_b.margin.2.scale = 1
portfolio_b.margin.2.exponent = 2
portfolio_b.copula.family = fgm
portfolio_b.copula.theta = 0.7
portfolio_b.indicators.kind = joint
portfolio_b.indicators.p00 = 0.89
portfolio_b.indicators.p01 = 0.06
portfolio_b.indicators.p10 = 0.04
portfolio_b.indicators.p11 = 0.01
""",
    6: """\
# Same as the fifth scenario with the base exponents swapped, breaking the
# descending-order hypothesis. Expected: the survival curves cross.
theorem = T10

portfolio_a.margin.1.family = pareto
portfolio_a.margin.1.scale = 1
portfolio_a.margin.1.exponent = 5.5
portfolio_a.margin.2.family = pareto
portfolio_a.margin.2.scale = 1
portfolio_a.margin.2.exponent = 3.5
portfolio_a.copula.family = fgm
portfolio_a.copula.theta = 0.7
portfolio_a.indicators.kind = joint
portfolio_a.indicators.p00 = 0.89
portfolio_a.indicators.p01 = 0.06
portfolio_a.indicators.p10 = 0.04
portfolio_a.indicators.p11 = 0.01

portfolio_b.margin.1.family = pareto
portfolio_b.margin.1.scale = 1
portfolio_b.margin.1.exponent = 2
portfolio_b.margin.2.family = pareto
portfolio_b.margin.2.scale = 1
portfolio_b.margin.2.exponent = 7
portfolio_b.copula.family = fgm
portfolio_b.copula.theta = 0.7
portfolio_b.indicators.kind = joint
portfolio_b.indicators.p00 = 0.89
portfolio_b.indicators.p01 = 0.06
portfolio_b.indicators.p10 = 0.04
portfolio_b.indicators.p11 = 0.01
""",
    7: """\
# Three Weibull severities under a trivariate Frank copula; every starred
# rate weakly exceeds its base counterpart. Expected: dominance.
theorem = T15

portfolio_a.margin.1.family = weibull
portfolio_a.margin.1.shape = 3
portfolio_a.margin.1.rate = 0.51
portfolio_a.margin.2.family = weibull
portfolio_a.margin.2.shape = 3
portfolio_a.margin.2.rate = 0.7
portfolio_a.margin.3.family = weibull
portfolio_a.margin.3.shape = 3
portfolio_a.margin.3.rate = 0.33
portfolio_a.copula.family = frank3
portfolio_a.copula.theta = 0.6
portfolio_a.indicators.kind = independent
portfolio_a.indicators.p.1 = 0.01
portfolio_a.indicators.p.2 = 0.02
portfolio_a.indicators.p.3 = 0.07

portfolio_b.margin.1.family = weibull
portfolio_b.margin.1.shape = 3
portfolio_b.margin.1.rate = 0.5
portfolio_b.margin.2.family = weibull
portfolio_b.margin.2.shape = 3
portfolio_b.margin.2.rate = 0.7
portfolio_b.margin.3.family = weibull
portfolio_b.margin.3.shape = 3
portfolio_b.margin.3.rate = 0.3
portfolio_b.copula.family = frank3
portfolio_b.copula.theta = 0.6
portfolio_b.indicators.kind = independent
portfolio_b.indicators.p.1 = 0.01
portfolio_b.indicators.p.2 = 0.02
portfolio_b.indicators.p.3 = 0.07
""",
}
