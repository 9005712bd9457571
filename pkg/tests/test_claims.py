import numpy as np
import pytest

from claimorder.claims import (
    IndependentIndicators,
    JointPairIndicators,
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
)
from claimorder.copulas import AMH, FGM, GumbelHougaard, Independence
from claimorder.margins import Gamma, Pareto, TransmutedExponential, Weibull


def _pf(margins, copula, p):
    ind = p if isinstance(p, JointPairIndicators) else IndependentIndicators(tuple(p))
    return Portfolio(tuple(margins), copula, ind)


def _random_bivariate(rng):
    m1 = [
        Gamma(rng.uniform(0.4, 2.5), rng.uniform(0.2, 2.0)),
        Pareto(1.0, rng.uniform(1.0, 6.0)),
        Weibull(rng.uniform(0.5, 3.0), rng.uniform(0.2, 2.0)),
        TransmutedExponential(rng.uniform(0.5, 3.0), rng.uniform(-1.0, 1.0)),
    ][rng.integers(4)]
    m2 = [
        Gamma(rng.uniform(0.4, 2.5), rng.uniform(0.2, 2.0)),
        Pareto(1.0, rng.uniform(1.0, 6.0)),
        Weibull(rng.uniform(0.5, 3.0), rng.uniform(0.2, 2.0)),
    ][rng.integers(3)]
    cop = [
        FGM(2, rng.uniform(-1.0, 1.0)),
        AMH(rng.uniform(-1.0, 1.0)),
        GumbelHougaard(rng.uniform(1.0, 6.0)),
        Independence(2),
    ][rng.integers(4)]
    return _pf([m1, m2], cop, rng.uniform(0.0, 1.0, 2))


class TestIndicators:
    def test_independent_validation(self):
        with pytest.raises(ValueError):
            IndependentIndicators((0.5, 1.2))
        with pytest.raises(ValueError):
            IndependentIndicators(())

    def test_joint_validation(self):
        with pytest.raises(ValueError):
            JointPairIndicators(0.5, 0.5, 0.5, -0.5)
        with pytest.raises(ValueError):
            JointPairIndicators(0.5, 0.3, 0.3, 0.3)

    def test_portfolio_shape_validation(self):
        with pytest.raises(ValueError):
            _pf([Gamma(1, 1)], FGM(2, 0.1), [0.5])
        with pytest.raises(ValueError):
            Portfolio(
                (Gamma(1, 1), Gamma(1, 2), Gamma(1, 3)),
                FGM(3, 0.1),
                JointPairIndicators(0.7, 0.1, 0.1, 0.1),
            )

    def test_lwsai(self):
        assert lwsai_check(JointPairIndicators(0.89, 0.06, 0.04, 0.01)).passed
        assert lwsai_check(JointPairIndicators(0.8, 0.1, 0.1, 0.0)).passed
        assert not lwsai_check(JointPairIndicators(0.89, 0.04, 0.06, 0.01)).passed


class TestExactCdfs:
    def test_no_claims_means_point_mass_at_zero(self):
        pf = _pf([Gamma(1, 1), Gamma(1, 2)], FGM(2, 0.5), [0.0, 0.0])
        xs = np.array([0.0, 0.5, 3.0])
        assert np.array_equal(cdf_max(pf, xs), np.ones(3))
        assert cdf_max(pf, -0.5) == 0.0

    def test_certain_claims_independence_is_product(self):
        pf = _pf([Gamma(1, 1), Gamma(1, 2)], Independence(2), [1.0, 1.0])
        xs = np.linspace(0.1, 5.0, 20)
        expected = pf.margins[0].cdf(xs) * pf.margins[1].cdf(xs)
        assert np.max(np.abs(cdf_max(pf, xs) - expected)) <= 1e-15

    def test_certain_claims_closed_form_is_copula(self):
        pf = _pf([Gamma(1, 1), Gamma(1, 2)], FGM(2, 0.8), [1.0, 1.0])
        xs = np.linspace(0.1, 5.0, 20)
        fs = np.stack([pf.margins[0].cdf(xs), pf.margins[1].cdf(xs)], axis=-1)
        assert np.max(np.abs(cdf_max_pair_closed(pf, xs) - pf.copula.eval(fs))) <= 1e-15

    def test_independence_copula_collapses_bracket(self):
        pf = _pf([Gamma(1, 1), Pareto(1, 3)], Independence(2), [0.3, 0.7])
        xs = np.linspace(0.0, 6.0, 30)
        p1, p2 = 0.3, 0.7
        expected = (1 - p1 * pf.margins[0].survival(xs)) * (1 - p2 * pf.margins[1].survival(xs))
        assert np.max(np.abs(cdf_max_pair_closed(pf, xs) - expected)) <= 1e-15

    def test_pair_value_from_printed_form_by_hand(self, example):
        # AMH copula, unit-scale Pareto margins with exponents 4 and 2,
        # p = (0.02, 0.06), evaluated at x = 2 with plain arithmetic
        pf = example(3).scenario.portfolio_b
        f1, f2 = 1.0 - 2.0**-4.0, 1.0 - 2.0**-2.0
        cval = f1 * f2 / (1.0 - 0.3 * (1.0 - f1) * (1.0 - f2))
        byhand = (1.0 - 0.02 * (1.0 - f1)) * (1.0 - 0.06 * (1.0 - f2)) + 0.02 * 0.06 * (
            cval - f1 * f2
        )
        assert cdf_max_pair_closed(pf, 2.0) == pytest.approx(byhand, abs=1e-15)

    def test_mixture_equals_closed_form_on_randoms(self):
        rng = np.random.default_rng(31)
        worst = 0.0
        for _ in range(100):
            pf = _random_bivariate(rng)
            xs = np.geomspace(0.01, 80.0, 60)
            gap = np.abs(cdf_max(pf, xs) - cdf_max_pair_closed(pf, xs))
            worst = max(worst, float(gap.max()))
        assert worst <= 1e-12

    def test_mixture_matches_closed_on_first_example(self, example):
        pf = example(1).scenario.portfolio_b
        xs = default_grid([pf], points=201)
        assert np.max(np.abs(cdf_max(pf, xs) - cdf_max_pair_closed(pf, xs))) <= 1e-12

    def test_joint_pair_never_claim(self):
        pf = _pf([Pareto(1, 7), Pareto(1, 2)], FGM(2, 0.7), JointPairIndicators(1.0, 0.0, 0.0, 0.0))
        xs = np.linspace(0.0, 10.0, 11)
        assert np.array_equal(cdf_max_joint_pair(pf, xs), np.ones(11))

    def test_joint_pair_factorizing_reduces_to_independent(self):
        p1, p2 = 0.23, 0.41
        joint = JointPairIndicators(
            (1 - p1) * (1 - p2), (1 - p1) * p2, p1 * (1 - p2), p1 * p2
        )
        margins = [Gamma(0.9, 0.7), Weibull(1.4, 0.9)]
        cop = AMH(0.45)
        pf_joint = _pf(margins, cop, joint)
        pf_indep = _pf(margins, cop, [p1, p2])
        xs = np.geomspace(0.01, 20.0, 50)
        gap = np.abs(cdf_max_joint_pair(pf_joint, xs) - cdf_max_pair_closed(pf_indep, xs))
        assert np.max(gap) <= 1e-14

    def test_auto_dispatch(self, example):
        pf5 = example(5).scenario.portfolio_a
        xs = np.linspace(1.0, 4.0, 5)
        assert np.array_equal(cdf_max_auto(pf5, xs), cdf_max_joint_pair(pf5, xs))
        pf1 = example(1).scenario.portfolio_a
        assert np.array_equal(cdf_max_auto(pf1, xs), cdf_max_pair_closed(pf1, xs))

    def test_formula_shape_requirements(self):
        tri = _pf([Gamma(1, 1)] * 3, FGM(3, 0.2), [0.1, 0.2, 0.3])
        with pytest.raises(ValueError):
            cdf_max_pair_closed(tri, 1.0)
        with pytest.raises(ValueError):
            cdf_max_joint_pair(tri, 1.0)


class TestMonotonicityInvariants:
    def test_cdf_nondecreasing_in_x(self):
        rng = np.random.default_rng(37)
        for _ in range(20):
            pf = _random_bivariate(rng)
            xs = np.geomspace(1e-3, 100.0, 200)
            assert np.all(np.diff(cdf_max_auto(pf, xs)) >= -1e-14)

    def test_cdf_increases_with_lambda(self):
        # survival decreasing in lam makes the largest claim smaller
        base = _pf([Pareto(1, 2.0), Pareto(1, 3.0)], FGM(2, 0.4), [0.3, 0.5])
        bigger = _pf([Pareto(1, 2.6), Pareto(1, 3.0)], FGM(2, 0.4), [0.3, 0.5])
        xs = np.geomspace(1.001, 50.0, 100)
        assert np.all(cdf_max_auto(bigger, xs) >= cdf_max_auto(base, xs) - 1e-15)

    def test_cdf_increases_with_plod_larger_copula(self):
        margins = [Gamma(0.8, 0.5), Gamma(0.8, 1.5)]
        weak = _pf(margins, FGM(2, 0.1), [0.2, 0.4])
        strong = _pf(margins, FGM(2, 0.9), [0.2, 0.4])
        xs = np.geomspace(1e-3, 40.0, 100)
        assert np.all(cdf_max_auto(strong, xs) >= cdf_max_auto(weak, xs) - 1e-15)

    def test_cdf_decreases_when_p_rises(self):
        margins = [Gamma(0.8, 0.5), Gamma(0.8, 1.5)]
        low = _pf(margins, FGM(2, 0.4), [0.2, 0.4])
        high = _pf(margins, FGM(2, 0.4), [0.35, 0.4])
        xs = np.geomspace(1e-3, 40.0, 100)
        assert np.all(cdf_max_auto(high, xs) <= cdf_max_auto(low, xs) + 1e-15)


class TestSampler:
    def test_all_zero_probabilities_draw_zero(self):
        pf = _pf([Gamma(1, 1), Gamma(1, 2)], FGM(2, 0.5), [0.0, 0.0])
        rng = np.random.default_rng(0)
        assert np.array_equal(sample_max_many(pf, 50, rng), np.zeros(50))
        assert sample_max(pf, rng) == 0.0

    def test_certain_indicators_match_max_law(self):
        pf = _pf([Gamma(1.0, 1.0), Gamma(1.0, 1.0)], Independence(2), [1.0, 1.0])
        rng = np.random.default_rng(1)
        y = sample_max_many(pf, 200_000, rng)
        xs = np.linspace(0.1, 6.0, 25)
        emp = np.searchsorted(np.sort(y), xs, side="right") / len(y)
        exact = (1.0 - np.exp(-xs)) ** 2
        assert np.max(np.abs(emp - exact)) < 0.005

    def test_empirical_cdf_matches_exact_on_grid(self, example):
        scen = example(1).scenario
        pf = scen.portfolio_b
        rng = np.random.default_rng(7)
        y = sample_max_many(pf, 300_000, rng)
        grid = default_grid([pf], points=301)
        emp = np.searchsorted(np.sort(y), grid, side="right") / len(y)
        assert np.max(np.abs(emp - cdf_max_auto(pf, grid))) <= 0.005

    def test_scalar_draw_follows_spec_order(self):
        pf = _pf([Pareto(1, 3), Pareto(1, 2)], FGM(2, 0.5), [0.4, 0.6])
        rng = np.random.default_rng(5)
        draws = np.array([sample_max(pf, rng) for _ in range(2000)])
        assert np.all(draws >= 0.0)
        occurs = draws > 0.0
        # P(any claim) = 1 - 0.6*0.4
        assert np.mean(occurs) == pytest.approx(1.0 - 0.6 * 0.4, abs=0.03)
        assert np.all(draws[occurs] >= 1.0)  # Pareto support starts at the scale


class TestStCompare:
    def test_identical_portfolios_indistinguishable(self, example):
        pf = example(1).scenario.portfolio_b
        grid = default_grid([pf], points=301)
        verdict = st_compare(pf, pf, grid)
        assert verdict.relation is Relation.INDISTINGUISHABLE
        assert verdict.crossing_location is None

    def test_first_example_dominance(self, example):
        scen = example(1).scenario
        grid = scen.build_grid()
        verdict = st_compare(scen.portfolio_a, scen.portfolio_b, grid)
        assert verdict.relation is Relation.B_DOMINATES
        assert verdict.max_gap_a_over_b <= 1e-12

    def test_second_example_crossing_with_location(self, example):
        scen = example(2).scenario
        grid = scen.build_grid()
        verdict = st_compare(scen.portfolio_a, scen.portfolio_b, grid)
        assert verdict.relation is Relation.CROSSING
        assert verdict.max_gap_a_over_b > 1e-6
        assert verdict.max_gap_b_over_a > 1e-6
        assert grid[0] <= verdict.crossing_location <= grid[-1]

    def test_reversed_arguments_flip_relation(self, example):
        scen = example(1).scenario
        grid = scen.build_grid()
        verdict = st_compare(scen.portfolio_b, scen.portfolio_a, grid)
        assert verdict.relation is Relation.A_DOMINATES

    def test_grid_validation(self, example):
        scen = example(1).scenario
        with pytest.raises(ValueError):
            st_compare(scen.portfolio_a, scen.portfolio_b, [2.0, 1.0])


class TestDefaultGrid:
    def test_grid_is_geometric_and_spans_quantiles(self, example):
        scen = example(1).scenario
        grid = default_grid([scen.portfolio_a, scen.portfolio_b], points=501)
        assert grid.size == 501
        assert np.all(np.diff(grid) > 0)
        ratios = grid[1:] / grid[:-1]
        assert np.max(ratios) - np.min(ratios) < 1e-8

    def test_single_point_grid(self, example):
        scen = example(1).scenario
        assert default_grid([scen.portfolio_a], points=1).size == 1

    def test_pareto_grid_starts_above_scale(self, example):
        scen = example(5).scenario
        grid = default_grid([scen.portfolio_a, scen.portfolio_b])
        assert grid[0] > 1.0
