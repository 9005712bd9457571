import math

import numpy as np
import pytest
from scipy.integrate import quad

from claimorder.margins import (
    Gamma,
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

ALL_MARGINS = [
    Gamma(0.8, 0.26),
    Gamma(2.0, 1.3),
    Pareto(1.0, 2.0),
    Weibull(3.0, 0.5),
    Weibull(0.7, 1.1),
    TransmutedExponential(3.0, 0.6),
    TransmutedExponential(2.0, -0.8),
    ScaleMargin(StdExponential(), 0.7),
    ScaleMargin(StdUniform(), 2.0),
    PHRMargin(StdExponential(), 2.5),
    PHRMargin(StdUniform(), 0.8),
    TGMargin(StdExponential(), -0.4),
    TGMargin(StdUniform(), 0.9),
]


def _quad_gamma_cdf(a, x):
    if x <= 0:
        return 0.0
    val, _ = quad(lambda t: t ** (a - 1.0) * math.exp(-t), 0.0, x, epsabs=1e-14, limit=200)
    return val / math.gamma(a)


class TestIncompleteGamma:
    def test_exponential_special_case(self):
        assert regularized_lower_incomplete_gamma(1.0, 1.0) == pytest.approx(
            1.0 - math.exp(-1.0), abs=1e-14
        )

    def test_zero_argument(self):
        assert regularized_lower_incomplete_gamma(0.8, 0.0) == 0.0

    def test_against_quadrature_scalar(self):
        # oracle: adaptive quadrature of t^(a-1) e^-t on [0, x] over Gamma(a)
        assert regularized_lower_incomplete_gamma(0.8, 0.5) == pytest.approx(
            _quad_gamma_cdf(0.8, 0.5), abs=1e-12
        )

    @pytest.mark.parametrize("a", [0.5, 0.8, 1.0, 2.0])
    def test_against_quadrature_grid(self, a):
        xs = np.geomspace(1e-3, 30.0, 100)
        mine = regularized_lower_incomplete_gamma(a, xs)
        oracle = np.array([_quad_gamma_cdf(a, x) for x in xs])
        assert np.max(np.abs(mine - oracle)) <= 1e-10

    def test_monotone_and_bounded(self):
        xs = np.linspace(0.0, 50.0, 400)
        p = regularized_lower_incomplete_gamma(3.7, xs)
        assert np.all(np.diff(p) >= -1e-15)
        assert np.all((p >= 0.0) & (p <= 1.0))
        assert regularized_lower_incomplete_gamma(3.7, 1e6) == pytest.approx(1.0, abs=1e-14)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            regularized_lower_incomplete_gamma(-1.0, 1.0)
        with pytest.raises(ValueError):
            regularized_lower_incomplete_gamma(1.0, -0.5)


class TestClosedForms:
    def test_pareto_survival_value(self):
        assert Pareto(1.0, 2.0).survival(2.0) == pytest.approx(0.25, abs=1e-15)

    def test_pareto_cdf_below_support(self):
        assert Pareto(1.0, 4.0).cdf(1.0) == 0.0
        assert Pareto(1.0, 4.0).cdf(0.3) == 0.0
        assert Pareto(1.0, 4.0).survival(0.3) == 1.0

    def test_weibull_survival_at_origin(self):
        assert Weibull(3.0, 0.5).survival(0.0) == 1.0

    def test_te_tail_limit(self):
        assert TransmutedExponential(3.0, 0.6).survival(1e6) == pytest.approx(0.0, abs=1e-300)

    def test_gamma_exponential_case(self):
        assert Gamma(1.0, 2.0).cdf(1.0) == pytest.approx(1.0 - math.exp(-2.0), abs=1e-14)

    def test_gamma_interior_value_against_quadrature(self):
        g = Gamma(0.8, 0.26)
        expected = _quad_gamma_cdf(0.8, 0.26)
        assert 0.0 < expected < 1.0
        assert g.cdf(1.0) == pytest.approx(expected, abs=1e-10)

    def test_weibull_quantile_closed_form(self):
        # (rate x)^shape = 1 at the 1 - e^-1 level
        assert Weibull(3.0, 0.5).quantile(1.0 - math.exp(-1.0)) == pytest.approx(2.0, rel=1e-12)

    def test_pareto_quantile_closed_form(self):
        assert Pareto(1.0, 2.0).quantile(0.75) == pytest.approx(2.0, rel=1e-14)

    def test_invalid_parameters_rejected(self):
        with pytest.raises(ValueError):
            Gamma(-0.5, 1.0)
        with pytest.raises(ValueError):
            Pareto(1.0, 0.0)
        with pytest.raises(ValueError):
            TransmutedExponential(1.0, 1.5)
        with pytest.raises(ValueError):
            TGMargin(StdExponential(), -2.0)


@pytest.mark.parametrize("m", ALL_MARGINS, ids=lambda m: repr(m))
class TestMarginContract:
    def test_survival_complement(self, m):
        xs = np.linspace(0.0, 12.0, 50)
        assert np.max(np.abs(m.cdf(xs) + m.survival(xs) - 1.0)) <= 1e-14

    def test_survival_monotone_with_limits(self, m):
        xs = np.linspace(0.0, 60.0, 300)
        s = m.survival(xs)
        assert np.all(np.diff(s) <= 1e-15)
        assert m.survival(0.0) == pytest.approx(1.0, abs=1e-12)
        assert m.survival(1e9) == pytest.approx(0.0, abs=1e-12)

    def test_quantile_cdf_roundtrip(self, m):
        qs = np.array([1e-4, 0.01, 0.3, 0.5, 0.9, 0.999])
        xs = m.quantile(qs)
        assert np.max(np.abs(m.cdf(xs) - qs)) <= 1e-10
        assert np.all(np.diff(xs) > 0)

    def test_cdf_quantile_roundtrip_interior(self, m):
        xs = m.quantile(np.linspace(0.05, 0.95, 9))
        back = m.quantile(m.cdf(xs))
        assert np.max(np.abs(back - xs)) <= 1e-8 * np.maximum(1.0, np.abs(xs)).max()

    def test_quantile_domain(self, m):
        with pytest.raises(ValueError):
            m.quantile(0.0)
        with pytest.raises(ValueError):
            m.quantile(1.0)


def test_survival_properties_random_parameters():
    rng = np.random.default_rng(5)
    for _ in range(60):
        m = [
            Gamma(rng.uniform(0.3, 4.0), rng.uniform(0.2, 3.0)),
            Pareto(rng.uniform(0.5, 2.0), rng.uniform(0.8, 6.0)),
            Weibull(rng.uniform(0.5, 4.0), rng.uniform(0.2, 3.0)),
            TransmutedExponential(rng.uniform(0.3, 4.0), rng.uniform(-1.0, 1.0)),
        ][rng.integers(4)]
        xs = np.geomspace(1e-3, 200.0, 80)
        s = m.survival(xs)
        assert np.all(np.diff(s) <= 1e-14)
        assert m.survival(0.0) == pytest.approx(1.0, abs=1e-12)
        assert m.survival(1e12) <= 1e-6  # heavy Pareto tails need room


def test_phr_identity():
    base = StdExponential()
    m = PHRMargin(base, 2.5)
    xs = np.linspace(0.0, 8.0, 40)
    assert np.max(np.abs(m.survival(xs) - base.survival(xs) ** 2.5)) == 0.0


def test_tg_identity_and_reduction():
    base = StdUniform()
    xs = np.linspace(0.0, 1.0, 41)
    m = TGMargin(base, 0.7)
    expected = base.survival(xs) * (1.0 - 0.7 * base.cdf(xs))
    assert np.max(np.abs(m.survival(xs) - expected)) <= 1e-15
    assert np.array_equal(TGMargin(base, 0.0).survival(xs), base.survival(xs))


def test_scale_identity():
    base = StdExponential()
    m = ScaleMargin(base, 1.7)
    xs = np.linspace(0.0, 5.0, 30)
    assert np.array_equal(m.cdf(xs), base.cdf(1.7 * xs))


def test_te_is_transmuted_unit_exponential():
    te = TransmutedExponential(1.0, 0.35)
    tg = TGMargin(StdExponential(), 0.35)
    xs = np.linspace(0.0, 10.0, 50)
    assert np.max(np.abs(te.survival(xs) - tg.survival(xs))) <= 1e-15


def test_family_identity_helpers():
    g = Gamma(0.8, 0.26)
    assert g.lam == 0.26
    assert g.with_lam(0.74) == Gamma(0.8, 0.74)
    assert same_family(g, Gamma(0.8, 5.0))
    assert not same_family(g, Gamma(0.9, 0.26))
    assert not same_family(g, Weibull(0.8, 0.26))
    assert Pareto(1.0, 2.0).structure == "phr"
    assert TransmutedExponential(1.0, 0.0).structure == "tg"
    assert ScaleMargin(StdExponential(), 1.0).structure == "scale"


class TestLambdaCheckers:
    x_grid = np.geomspace(0.05, 10.0, 25)
    lam_grid = np.linspace(0.5, 3.0, 11)

    def test_phr_survival_decreasing(self):
        rep = PHRMargin(StdExponential(), 1.0)
        assert check_survival_decreasing_in_lambda(rep, self.x_grid, self.lam_grid).passed

    def test_scale_family_decreasing(self):
        rep = Gamma(0.8, 1.0)
        assert check_survival_decreasing_in_lambda(rep, self.x_grid, self.lam_grid).passed

    def test_inverted_family_fails(self):
        def inverted(lam):
            return PHRMargin(StdExponential(), 1.0 / lam)

        rep = check_survival_decreasing_in_lambda(inverted, self.x_grid, self.lam_grid)
        assert not rep.passed
        assert rep.worst_violation > 0.0

    def test_phr_convex(self):
        rep = PHRMargin(StdExponential(), 1.0)
        assert check_survival_convex_in_lambda(rep, self.x_grid, self.lam_grid).passed

    def test_tg_convex_with_equality(self):
        rep = TGMargin(StdExponential(), 0.0)
        out = check_survival_convex_in_lambda(rep, self.x_grid, np.linspace(-0.9, 0.9, 11))
        assert out.passed
        assert out.worst_violation <= 1e-12  # linear in the parameter

    def test_squared_rate_family_not_convex(self):
        # survival e^(-lam^2 x): second derivative in lam is (4 lam^2 x^2 - 2 x) e^(-lam^2 x),
        # negative wherever lam^2 x < 1/2
        def squared(lam):
            return ScaleMargin(StdExponential(), lam**2)

        out = check_survival_convex_in_lambda(squared, self.x_grid, np.linspace(0.1, 1.0, 11))
        assert not out.passed

    def test_convexity_needs_even_grid(self):
        with pytest.raises(ValueError):
            check_survival_convex_in_lambda(
                PHRMargin(StdExponential(), 1.0), self.x_grid, np.array([0.5, 0.6, 1.0])
            )

    def test_density_decreasing_variants(self):
        xs = np.geomspace(0.01, 20.0, 60)
        assert check_density_decreasing(Gamma(0.8, 1.0), xs).passed
        assert not check_density_decreasing(Gamma(2.0, 1.0), xs).passed
        assert check_density_decreasing(Gamma(1.0, 1.0), xs).passed
