# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
import math

import mpmath
import numpy as np
import pytest
from scipy.special import betainc

from src.errors import DomainError, RegimeError, SingularMatrixError
from src.fluctuation import renewal_function_desc, stationary_overshoot_density
from src.model import ProcessParams
from src.passage import (
    DistributionTable,
    HittingMatrix,
    LawKind,
    blumenthal_exit_density,
    exit_radial_marginal,
    expected_sigma_minus,
    hit_point_const,
    hit_point_prob,
    infimum_law,
    multi_point_hitting,
    overshoot_cdf,
    overshoot_density,
    potential_density_u,
    potential_kernel_r,
    tabulate,
    two_point_hitting,
    undershoot_density,
    undershoot_mass,
)
from src.quadrature import integrate

TRANSIENT_PAIRS = [(1.0, 3), (0.5, 1), (0.5, 2)]


class TestDistributionTable:
    def test_frame(self):
        table = DistributionTable(grid=[0.0, 1.0], values=[0.5, 0.25], kind=LawKind.DENSITY, total_mass=0.375)
        df = table.to_frame()
        assert list(df.columns) == ["abscissa", "value"]
        assert df["value"].tolist() == [0.5, 0.25]

    @pytest.mark.parametrize(
        "grid, values, kind",
        [
            ([0.0, 1.0, 0.5], [0.1, 0.2, 0.3], LawKind.DENSITY),
            ([0.0, 1.0], [0.1, -0.2], LawKind.DENSITY),
            ([0.0, 1.0], [0.1, 1.5], LawKind.CDF),
            ([0.0, 1.0], [0.6, 0.4], LawKind.CDF),
            ([0.0, 1.0], [0.1], LawKind.DENSITY),
        ],
    )
    def test_invalid(self, grid, values, kind):
        with pytest.raises(DomainError):
            DistributionTable(grid=grid, values=values, kind=kind, total_mass=0.0)

    def test_infinite_value_at_edge_is_allowed(self, transient):
        table = tabulate(lambda t: overshoot_density(t, 0.5, transient), [0.0, 0.5, 1.0], LawKind.DENSITY)
        assert math.isinf(table.values[0])
        assert math.isfinite(table.total_mass)

    def test_empty(self):
        table = tabulate(math.exp, [], LawKind.DENSITY)
        assert table.values.size == 0
        assert table.total_mass == 0.0

    def test_non_probability_mass_is_nan(self):
        table = tabulate(math.exp, [0.0, 1.0], LawKind.DENSITY, probability=False)
        assert math.isnan(table.total_mass)

    def test_excess_mass_is_logged(self, caplog):
        with caplog.at_level(logging.WARNING, logger="src.passage"):
            tabulate(lambda t: 2.0, [0.0, 1.0], LawKind.DENSITY)
        assert "превышает 1" in caplog.text


class TestBallExit:
    def test_value(self):
        p = ProcessParams(1.0, 2)
        value = blumenthal_exit_density([0.5, 0.0], [2.0, 0.0], p)
        assert value == pytest.approx(1.0 / (4.5 * math.pi ** 2), rel=1e-14)

    @pytest.mark.parametrize(
        "y, z",
        [
            ([0.5, 0.0], [0.2, 0.1]),
            ([1.5, 0.0], [2.0, 0.0]),
            ([1.0, 0.0], [2.0, 0.0]),
            ([0.5, 0.0, 0.0], [2.0, 0.0]),
        ],
    )
    def test_invalid_points(self, y, z):
        with pytest.raises(DomainError):
            blumenthal_exit_density(y, z, ProcessParams(1.0, 2))

    def test_requires_transience(self, cauchy):
        with pytest.raises(RegimeError):
            blumenthal_exit_density([0.5], [2.0], cauchy)

    @pytest.mark.parametrize("alpha, dim", TRANSIENT_PAIRS)
    def test_radial_marginal_is_probability(self, alpha, dim):
        p = ProcessParams(alpha, dim)
        mass = integrate(lambda r: exit_radial_marginal(r, 0.6, p), 1.0, np.inf, left_order=1.0 - 0.5 * alpha).value
        assert mass == pytest.approx(1.0, rel=1e-6)

    @pytest.mark.parametrize("alpha, dim", TRANSIENT_PAIRS)
    def test_radial_marginal_matches_overshoot(self, alpha, dim):
        p = ProcessParams(alpha, dim)
        theta, u = 0.4, 0.7
        radial = math.exp(theta) * exit_radial_marginal(math.exp(theta), math.exp(-u), p)
        assert radial == pytest.approx(overshoot_density(theta, u, p), rel=1e-7)

    def test_radial_marginal_sides(self, transient):
        with pytest.raises(DomainError):
            exit_radial_marginal(0.5, 0.6, transient)


class TestOvershoot:
    @pytest.mark.parametrize("alpha, dim", TRANSIENT_PAIRS)
    @pytest.mark.parametrize("u", [0.5, 2.0])
    def test_total_mass(self, alpha, dim, u):
        p = ProcessParams(alpha, dim)
        mass = integrate(lambda t: overshoot_density(t, u, p), 0.0, np.inf, left_order=1.0 - 0.5 * alpha).value
        assert mass == pytest.approx(1.0, rel=1e-6)

    @pytest.mark.parametrize("alpha, dim", TRANSIENT_PAIRS)
    def test_cdf_integrates_density(self, alpha, dim):
        p = ProcessParams(alpha, dim)
        part = integrate(lambda t: overshoot_density(t, 0.5, p), 0.0, 0.8, left_order=1.0 - 0.5 * alpha).value
        assert overshoot_cdf(0.8, 0.5, p) == pytest.approx(part, rel=1e-7)

    def test_cdf_incomplete_beta_form(self, transient):
        a, theta, u = transient.alpha, 0.6, 1.2
        q = math.expm1(2 * theta) / (math.exp(2 * theta) - math.exp(-2 * u))
        assert overshoot_cdf(theta, u, transient) == pytest.approx(float(betainc(1 - a / 2, a / 2, q)), rel=1e-11)

    def test_cdf_limits(self, transient):
        assert overshoot_cdf(0.0, 0.5, transient) == 0.0
        assert overshoot_cdf(math.inf, 0.5, transient) == 1.0

    def test_edge_singularity(self, transient):
        assert math.isinf(overshoot_density(0.0, 0.5, transient))

    @pytest.mark.parametrize("alpha, dim", TRANSIENT_PAIRS)
    def test_high_level_limit(self, alpha, dim):
        p = ProcessParams(alpha, dim)
        assert overshoot_density(0.5, 40.0, p) == pytest.approx(stationary_overshoot_density(0.5, p), rel=1e-12)

    def test_domain(self, transient, cauchy):
        with pytest.raises(DomainError):
            overshoot_density(0.1, 0.0, transient)
        with pytest.raises(DomainError):
            overshoot_density(-0.1, 0.5, transient)
        with pytest.raises(RegimeError):
            overshoot_density(0.1, 0.5, cauchy)


class TestUndershoot:
    @pytest.mark.parametrize("alpha, dim", TRANSIENT_PAIRS)
    @pytest.mark.parametrize("v", [-0.5, -2.0])
    def test_mass_is_infimum_tail(self, alpha, dim, v):
        p = ProcessParams(alpha, dim)
        mass = undershoot_mass(v, p)
        assert 0.0 < mass < 1.0
        assert mass == pytest.approx(1.0 - renewal_function_desc(-v, p), rel=1e-6)

    def test_deeper_level_is_less_likely(self, transient):
        assert undershoot_mass(-2.0, transient) < undershoot_mass(-0.5, transient)

    def test_domain(self, transient):
        with pytest.raises(DomainError):
            undershoot_density(0.1, 0.5, transient)
        assert math.isinf(undershoot_density(0.0, -0.5, transient))


class TestInfimum:
    @pytest.mark.parametrize("alpha, dim", TRANSIENT_PAIRS)
    @pytest.mark.parametrize("z", [0.1, 1.0, 3.0])
    def test_cdf_incomplete_beta_form(self, alpha, dim, z):
        p = ProcessParams(alpha, dim)
        oracle = float(betainc(alpha / 2, (dim - alpha) / 2, -math.expm1(-2 * z)))
        assert infimum_law(z, p, LawKind.CDF) == pytest.approx(oracle, rel=1e-10)

    def test_density_closed_form(self, transient):
        expected = math.exp(-0.5) * (math.e - 1.0) ** -0.5
        assert infimum_law(0.5, transient) == pytest.approx(expected, rel=1e-14)

    def test_origin(self, transient):
        assert infimum_law(0.0, transient, LawKind.CDF) == 0.0
        assert math.isinf(infimum_law(0.0, transient, "density"))

    def test_ordering_in_alpha(self):
        light, heavy = ProcessParams(0.5, 3), ProcessParams(1.5, 3)
        for z in np.linspace(0.05, 3.0, 12):
            assert infimum_law(z, light, LawKind.CDF) >= infimum_law(z, heavy, LawKind.CDF)

    def test_domain(self, transient):
        with pytest.raises(DomainError):
            infimum_law(-0.1, transient)


class TestPotential:
    def test_symmetry(self, hits_points):
        assert potential_density_u(0.7, 2.3, hits_points) == pytest.approx(
            potential_density_u(2.3, 0.7, hits_points), rel=1e-14)

    @pytest.mark.parametrize("c", [0.5, 3.0])
    def test_scaling(self, hits_points, c):
        a, d = hits_points.alpha, hits_points.dim
        base = potential_density_u(0.7, 2.3, hits_points)
        assert potential_density_u(0.7 * c, 2.3 * c, hits_points) == pytest.approx(c ** (a - d) * base, rel=1e-11)

    def test_diagonal_continuity(self, hits_points):
        near = potential_density_u(1.0, 1.0 + 1e-8, hits_points)
        assert near == pytest.approx(potential_density_u(1.0, 1.0, hits_points), rel=2e-3)

    def test_requires_point_hitting(self, transient):
        with pytest.raises(RegimeError, match="1 < α < d"):
            potential_density_u(1.0, 2.0, transient)


class TestPointHitting:
    @pytest.mark.parametrize("alpha, dim", [(1.5, 3), (1.2, 2), (1.8, 3)])
    @pytest.mark.parametrize("y", [-1.0, 0.5, 2.0])
    def test_potential_identity(self, alpha, dim, y):
        p = ProcessParams(alpha, dim)
        r = math.exp(y)
        lhs = hit_point_prob(y, p) * potential_density_u(r, r, p)
        assert lhs == pytest.approx(potential_density_u(1.0, r, p), rel=1e-10)

    def test_probability_range(self, hits_points):
        for y in (-3.0, -0.2, 0.2, 3.0):
            assert 0.0 < hit_point_prob(y, hits_points) < 1.0

    @pytest.mark.parametrize("alpha, dim", [(1.5, 3), (1.2, 2)])
    def test_far_limit(self, alpha, dim):
        p = ProcessParams(alpha, dim)
        limit = hit_point_const(p) / math.gamma(0.5 * dim)
        assert hit_point_prob(10.0, p) == pytest.approx(limit, rel=1e-6)

    def test_origin(self, hits_points):
        with pytest.raises(DomainError):
            hit_point_prob(0.0, hits_points)

    def test_regime(self, transient):
        with pytest.raises(RegimeError):
            hit_point_prob(0.5, transient)


class TestMultiPointHitting:
    @pytest.mark.parametrize("y", [-1.0, 0.5])
    def test_single_point(self, hits_points, y):
        prob_any, first = multi_point_hitting([math.exp(y)], 1.0, hits_points)
        assert prob_any == pytest.approx(hit_point_prob(y, hits_points), rel=1e-10)
        assert first[0] == pytest.approx(prob_any, rel=1e-12)

    def test_two_points_explicit(self, hits_points):
        x, points = 0.8, [1.0, 2.0]

        def u(p, q):
            return potential_density_u(p, q, hits_points)

        delta = u(1, 1) * u(2, 2) - u(1, 2) ** 2
        expected = (u(x, 1) * u(2, 2) + u(x, 2) * u(1, 1) - u(1, 2) * (u(x, 1) + u(x, 2))) / delta
        prob_any, first = multi_point_hitting(points, x, hits_points)
        assert prob_any == pytest.approx(expected, rel=1e-10)
        assert first.sum() == pytest.approx(prob_any, rel=1e-12)

    def test_three_points(self, hits_points):
        prob_any, first = multi_point_hitting([3.0, 0.5, 1.7], 1.0, hits_points)
        assert prob_any <= 1.0
        assert np.all(first >= -1e-12)
        assert first.sum() == pytest.approx(prob_any, rel=1e-12)

    def test_starting_on_a_point(self, hits_points):
        prob_any, first = multi_point_hitting([0.5, 1.0, 1.7], 1.0, hits_points)
        assert prob_any == pytest.approx(1.0, rel=1e-10)
        assert first[1] == pytest.approx(1.0, rel=1e-10)

    def test_points_are_sorted(self, hits_points):
        hm = HittingMatrix.build([2.0, 0.5], hits_points)
        assert hm.points.tolist() == [0.5, 2.0]
        assert np.allclose(hm.U @ hm.K, np.eye(2), atol=1e-10)

    def test_coincident_points(self, hits_points):
        with pytest.raises(SingularMatrixError):
            multi_point_hitting([1.0, 1.0], 0.5, hits_points)

    @pytest.mark.parametrize("points", [[], [-1.0, 2.0], [float("inf")]])
    def test_invalid_points(self, hits_points, points):
        with pytest.raises(DomainError):
            multi_point_hitting(points, 0.5, hits_points)


class TestTwoPointHitting:
    @pytest.mark.parametrize("v, u", [(-0.5, 0.7), (-1.5, 0.3)])
    def test_first_hits_sum(self, hits_points, v, u):
        two = two_point_hitting(v, u, hits_points)
        assert two.first_at_v + two.first_at_u == pytest.approx(two.prob_any, rel=1e-12)
        assert 0.0 < two.prob_any <= 1.0

    def test_agrees_with_matrix_form(self, hits_points):
        v, u = -0.5, 0.7
        two = two_point_hitting(v, u, hits_points)
        prob_any, first = multi_point_hitting([math.exp(v), math.exp(u)], 1.0, hits_points)
        assert two.prob_any == pytest.approx(prob_any, rel=1e-10)
        assert two.first_at_v == pytest.approx(first[0], rel=1e-10)
        assert two.first_at_u == pytest.approx(first[1], rel=1e-10)

    def test_more_likely_than_either_point(self, hits_points):
        two = two_point_hitting(-0.5, 0.7, hits_points)
        assert two.prob_any >= hit_point_prob(-0.5, hits_points)
        assert two.prob_any >= hit_point_prob(0.7, hits_points)

    def test_order(self, hits_points):
        with pytest.raises(DomainError):
            two_point_hitting(0.5, 0.7, hits_points)


class TestPotentialKernel:
    def test_matches_direct_integral(self, transient):
        def integrand(y):
            s = 0.5 + y
            return (1 - mpmath.exp(-2 * y)) ** -0.5 * mpmath.exp(-s) * (mpmath.exp(2 * s) - 1) ** -0.5

        expected = 2 / math.pi * float(mpmath.quad(integrand, [0, 0.5]))
        assert potential_kernel_r(1.0, 0.5, 1.0, transient) == pytest.approx(expected, rel=1e-8)

    def test_linear_in_constant(self, transient):
        base = potential_kernel_r(1.0, 0.5, 1.0, transient)
        assert potential_kernel_r(1.0, 0.5, 2.5, transient) == pytest.approx(2.5 * base, rel=1e-14)

    def test_boundary(self, transient):
        assert potential_kernel_r(0.0, 0.5, 1.0, transient) == 0.0
        assert potential_kernel_r(1.0, 0.0, 1.0, transient) == 0.0
        assert math.isinf(potential_kernel_r(1.0, 1.0, 1.0, transient))

    def test_diagonal_finite_above_one(self):
        p = ProcessParams(1.5, 3)
        assert math.isfinite(potential_kernel_r(1.0, 1.0, 1.0, p))

    def test_domain(self, transient):
        with pytest.raises(DomainError):
            potential_kernel_r(1.0, 0.5, 0.0, transient)
        with pytest.raises(DomainError):
            potential_kernel_r(-1.0, 0.5, 1.0, transient)


class TestExpectedExitTime:
    @pytest.mark.parametrize("alpha, dim, x", [(1.0, 3, 2.0), (0.5, 2, 1.3)])
    def test_beta_integral(self, alpha, dim, x):
        p = ProcessParams(alpha, dim)
        beta = mpmath.quad(lambda t: t ** (dim / 2 - 1) * (1 - t) ** (alpha / 2 - 1), [x ** -2, 1])
        expected = x ** alpha / (2 * math.gamma(alpha)) * float(beta)
        assert expected_sigma_minus(x, 1.0, p) == pytest.approx(expected, rel=1e-10)

    def test_increasing_in_start(self, transient):
        assert expected_sigma_minus(3.0, 1.0, transient) > expected_sigma_minus(1.5, 1.0, transient)

    def test_domain(self, transient):
        with pytest.raises(DomainError):
            expected_sigma_minus(0.9, 1.0, transient)
