# -*- coding: utf-8 -*-
from __future__ import annotations

import math

import numpy as np
import pytest

from src.errors import DomainError, RegimeError
from src.fluctuation import char_exponent_closed
from src.model import (
    FBarParams,
    LevyCharacteristics,
    ProcessParams,
    Regime,
    char_exponent_numeric,
    drift_b,
    f_bar,
    levy_density,
    levy_density_d1_split,
    levy_density_via_fbar,
    levy_tail_plus_closed,
    levy_tail_plus_numeric,
    require_hits_points,
    require_transient,
    truncation_ell,
)


class TestParams:
    @pytest.mark.parametrize(
        "alpha, dim, regime",
        [
            (1.0, 1, Regime.CAUCHY_BOUNDARY),
            (1.0, 3, Regime.STRICTLY_TRANSIENT),
            (0.5, 1, Regime.STRICTLY_TRANSIENT),
            (1.5, 2, Regime.HITS_POINTS),
            (1.5, 3, Regime.HITS_POINTS),
        ],
    )
    def test_regime(self, alpha, dim, regime):
        assert ProcessParams(alpha, dim).regime is regime

    @pytest.mark.parametrize("alpha, dim", [(1.5, 1), (0.0, 2), (2.0, 3), (float("nan"), 2), (1.0, 0), (1.0, 2.5), (1.0, True)])
    def test_rejected(self, alpha, dim):
        with pytest.raises(RegimeError):
            ProcessParams(alpha, dim)

    def test_integer_valued_dim_is_normalised(self):
        p = ProcessParams(1, 3.0)
        assert p.dim == 3 and isinstance(p.dim, int)
        assert isinstance(p.alpha, float)

    def test_gates(self, cauchy, transient, hits_points):
        require_transient(transient, "тест")
        require_hits_points(hits_points, "тест")
        with pytest.raises(RegimeError, match="α < d"):
            require_transient(cauchy, "тест")
        with pytest.raises(RegimeError, match="1 < α < d"):
            require_hits_points(transient, "тест")

    def test_gate_messages_name_the_hypothesis(self, cauchy, transient):
        with pytest.raises(RegimeError, match="гипотеза транзиентности"):
            require_transient(cauchy, "Закон перескока")
        with pytest.raises(RegimeError, match="гипотеза попадания в точки") as info:
            require_hits_points(transient, "Попадание в точку")
        assert str(info.value).startswith("Попадание в точку: ")
        assert "α=1, d=3" in str(info.value)


class TestFBar:
    def test_prefactor(self, transient):
        assert FBarParams.from_params(transient).prefactor == pytest.approx(4.0 / math.pi, rel=1e-14)

    def test_at_zero(self, transient):
        assert f_bar(0.0, transient) == pytest.approx(4.0 / math.pi, rel=1e-14)

    def test_domain(self, transient):
        with pytest.raises(DomainError):
            f_bar(1.0, transient)


class TestTruncation:
    @pytest.mark.parametrize("y", [1.0, -1.0, 2.5, -7.0])
    def test_vanishes_outside_unit_interval(self, transient, y):
        assert truncation_ell(y, transient) == 0.0

    def test_zero(self, transient):
        assert truncation_ell(0.0, transient) == 0.0

    @pytest.mark.parametrize("alpha, dim", [(0.5, 2), (1.0, 3), (1.5, 3)])
    def test_product_with_density_is_odd(self, alpha, dim):
        p = ProcessParams(alpha, dim)
        y = 0.4
        plus = truncation_ell(y, p) * levy_density(y, p)
        minus = truncation_ell(-y, p) * levy_density(-y, p)
        assert minus == pytest.approx(-plus, rel=1e-12)

    def test_small_argument_slope(self):
        p = ProcessParams(0.5, 2)
        y = 1e-6
        slope = 2.0 ** (0.5 * (p.alpha + p.dim) - 1.0)
        assert truncation_ell(y, p) / y == pytest.approx(slope, rel=1e-5)


class TestLevyDensity:
    def test_closed_form(self, transient):
        expected = 4.0 / math.pi * math.exp(-2.0) / (1.0 - math.exp(-4.0)) ** 2
        assert levy_density(2.0, transient) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("y", [0.05, 0.8, 3.0])
    def test_exchange_identity(self, y):
        p = ProcessParams(0.5, 2)
        assert levy_density(-y, p) == pytest.approx(math.exp((p.alpha - p.dim) * y) * levy_density(y, p), rel=1e-13)

    @pytest.mark.parametrize("alpha, dim", [(0.5, 2), (1.0, 3), (1.5, 3), (1.0, 1)])
    @pytest.mark.parametrize("y", [0.1, -0.3, 1.5, -4.0])
    def test_symmetric_form(self, alpha, dim, y):
        p = ProcessParams(alpha, dim)
        assert levy_density_via_fbar(y, p) == pytest.approx(levy_density(y, p), rel=1e-9)

    def test_small_jump_singularity(self, transient):
        # π(y) ~ C |y|^{−1−α} при y → 0
        ratio = levy_density(1e-4, transient) / levy_density(2e-4, transient)
        assert ratio == pytest.approx(2.0 ** (1.0 + transient.alpha), rel=1e-3)

    @pytest.mark.parametrize("y", [0.0, float("inf")])
    def test_domain(self, transient, y):
        with pytest.raises(DomainError):
            levy_density(y, transient)


class TestD1Split:
    @pytest.mark.parametrize("y", [0.7, -1.3, 0.02])
    def test_parts_sum_to_density(self, y):
        p = ProcessParams(0.5, 1)
        pi1, pi2 = levy_density_d1_split(y, p)
        assert pi1 > 0.0 and pi2 > 0.0
        assert pi1 + pi2 == pytest.approx(levy_density(y, p), rel=1e-11)

    def test_constant(self):
        p = ProcessParams(0.5, 1)
        pi1, _ = levy_density_d1_split(math.log(2.0), p)
        # при e^y = 2: π₁ = 2C
        const = 2.0 ** -0.5 * 0.5 / math.sqrt(math.pi)
        assert pi1 == pytest.approx(2.0 * const, rel=1e-13)

    def test_requires_dimension_one(self, transient):
        with pytest.raises(RegimeError):
            levy_density_d1_split(0.5, transient)


class TestTail:
    @pytest.mark.parametrize("alpha, dim", [(0.5, 2), (1.0, 3), (1.5, 3)])
    @pytest.mark.parametrize("u", [0.1, 0.5, 2.0])
    def test_closed_matches_quadrature(self, alpha, dim, u):
        p = ProcessParams(alpha, dim)
        chars = LevyCharacteristics(params=p, drift_b=0.0)
        assert levy_tail_plus_closed(u, p) == pytest.approx(levy_tail_plus_numeric(u, chars), rel=1e-8)

    def test_domain(self, transient):
        with pytest.raises(DomainError):
            levy_tail_plus_closed(0.0, transient)


class TestDrift:
    def test_cauchy_boundary(self, cauchy):
        assert drift_b(cauchy) == 0.0

    def test_sign_below_boundary(self):
        b = drift_b(ProcessParams(0.5, 2))
        assert math.isfinite(b)
        assert b < 0.0

    def test_characteristics_reject_nan(self, transient):
        with pytest.raises(DomainError):
            LevyCharacteristics(params=transient, drift_b=float("nan"))


class TestCharExponent:
    def test_origin(self, transient):
        chars = LevyCharacteristics.build(transient)
        assert char_exponent_numeric(0.0, chars) == 0j
        assert char_exponent_closed(0.0, transient) == 0j

    def test_closed_conjugate_symmetry(self, transient):
        lam = 1.7
        assert char_exponent_closed(-lam, transient) == pytest.approx(char_exponent_closed(lam, transient).conjugate(),
                                                                      rel=1e-13)

    def test_numeric_real_part_nonnegative(self, transient):
        chars = LevyCharacteristics.build(transient)
        assert char_exponent_numeric(1.0, chars).real > 0.0

    def test_numeric_proportional_to_closed(self, transient):
        chars = LevyCharacteristics.build(transient)
        ratios = [char_exponent_numeric(lam, chars) / char_exponent_closed(lam, transient) for lam in (0.7, 2.0)]
        for r in ratios:
            assert abs(r.imag) <= 1e-5 * abs(r.real)
        assert ratios[0].real == pytest.approx(ratios[1].real, rel=1e-5)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    def test_numeric_cauchy_value(self, cauchy, lam):
        # при α = d = 1 экспонента Леви–Хинчина совпадает с λ·tanh(πλ/2) без постоянного множителя
        value = char_exponent_numeric(lam, LevyCharacteristics.build(cauchy))
        assert value.real == pytest.approx(lam * math.tanh(0.5 * math.pi * lam), rel=1e-7)
        assert abs(value.imag) <= 1e-12

    def test_numeric_cauchy_at_one(self, cauchy):
        value = char_exponent_numeric(1.0, LevyCharacteristics.build(cauchy))
        assert value.real == pytest.approx(0.9171523357, abs=1e-7)

    @pytest.mark.slow
    @pytest.mark.parametrize("alpha, dim", [(0.5, 1), (1.0, 2), (1.5, 3), (0.8, 2)])
    def test_wiener_hopf_proportionality(self, alpha, dim):
        p = ProcessParams(alpha, dim)
        chars = LevyCharacteristics.build(p)
        ratios = np.array([char_exponent_numeric(lam, chars) / char_exponent_closed(lam, p)
                           for lam in (0.5, 1.0, 2.0, 4.0)])
        mean = ratios.mean()
        cv = np.sqrt(np.mean(np.abs(ratios - mean) ** 2)) / abs(mean)
        assert cv < 1e-4
