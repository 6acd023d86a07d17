# -*- coding: utf-8 -*-
from __future__ import annotations

import cmath
import math

import mpmath
import pytest
from scipy.special import betainc

from src.errors import ConvergenceError, DomainError, PoleError
from src.specfun import (
    EvalPrecision,
    complex_gamma,
    complex_log_gamma,
    gamma_ratio,
    hyp2f1,
    hyp2f1_series,
    legendre_p,
    pochhammer,
    reg_inc_beta,
)


class TestGamma:
    def test_known_values(self):
        assert complex_gamma(1.0) == pytest.approx(1.0, rel=1e-14)
        assert complex_gamma(0.5).real == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_imaginary_unit_modulus(self):
        g = complex_gamma(1j)
        assert abs(g) ** 2 == pytest.approx(math.pi / math.sinh(math.pi), rel=1e-13)

    @pytest.mark.parametrize("z", [0.3 + 2.0j, 4.5 - 3.0j, -2.7 + 0.5j, 12.0 + 0.1j])
    def test_matches_mpmath(self, z):
        expected = complex(mpmath.gamma(mpmath.mpc(z.real, z.imag)))
        assert abs(complex_gamma(z) - expected) <= 1e-13 * abs(expected)

    def test_log_gamma_large_imaginary_part(self):
        z = 0.75 + 300.0j
        expected = float(mpmath.re(mpmath.loggamma(mpmath.mpc(z.real, z.imag))))
        assert complex_log_gamma(z).real == pytest.approx(expected, rel=1e-12)

    def test_reflection(self):
        z = 0.3 + 0.7j
        assert complex_gamma(z) * complex_gamma(1 - z) == pytest.approx(math.pi / cmath.sin(math.pi * z), rel=1e-13)

    @pytest.mark.parametrize("pole", [0.0, -1.0, -4.0])
    def test_poles(self, pole):
        with pytest.raises(PoleError):
            complex_gamma(pole)

    def test_ratio_denominator_pole_is_zero(self):
        assert gamma_ratio([1.5], [-2.0]) == 0.0

    def test_ratio_numerator_pole_raises(self):
        with pytest.raises(PoleError):
            gamma_ratio([-3.0], [1.0])

    def test_ratio_sign(self):
        # Γ(−0.5) = −2√π
        assert gamma_ratio([-0.5], [0.5]) == pytest.approx(-2.0, rel=1e-14)


class TestPochhammer:
    def test_zero_increment(self):
        assert pochhammer(3.0, 0.0) == 1.0

    def test_integer(self):
        assert pochhammer(2.0, 3.0) == pytest.approx(24.0, rel=1e-14)

    def test_fractional(self):
        assert pochhammer(0.5, 0.75) == pytest.approx(math.gamma(1.25) / math.gamma(0.5), rel=1e-14)

    def test_pole(self):
        with pytest.raises(PoleError):
            pochhammer(-1.0, 0.5)


class TestHyp2f1:
    def test_zero_argument(self):
        assert hyp2f1(0.3, 1.7, 2.2, 0.0) == 1.0

    @pytest.mark.parametrize("z", [-0.7, 0.3, 0.8, 0.97])
    def test_binomial(self, z):
        assert hyp2f1(1.0, 2.5, 2.5, z) == pytest.approx(1.0 / (1.0 - z), rel=1e-12)

    def test_log_identity(self):
        assert hyp2f1(1.0, 1.0, 2.0, 0.5) == pytest.approx(1.3862943611198906, rel=1e-13)

    def test_log_identity_near_one(self):
        # c − a − b = 0: логарифмический случай формулы связи
        z = 0.9
        assert hyp2f1(1.0, 1.0, 2.0, z) == pytest.approx(-math.log1p(-z) / z, rel=1e-12)

    def test_artanh_identity(self):
        z = 0.95
        expected = math.atanh(math.sqrt(z)) / math.sqrt(z)
        assert hyp2f1(0.5, 1.0, 1.5, z) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize(
        "a, b, c, z",
        [
            (2.0, 1.5, 1.5, 0.3),
            (0.75, 1.25, 1.5, -3.0),
            (1.25, 1.5, 1.5, 0.9),
            (2.0, 1.5, 1.5, 0.999),
            (0.6, 1.3, 0.5, 0.7),
            (1.75, 1.25, 1.0, 0.6),
        ],
    )
    def test_matches_mpmath(self, a, b, c, z):
        assert hyp2f1(a, b, c, z) == pytest.approx(float(mpmath.hyp2f1(a, b, c, z)), rel=1e-11)

    def test_one_minus_z_keeps_accuracy(self):
        w = 1e-12
        with mpmath.workdps(40):
            expected = float(mpmath.hyp2f1(1.0, 0.75, 1.5, 1 - mpmath.mpf(w)))
        assert hyp2f1(1.0, 0.75, 1.5, 1.0 - w, one_minus_z=w) == pytest.approx(expected, rel=1e-10)

    def test_series_agrees_with_transforms(self):
        for z in (-0.45, 0.35):
            assert hyp2f1(0.75, 1.25, 1.5, z) == pytest.approx(hyp2f1_series(0.75, 1.25, 1.5, z), rel=1e-13)

    def test_terminating_series(self):
        # ₂F₁(−2, b; c; z): многочлен второй степени
        b, c, z = 1.5, 2.5, 0.7
        expected = 1.0 - 2.0 * b / c * z + b * (b + 1.0) / (c * (c + 1.0)) * z * z
        assert hyp2f1(-2.0, b, c, z) == pytest.approx(expected, rel=1e-14)

    def test_pole_in_c(self):
        with pytest.raises(PoleError):
            hyp2f1(0.5, 0.5, -1.0, 0.2)

    @pytest.mark.parametrize("z", [1.0, 1.5, float("nan")])
    def test_domain(self, z):
        with pytest.raises(DomainError):
            hyp2f1(0.5, 0.5, 1.5, z)

    def test_series_divergence_region(self):
        with pytest.raises(DomainError):
            hyp2f1_series(0.5, 0.5, 1.5, 1.2)


class TestLegendre:
    def test_degree_zero(self):
        mu, z = -0.5, 2.5
        expected = ((z + 1.0) / (z - 1.0)) ** (0.5 * mu) / math.gamma(1.0 - mu)
        assert legendre_p(mu, 0.0, z) == pytest.approx(expected, rel=1e-13)

    def test_unit_argument_limit(self):
        assert legendre_p(0.0, -0.75, 1.0 + 1e-10) == pytest.approx(1.0, abs=1e-9)

    def test_matches_mpmath(self):
        expected = float(mpmath.legenp(-0.75, -0.5, 3.0, type=3))
        assert legendre_p(-0.5, -0.75, 3.0) == pytest.approx(expected, rel=1e-11)

    def test_first_degree(self):
        assert legendre_p(0.0, 1.0, 4.0) == pytest.approx(4.0, rel=1e-14)

    @pytest.mark.parametrize("z", [1.0, 0.5, -2.0])
    def test_domain(self, z):
        with pytest.raises(DomainError):
            legendre_p(0.0, -0.5, z)


class TestIncompleteBeta:
    def test_endpoints(self):
        assert reg_inc_beta(0.0, 0.7, 1.3) == 0.0
        assert reg_inc_beta(1.0, 0.7, 1.3) == 1.0

    def test_symmetric(self):
        assert reg_inc_beta(0.5, 2.0, 2.0) == pytest.approx(0.5, rel=1e-14)

    @pytest.mark.parametrize("x", [0.01, 0.2, 0.5, 0.8, 0.999])
    @pytest.mark.parametrize("p, q", [(0.5, 1.0), (0.25, 1.25), (1.5, 0.75), (3.0, 5.0)])
    def test_matches_scipy(self, x, p, q):
        assert reg_inc_beta(x, p, q) == pytest.approx(float(betainc(p, q, x)), rel=1e-11, abs=1e-15)

    def test_reflection(self):
        x, p, q = 0.3, 0.75, 2.25
        assert reg_inc_beta(x, p, q) == pytest.approx(1.0 - reg_inc_beta(1.0 - x, q, p), rel=1e-13)

    @pytest.mark.parametrize("x, p, q", [(-0.1, 1.0, 1.0), (1.1, 1.0, 1.0), (0.5, 0.0, 1.0), (0.5, 1.0, -2.0)])
    def test_domain(self, x, p, q):
        with pytest.raises(DomainError):
            reg_inc_beta(x, p, q)

    def test_continued_fraction_budget(self):
        tight = EvalPrecision(max_terms=64)
        with pytest.raises(ConvergenceError):
            reg_inc_beta(0.4999, 1e6, 1e6, tight)


class TestPrecision:
    def test_defaults(self):
        p = EvalPrecision()
        assert p.rel_tol == 1e-12
        assert p.z_switch == 0.5

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("HYPSTABLE_PRECISION", "1e-9")
        assert EvalPrecision.from_env().rel_tol == 1e-9

    def test_env_override_invalid(self, monkeypatch):
        monkeypatch.setenv("HYPSTABLE_PRECISION", "tight")
        with pytest.raises(DomainError):
            EvalPrecision.from_env()

    @pytest.mark.parametrize("kwargs", [{"rel_tol": 0.0}, {"rel_tol": 0.1}, {"z_switch": 1.0}, {"max_terms": 10}])
    def test_validation(self, kwargs):
        with pytest.raises(DomainError):
            EvalPrecision(**kwargs)

    def test_from_dict_ignores_unknown(self):
        p = EvalPrecision.from_dict({"rel_tol": 1e-10, "max_terms": "500", "colour": "blue"})
        assert p.rel_tol == 1e-10
        assert p.max_terms == 500
