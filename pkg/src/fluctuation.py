# -*- coding: utf-8 -*-
"""
Факторизация Винера–Хопфа: экспоненты лестничных процессов, замкнутая
характеристическая экспонента, плотности восстановления, хвост меры Леви
восходящего лестничного процесса и проверка тождества Виньона.

Нормировка: полная масса нисходящей меры восстановления V̂(∞) = 1.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DomainError
from .model import LevyCharacteristics, ProcessParams, levy_density, require_transient
from .quadrature import integrate
from .specfun import (
    DEFAULT_PRECISION,
    EvalPrecision,
    complex_gamma_ratio,
    complex_log_gamma,
    gamma_ratio,
    reg_inc_beta,
)

logger = logging.getLogger(__name__)

Number = Union[float, complex]


@dataclass(frozen=True)
class LadderData:
    """Константы лестничных процессов при α < d."""
    params: ProcessParams
    desc_renewal_const: float
    asc_renewal_const: float
    asc_tail_const: float

    @classmethod
    def build(cls, params: ProcessParams) -> "LadderData":
        require_transient(params, "Лестничные процессы")
        a, d = params.alpha, params.dim
        k = gamma_ratio([0.5 * d], [0.5 * (d - a), 0.5 * a])
        c_v = gamma_ratio([0.5 * (d - a)], [0.5 * d, 0.5 * a]) / 2.0 ** (a - 1.0)
        tail = 2.0 ** a * math.sin(0.5 * math.pi * a) / math.pi * gamma_ratio([0.5 * d, 0.5 * a], [0.5 * (d - a)])
        return cls(params=params, desc_renewal_const=2.0 * k, asc_renewal_const=c_v, asc_tail_const=tail)


def _is_real(lam: Number) -> bool:
    return not isinstance(lam, complex) or lam.imag == 0.0


def kappa_desc(lam: Number, params: ProcessParams) -> Number:
    """κ̂(0, λ) = Γ((d+λ)/2)Γ((d−α)/2) / (Γ(d/2)Γ((d−α+λ)/2))."""
    require_transient(params, "κ̂(0, λ)")
    a, d = params.alpha, params.dim
    if _is_real(lam):
        lam = float(lam.real if isinstance(lam, complex) else lam)
        if lam < 0.0:
            raise DomainError(f"κ̂(0, λ) вычисляется при λ ≥ 0, получено {lam}")
        return gamma_ratio([0.5 * (d + lam), 0.5 * (d - a)], [0.5 * d, 0.5 * (d - a + lam)])
    return complex_gamma_ratio([0.5 * (d + lam), 0.5 * (d - a)], [0.5 * d, 0.5 * (d - a + lam)])


def kappa_asc(lam: Number, params: ProcessParams) -> Number:
    """κ(0, λ) = 2^α Γ(d/2)Γ((λ+α)/2) / (Γ((d−α)/2)Γ(λ/2)); κ(0, 0) = 0."""
    require_transient(params, "κ(0, λ)")
    a, d = params.alpha, params.dim
    if _is_real(lam):
        lam = float(lam.real if isinstance(lam, complex) else lam)
        if lam < 0.0:
            raise DomainError(f"κ(0, λ) вычисляется при λ ≥ 0, получено {lam}")
        if lam == 0.0:
            return 0.0
        return 2.0 ** a * gamma_ratio([0.5 * d, 0.5 * (lam + a)], [0.5 * (d - a), 0.5 * lam])
    return 2.0 ** a * complex_gamma_ratio([0.5 * d, 0.5 * (lam + a)], [0.5 * (d - a), 0.5 * lam])


def char_exponent_closed(lam: float, params: ProcessParams) -> complex:
    """Ψ(λ) = 2^α Γ((α−iλ)/2)Γ((iλ+d)/2) / (Γ(−iλ/2)Γ((iλ+d−α)/2))."""
    if lam == 0.0:
        return 0j
    a, d = params.alpha, params.dim
    il = 1j * lam
    log_value = (
        complex_log_gamma(0.5 * (a - il))
        + complex_log_gamma(0.5 * (il + d))
        - complex_log_gamma(-0.5 * il)
        - complex_log_gamma(0.5 * (il + d - a))
    )
    return 2.0 ** a * cmath.exp(log_value)


def renewal_density_desc(y: float, params: ProcessParams) -> float:
    """Плотность v̂(y) нисходящей меры восстановления."""
    ladder = LadderData.build(params)
    if not y > 0.0:
        raise DomainError(f"v̂(y) определена при y > 0, получено {y}")
    a, d = params.alpha, params.dim
    return ladder.desc_renewal_const * math.exp((a - d) * y) * (-math.expm1(-2.0 * y)) ** (0.5 * a - 1.0)


def renewal_density_asc(y: float, params: ProcessParams) -> float:
    """Плотность v(y) восходящей меры восстановления."""
    ladder = LadderData.build(params)
    if not y > 0.0:
        raise DomainError(f"v(y) определена при y > 0, получено {y}")
    return ladder.asc_renewal_const * (-math.expm1(-2.0 * y)) ** (0.5 * params.alpha - 1.0)


def renewal_function_desc(
    x: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """V̂([0, x]) = I_{1−e^{−2x}}(α/2, (d−α)/2)."""
    require_transient(params, "V̂([0, x])")
    if x < 0.0:
        raise DomainError(f"V̂([0, x]) определена при x ≥ 0, получено {x}")
    if x == 0.0:
        return 0.0
    a, d = params.alpha, params.dim
    return reg_inc_beta(-math.expm1(-2.0 * x), 0.5 * a, 0.5 * (d - a), precision,
                        one_minus_x=math.exp(-2.0 * x))


def renewal_laplace_transform(
    lam: float,
    params: ProcessParams,
    side: str = "desc",
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """∫₀^∞ e^{−λy} v(y) dy численно; side ∈ {"asc", "desc"}."""
    if side == "desc":
        density = renewal_density_desc
    elif side == "asc":
        density = renewal_density_asc
    else:
        raise DomainError(f"Неизвестная сторона: {side}")
    if not lam > 0.0:
        raise DomainError(f"Преобразование Лапласа вычисляется при λ > 0, получено {lam}")
    res = integrate(
        lambda y: math.exp(-lam * y) * density(y, params),
        0.0, np.inf,
        left_order=0.5 * params.alpha,
        precision=precision,
        label=f"LT v_{side}",
    )
    return res.value


def ladder_mean_asc(params: ProcessParams) -> float:
    """E H₁ = κ'(0+) = 2^{α−1}Γ(d/2)Γ(α/2)/Γ((d−α)/2)."""
    require_transient(params, "E H₁")
    a, d = params.alpha, params.dim
    return 2.0 ** (a - 1.0) * gamma_ratio([0.5 * d, 0.5 * a], [0.5 * (d - a)])


def ladder_levy_tail_asc(x: float, params: ProcessParams) -> float:
    """Хвост Π̄_H(x) меры Леви восходящего лестничного процесса."""
    ladder = LadderData.build(params)
    if not x > 0.0:
        raise DomainError(f"Π̄_H(x) определена при x > 0, получено {x}")
    a = params.alpha
    return ladder.asc_tail_const * math.exp(-a * x) * (-math.expm1(-2.0 * x)) ** (-0.5 * a)


def stationary_overshoot_density(theta: float, params: ProcessParams) -> float:
    """Предельная (при уровне → ∞) плотность перескока: Π̄_H(θ)/E H₁."""
    if not theta > 0.0:
        raise DomainError(f"θ должно быть положительным, получено {theta}")
    a = params.alpha
    require_transient(params, "Стационарный перескок")
    return 2.0 / math.pi * math.sin(0.5 * math.pi * a) * math.expm1(2.0 * theta) ** (-0.5 * a)


def _plus_tail_spline(r: float, chars: LevyCharacteristics, n_points: int) -> tuple[CubicSpline, float]:
    """Π̄⁺ на логарифмической сетке [r, U] и сплайн в координатах (log u, log Π̄⁺)."""
    params, precision = chars.params, chars.precision
    a = params.alpha
    upper = r + 40.0 / a
    grid = np.geomspace(r, upper, n_points)
    tail = np.empty(n_points)
    tail[-1] = levy_density(upper, params, precision) / a
    for i in range(n_points - 2, -1, -1):
        seg = integrate(lambda y: levy_density(y, params, precision), grid[i], grid[i + 1],
                        precision=precision, label="Π̄⁺ segment")
        tail[i] = tail[i + 1] + seg.value
    return CubicSpline(np.log(grid), np.log(tail)), upper


def vigon_tail_numeric(
    r: float,
    chars: LevyCharacteristics,
    *,
    tol: float = 1e-7,
    start_points: int = 200,
    max_points: int = 3200,
) -> float:
    """
    Правая часть тождества Виньона ∫₀^∞ V̂(dl) Π̄⁺(l+r).

    Внутренний хвост Π̄⁺ табулируется на логарифмической сетке и
    интерполируется; сетка удваивается, пока результат не стабилизируется.
    """
    params, precision = chars.params, chars.precision
    require_transient(params, "Тождество Виньона")
    if not r > 0.0:
        raise DomainError(f"r должно быть положительным, получено {r}")

    def evaluate(n_points: int) -> float:
        spline, upper = _plus_tail_spline(r, chars, n_points)

        def integrand(l: float) -> float:
            return renewal_density_desc(l, params) * math.exp(float(spline(math.log(l + r))))

        return integrate(integrand, 0.0, upper - r, left_order=0.5 * params.alpha,
                         precision=precision, label="Виньон").value

    n_points = start_points
    previous = evaluate(n_points)
    while n_points < max_points:
        n_points *= 2
        current = evaluate(n_points)
        if abs(current - previous) <= tol * abs(current):
            return current
        previous = current
    logger.warning("Тождество Виньона: сетка из %d точек не дала точности %.1e при r=%g", n_points, tol, r)
    return previous
