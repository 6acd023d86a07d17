# -*- coding: utf-8 -*-
"""
Гипергеометрически-устойчивый процесс Леви ξ: параметры (α, d), плотность
меры Леви, функция усечения, снос и численная характеристическая экспонента.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, RegimeError
from .quadrature import QuadResult, integrate, integrate_oscillatory
from .specfun import DEFAULT_PRECISION, EvalPrecision, gamma_ratio, hyp2f1

logger = logging.getLogger(__name__)


class Regime(str, Enum):
    """Режим параметров процесса."""
    STRICTLY_TRANSIENT = "StrictlyTransient"
    CAUCHY_BOUNDARY = "CauchyBoundary"
    HITS_POINTS = "HitsPoints"


@dataclass(frozen=True)
class ProcessParams:
    """Пара (α, d), проверяемая при создании."""
    alpha: float
    dim: int

    def __post_init__(self) -> None:
        dim = self.dim
        if isinstance(dim, bool) or not float(dim).is_integer() or dim < 1:
            raise RegimeError(f"Размерность d должна быть целым числом ≥ 1, получено {dim!r}")
        object.__setattr__(self, "dim", int(dim))
        alpha = float(self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if not (math.isfinite(alpha) and 0.0 < alpha < 2.0):
            raise RegimeError(f"Индекс устойчивости α должен лежать в (0, 2), получено {alpha}")
        if alpha > self.dim:
            raise RegimeError(f"требуется α ≤ d (получено α={alpha:g}, d={self.dim})")

    @property
    def regime(self) -> Regime:
        if self.alpha == self.dim:
            return Regime.CAUCHY_BOUNDARY
        if 1.0 < self.alpha < self.dim:
            return Regime.HITS_POINTS
        return Regime.STRICTLY_TRANSIENT

    @property
    def half_dim(self) -> float:
        return 0.5 * self.dim

    def describe(self) -> str:
        return f"α={self.alpha:g}, d={self.dim}"


def require_transient(params: ProcessParams, what: str) -> None:
    """Проверка условия α < d."""
    if not params.alpha < params.dim:
        raise RegimeError(
            f"{what}: требуется α < d, гипотеза транзиентности ‖Z‖ → ∞ "
            f"(законы выхода, инфимума и лестничных высот) ({params.describe()})"
        )


def require_hits_points(params: ProcessParams, what: str) -> None:
    """Проверка условия 1 < α < d (процесс попадает в точки)."""
    if params.regime is not Regime.HITS_POINTS:
        raise RegimeError(
            f"{what}: требуется 1 < α < d, гипотеза попадания в точки "
            f"(законы попадания и потенциалы) ({params.describe()})"
        )


@dataclass(frozen=True)
class FBarParams:
    """Нормирующий множитель функции F̄."""
    prefactor: float

    @classmethod
    def from_params(cls, params: ProcessParams) -> "FBarParams":
        a, d = params.alpha, params.dim
        value = 2.0 ** a * a * gamma_ratio([0.5 * (d + a)], [0.5 * d, 1.0 - 0.5 * a])
        return cls(prefactor=value)


def f_bar(
    z: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
    *,
    one_minus_z: float | None = None,
) -> float:
    """F̄(z) = prefactor · ₂F₁((α+d)/4, (α+d)/4 + 1/2; d/2; z), |z| < 1."""
    if not abs(z) < 1.0:
        raise DomainError(f"F̄(z) определена при |z| < 1, получено z = {z}")
    a = 0.25 * (params.alpha + params.dim)
    pref = FBarParams.from_params(params).prefactor
    return pref * hyp2f1(a, a + 0.5, params.half_dim, z, precision, one_minus_z=one_minus_z)


def truncation_ell(y: float, params: ProcessParams) -> float:
    """Функция усечения ℓ(y); равна нулю при |y| ≥ 1."""
    if abs(y) >= 1.0:
        return 0.0
    expo = 0.5 * (params.alpha + params.dim) - 1.0
    return y / (1.0 + y * y) * math.exp((1.0 - params.dim) * y) * (1.0 + math.exp(2.0 * y)) ** expo


def levy_density(
    y: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """Плотность меры Леви π(y), y ≠ 0 (аргумент ₂F₁ равен e^{−2|y|})."""
    if y == 0.0 or not math.isfinite(y):
        raise DomainError(f"π(y) определена при конечном y ≠ 0, получено {y}")
    a, d = params.alpha, params.dim
    ay = abs(y)
    pref = FBarParams.from_params(params).prefactor
    hyp = hyp2f1(
        0.5 * (a + d), 0.5 * a + 1.0, 0.5 * d, math.exp(-2.0 * ay), precision,
        one_minus_z=-math.expm1(-2.0 * ay),
    )
    if y > 0.0:
        return pref * math.exp(-a * y) * hyp
    return pref * math.exp(d * y) * hyp


def levy_density_via_fbar(
    y: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """π(y) = e^{dy}(1+e^{2y})^{−(α+d)/2} F̄(1/ch²y): симметричная форма для перекрёстной проверки."""
    if y == 0.0:
        raise DomainError("π(y) не определена при y = 0")
    a, d = params.alpha, params.dim
    log_weight = d * y - 0.5 * (a + d) * float(np.logaddexp(0.0, 2.0 * y))
    sech2 = 1.0 / math.cosh(y) ** 2 if abs(y) < 350.0 else 0.0
    tanh2 = math.tanh(y) ** 2
    return math.exp(log_weight) * f_bar(sech2, params, precision, one_minus_z=tanh2)


def levy_density_d1_split(y: float, params: ProcessParams) -> tuple[float, float]:
    """Разложение π = π₁ + π₂ при d = 1: часть Ламперти-устойчивого процесса и сложный пуассоновский процесс."""
    if params.dim != 1:
        raise RegimeError(f"Разложение определено только при d = 1 ({params.describe()})")
    if y == 0.0:
        raise DomainError("π₁(y) не определена при y = 0")
    a = params.alpha
    c1 = 0.5 * FBarParams.from_params(params).prefactor
    ey = math.exp(y)
    pi1 = c1 * ey / abs(math.expm1(y)) ** (a + 1.0)
    pi2 = c1 * ey / (ey + 1.0) ** (a + 1.0)
    return pi1, pi2


def levy_tail_plus_closed(
    u: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """Хвост Π̄⁺(u) = ∫_u^∞ π(y) dy в замкнутой форме."""
    if not u > 0.0:
        raise DomainError(f"Π̄⁺(u) определена при u > 0, получено {u}")
    a, d = params.alpha, params.dim
    pref = FBarParams.from_params(params).prefactor
    hyp = hyp2f1(0.5 * (a + d), 0.5 * a, 0.5 * d, math.exp(-2.0 * u), precision,
                 one_minus_z=-math.expm1(-2.0 * u))
    return pref * math.exp(-a * u) / a * hyp


def _asymmetry(y: float, params: ProcessParams, precision: EvalPrecision) -> float:
    """π(y) − π(−y) при y > 0."""
    return levy_density(y, params, precision) * -math.expm1((params.alpha - params.dim) * y)


def _symmetric_sum(y: float, params: ProcessParams, precision: EvalPrecision) -> float:
    """π(y) + π(−y) при y > 0."""
    return levy_density(y, params, precision) * (1.0 + math.exp((params.alpha - params.dim) * y))


def drift_b(params: ProcessParams, precision: EvalPrecision = DEFAULT_PRECISION) -> float:
    """
    Снос b = ∫(ℓ(y) − y·1{|y|≤1}) π(y) dy.

    Произведение ℓ·π нечётно, поэтому в смысле главного значения
    b = −∫₀¹ y (π(y) − π(−y)) dy; при α = d интеграл равен нулю.
    """
    if params.alpha == params.dim:
        return 0.0
    res = integrate(
        lambda y: y * _asymmetry(y, params, precision),
        0.0, 1.0,
        left_order=2.0 - params.alpha,
        precision=precision,
        label="drift_b",
    )
    return -res.value


@dataclass(frozen=True)
class LevyCharacteristics:
    """Характеристики Леви: параметры, снос b и точность."""
    params: ProcessParams
    drift_b: float
    precision: EvalPrecision = DEFAULT_PRECISION

    def __post_init__(self) -> None:
        if not math.isfinite(self.drift_b):
            raise DomainError("Снос b должен быть конечным.")

    @classmethod
    def build(cls, params: ProcessParams, precision: EvalPrecision = DEFAULT_PRECISION) -> "LevyCharacteristics":
        return cls(params=params, drift_b=drift_b(params, precision), precision=precision)


def levy_tail_plus_numeric(u: float, chars: LevyCharacteristics) -> float:
    """Π̄⁺(u) квадратурой плотности π."""
    if not u > 0.0:
        raise DomainError(f"Π̄⁺(u) определена при u > 0, получено {u}")
    params, precision = chars.params, chars.precision
    return integrate(lambda y: levy_density(y, params, precision), u, np.inf,
                     precision=precision, label="levy_tail_plus").value


def _tail_cutoff(params: ProcessParams, precision: EvalPrecision) -> tuple[float, float]:
    """Граница Y, после которой хвост ∫_Y^∞ (π(y)+π(−y)) dy пренебрежимо мал, и оценка этого хвоста."""
    a, d = params.alpha, params.dim
    y_max = 8.0
    while True:
        bound = 2.0 * (levy_density(y_max, params, precision) / a + levy_density(-y_max, params, precision) / d)
        if bound <= precision.quad_rel_tol * 1e-2 or y_max > 2000.0:
            return y_max, bound
        y_max *= 1.5


def char_exponent_numeric_with_error(lam: float, chars: LevyCharacteristics) -> tuple[complex, float]:
    """Ψ(λ) по формуле Леви–Хинчина и оценка её абсолютной погрешности."""
    if lam == 0.0:
        return 0j, 0.0
    if lam < 0.0:
        value, err = char_exponent_numeric_with_error(-lam, chars)
        return value.conjugate(), err
    params, precision = chars.params, chars.precision
    y_max, tail = _tail_cutoff(params, precision)

    def small_real(y: float) -> float:
        return 2.0 * math.sin(0.5 * lam * y) ** 2 * _symmetric_sum(y, params, precision)

    def small_imag(y: float) -> float:
        x = lam * y
        if abs(x) < 1e-3:
            x2 = x * x
            diff = x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
        else:
            diff = x - math.sin(x)
        return diff * _asymmetry(y, params, precision)

    re = integrate(small_real, 0.0, 1.0, left_order=2.0 - params.alpha, precision=precision, label="Re Ψ (0,1)")
    sym = lambda y: _symmetric_sum(y, params, precision)
    re = re + integrate(sym, 1.0, y_max, precision=precision, label="Re Ψ (1,Y)")
    re = re - integrate_oscillatory(sym, 1.0, y_max, lam, "cos", precision=precision, label="Re Ψ cos")

    im = QuadResult(lam * chars.drift_b, 0.0)
    if params.alpha < params.dim:
        asym = lambda y: _asymmetry(y, params, precision)
        im = im + integrate(small_imag, 0.0, 1.0, left_order=2.0 - params.alpha, precision=precision,
                            label="Im Ψ (0,1)")
        im = im - integrate_oscillatory(asym, 1.0, y_max, lam, "sin", precision=precision, label="Im Ψ sin")

    return complex(re.value, im.value), re.abs_error + im.abs_error + tail


def char_exponent_numeric(lam: float, chars: LevyCharacteristics) -> complex:
    """Характеристическая экспонента Ψ(λ) = iλb + ∫(1 − e^{iλy} + iλy·1{|y|<1}) π(y) dy."""
    value, err = char_exponent_numeric_with_error(lam, chars)
    logger.debug("Ψ_numeric(%g) = %r ± %.2e (%s)", lam, value, err, chars.params.describe())
    return value
