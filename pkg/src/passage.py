# -*- coding: utf-8 -*-
"""
Законы прохождения: выход из шара, перескок и недоскок, глобальный
инфимум, попадание в точки (одна, две, n точек), тройной и четверной
законы, потенциальные ядра.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.interpolate import CubicSpline
from scipy.integrate import trapezoid
from scipy.special import betaln

from .errors import DomainError, SingularMatrixError
from .fluctuation import (
    LadderData,
    renewal_density_asc,
    renewal_density_desc,
    renewal_function_desc,
)
from .model import (
    FBarParams,
    ProcessParams,
    levy_density,
    levy_tail_plus_closed,
    require_hits_points,
    require_transient,
)
from .quadrature import integrate
from .specfun import (
    DEFAULT_PRECISION,
    EvalPrecision,
    gamma_ratio,
    hyp2f1,
    legendre_p,
    reg_inc_beta,
)

logger = logging.getLogger(__name__)

MASS_TOL = 1e-3
CDF_TOL = 1e-12
COND_WARN = 1e12
POINT_REL_GAP = 1e-9


class LawKind(str, Enum):
    DENSITY = "density"
    CDF = "cdf"


@dataclass(frozen=True)
class DistributionTable:
    """Табулированный закон: сетка, значения плотности или ФР, полная масса."""
    grid: np.ndarray
    values: np.ndarray
    kind: LawKind
    total_mass: float

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise DomainError("Сетка и значения должны быть одномерными массивами одной длины.")
        if grid.size > 1 and not np.all(np.diff(grid) > 0):
            raise DomainError("Сетка должна строго возрастать.")
        finite = values[np.isfinite(values)]
        if self.kind is LawKind.DENSITY:
            if np.any(finite < 0):
                raise DomainError("Плотность принимает отрицательные значения.")
        else:
            if np.any(finite < -CDF_TOL) or np.any(finite > 1 + CDF_TOL):
                raise DomainError("Функция распределения вне [0, 1].")
            if finite.size > 1 and np.any(np.diff(finite) < -CDF_TOL):
                raise DomainError("Функция распределения убывает.")
        if self.total_mass > 1.0 + MASS_TOL:
            logger.warning("Полная масса %.6g превышает 1 (грубая сетка или особенность на краю)", self.total_mass)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"abscissa": self.grid, "value": self.values})


def tabulate(
    func: Callable[[float], float],
    grid: Sequence[float],
    kind: LawKind,
    *,
    probability: bool = True,
) -> DistributionTable:
    """
    Вычисляет закон на сетке и собирает DistributionTable.

    Для величин, не являющихся вероятностными законами (мера Леви, потенциал),
    probability=False и полная масса не вычисляется (NaN).
    """
    grid = np.asarray(grid, dtype=float)
    values = np.array([func(float(x)) for x in grid], dtype=float)
    if not probability:
        mass = math.nan
    elif grid.size == 0:
        mass = 0.0
    elif kind is LawKind.DENSITY:
        finite = np.isfinite(values)
        mass = float(trapezoid(values[finite], grid[finite])) if finite.sum() > 1 else 0.0
    else:
        mass = float(np.nanmax(values))
    return DistributionTable(grid=grid, values=values, kind=kind, total_mass=mass)


# ---------------------------------------------------------------------------
# Выход из единичного шара
# ---------------------------------------------------------------------------

def blumenthal_exit_density(y: Sequence[float], z: Sequence[float], params: ProcessParams) -> float:
    """Плотность точки выхода z при старте из y (ровно одна из точек внутри единичного шара)."""
    require_transient(params, "Плотность выхода из шара")
    y = np.asarray(y, dtype=float).reshape(-1)
    z = np.asarray(z, dtype=float).reshape(-1)
    d = params.dim
    if y.size != d or z.size != d:
        raise DomainError(f"Точки должны иметь размерность d = {d}")
    ny2 = float(y @ y)
    nz2 = float(z @ z)
    if ny2 == 1.0 or nz2 == 1.0 or (ny2 < 1.0) == (nz2 < 1.0):
        raise DomainError("Ровно одна из точек должна лежать строго внутри единичного шара.")
    a = params.alpha
    const = math.pi ** (-(0.5 * d + 1.0)) * math.gamma(0.5 * d) * math.sin(0.5 * math.pi * a)
    dist = float(np.linalg.norm(y - z))
    return const * abs(1.0 - ny2) ** (0.5 * a) * abs(1.0 - nz2) ** (-0.5 * a) * dist ** (-d)


def exit_radial_marginal(
    rho: float,
    start_norm: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """Радиальная плотность выхода: интеграл плотности выхода по сфере радиуса rho."""
    d = params.dim
    if (rho < 1.0) == (start_norm < 1.0) or rho == 1.0 or start_norm == 1.0:
        raise DomainError("Радиусы старта и выхода должны лежать по разные стороны единичной сферы.")
    y = np.zeros(d)
    y[0] = start_norm
    if d == 1:
        return blumenthal_exit_density(y, [rho], params) + blumenthal_exit_density(y, [-rho], params)

    def on_sphere(phi: float) -> float:
        z = np.zeros(d)
        z[0] = rho * math.cos(phi)
        z[1] = rho * math.sin(phi)
        return blumenthal_exit_density(y, z, params) * math.sin(phi) ** (d - 2)

    # площадь единичной сферы S^{d−2}
    sphere = 2.0 * math.pi ** (0.5 * (d - 1)) / math.gamma(0.5 * (d - 1))
    angular = integrate(on_sphere, 0.0, math.pi, precision=precision, label="exit sphere").value
    return sphere * rho ** (d - 1) * angular


# ---------------------------------------------------------------------------
# Перескок, недоскок, инфимум
# ---------------------------------------------------------------------------

def _exit_const(params: ProcessParams) -> float:
    return 2.0 / math.pi * math.sin(0.5 * math.pi * params.alpha)


def overshoot_density(theta: float, u: float, params: ProcessParams) -> float:
    """Плотность перескока ξ_{T_u⁺} − u над уровнем u > 0."""
    require_transient(params, "Закон перескока")
    if not u > 0.0:
        raise DomainError(f"Уровень u должен быть положительным, получено {u}")
    if theta < 0.0:
        raise DomainError(f"θ должно быть неотрицательным, получено {theta}")
    if theta == 0.0:
        return math.inf
    a = params.alpha
    return (
        _exit_const(params)
        * (-math.expm1(-2.0 * u)) ** (0.5 * a)
        * math.exp(-a * theta) * (-math.expm1(-2.0 * theta)) ** (-0.5 * a)
        / -math.expm1(-2.0 * (theta + u))
    )


def overshoot_cdf(
    theta: float,
    u: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """Функция распределения перескока: I_q(1−α/2, α/2), q = (e^{2θ}−1)/(e^{2θ}−e^{−2u})."""
    require_transient(params, "Закон перескока")
    if not u > 0.0:
        raise DomainError(f"Уровень u должен быть положительным, получено {u}")
    if theta <= 0.0:
        return 0.0
    if math.isinf(theta):
        return 1.0
    num = math.expm1(2.0 * theta)
    gap = -math.expm1(-2.0 * u)
    den = num + gap
    a = params.alpha
    return reg_inc_beta(num / den, 1.0 - 0.5 * a, 0.5 * a, precision, one_minus_x=gap / den)


def undershoot_density(theta: float, v: float, params: ProcessParams) -> float:
    """Дефектная плотность недоскока под уровень v < 0."""
    require_transient(params, "Закон недоскока")
    if not v < 0.0:
        raise DomainError(f"Уровень v должен быть отрицательным, получено {v}")
    if theta < 0.0:
        raise DomainError(f"θ должно быть неотрицательным, получено {theta}")
    if theta == 0.0:
        return math.inf
    a, d = params.alpha, params.dim
    return (
        _exit_const(params)
        * math.exp(d * (v - theta))
        * math.expm1(-2.0 * v) ** (0.5 * a)
        * (-math.expm1(-2.0 * theta)) ** (-0.5 * a)
        / -math.expm1(2.0 * (v - theta))
    )


def undershoot_mass(v: float, params: ProcessParams, precision: EvalPrecision = DEFAULT_PRECISION) -> float:
    """P(T_v⁻ < ∞) как интеграл плотности недоскока."""
    return integrate(lambda t: undershoot_density(t, v, params), 0.0, np.inf,
                     left_order=1.0 - 0.5 * params.alpha, precision=precision,
                     label="undershoot mass").value


def infimum_law(
    z: float,
    params: ProcessParams,
    kind: LawKind = LawKind.DENSITY,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """Закон −ξ̲_∞: плотность или функция распределения."""
    require_transient(params, "Закон инфимума")
    if z < 0.0:
        raise DomainError(f"z должно быть неотрицательным, получено {z}")
    kind = LawKind(kind)
    if kind is LawKind.CDF:
        return renewal_function_desc(z, params, precision)
    if z == 0.0:
        return math.inf
    return renewal_density_desc(z, params)


# ---------------------------------------------------------------------------
# Потенциал радиального процесса и попадание в точки
# ---------------------------------------------------------------------------

def _potential_offdiag_const(params: ProcessParams) -> float:
    a, d = params.alpha, params.dim
    return 2.0 ** (0.5 * d - a) * gamma_ratio([0.5 * d, 0.5 * (d - a)], [0.5 * a])


def _potential_diag_const(params: ProcessParams) -> float:
    a, d = params.alpha, params.dim
    return (
        math.pi ** -0.5 * 2.0 ** (0.5 * d - 2.0)
        * gamma_ratio([0.5 * (a - 1.0)], [0.5 * (a + d) - 1.0])
        * gamma_ratio([0.5 * d, 0.5 * (d - a)], [0.5 * a])
    )


def hit_point_const(params: ProcessParams) -> float:
    """2^{2−α} π^{1/2} Γ((d+α)/2 − 1) / Γ((α−1)/2)."""
    a, d = params.alpha, params.dim
    return 2.0 ** (2.0 - a) * math.sqrt(math.pi) * gamma_ratio([0.5 * (d + a) - 1.0], [0.5 * (a - 1.0)])


def potential_density_u(
    x: float,
    y: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """Плотность потенциала u(x, y) радиального процесса."""
    require_hits_points(params, "Плотность потенциала")
    if not (x > 0.0 and y > 0.0):
        raise DomainError(f"u(x, y) определена при x, y > 0, получено ({x}, {y})")
    a, d = params.alpha, params.dim
    if x == y:
        return _potential_diag_const(params) * x ** (a - d)
    diff = abs(x * x - y * y)
    arg = (x * x + y * y) / diff
    return (
        _potential_offdiag_const(params)
        * (x * y) ** (1.0 - 0.5 * d)
        * diff ** (0.5 * a - 1.0)
        * legendre_p(1.0 - 0.5 * d, -0.5 * a, arg, precision)
    )


def hit_point_prob(y: float, params: ProcessParams, precision: EvalPrecision = DEFAULT_PRECISION) -> float:
    """P(T_y < ∞) для точки y ≠ 0."""
    require_hits_points(params, "Попадание в точку")
    if y == 0.0:
        raise DomainError("Вероятность попадания в точку y = 0 не определена формулой.")
    d, a = params.dim, params.alpha
    e2y = math.exp(2.0 * y)
    arg = (1.0 + e2y) / abs(math.expm1(2.0 * y))
    return (
        hit_point_const(params)
        * math.exp((0.5 * d - 1.0) * y)
        * abs(math.expm1(-2.0 * y)) ** (0.5 * a - 1.0)
        * legendre_p(1.0 - 0.5 * d, -0.5 * a, arg, precision)
    )


@dataclass(frozen=True)
class HittingMatrix:
    """Матрица потенциалов U = [u(rᵢ, rⱼ)] и обратная к ней K_B."""
    points: np.ndarray
    U: np.ndarray
    K: np.ndarray

    @classmethod
    def build(
        cls,
        points: Sequence[float],
        params: ProcessParams,
        precision: EvalPrecision = DEFAULT_PRECISION,
    ) -> "HittingMatrix":
        require_hits_points(params, "Попадание в множество точек")
        pts = np.sort(np.asarray(points, dtype=float).reshape(-1))
        if pts.size == 0:
            raise DomainError("Множество точек пусто.")
        if np.any(pts <= 0) or not np.all(np.isfinite(pts)):
            raise DomainError("Точки должны быть положительными и конечными.")
        if pts.size > 1 and np.any(np.diff(pts) <= POINT_REL_GAP * pts[1:]):
            raise SingularMatrixError("Точки совпадают в пределах допуска: матрица U вырождена.")
        n = pts.size
        U = np.empty((n, n))
        for i in range(n):
            for j in range(i, n):
                U[i, j] = U[j, i] = potential_density_u(pts[i], pts[j], params, precision)
        cond = float(np.linalg.cond(U))
        if not math.isfinite(cond):
            raise SingularMatrixError("Матрица U вырождена.")
        if cond > COND_WARN:
            logger.warning("Матрица U плохо обусловлена: cond = %.3e", cond)
        K = np.linalg.solve(U, np.eye(n))
        K = 0.5 * (K + K.T)
        return cls(points=pts, U=U, K=K)


def multi_point_hitting(
    points: Sequence[float],
    x: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> Tuple[float, np.ndarray]:
    """
    Вероятность попадания радиального процесса из ‖z‖ = x в множество B
    и вероятности первого попадания в каждую точку (в порядке возрастания точек).
    """
    if not x > 0.0:
        raise DomainError(f"Начальная норма должна быть положительной, получено {x}")
    hm = HittingMatrix.build(points, params, precision)
    u_vec = np.array([potential_density_u(x, r, params, precision) for r in hm.points])
    first_hit = u_vec @ hm.K
    prob_any = float(np.sum(hm.K @ u_vec))
    return prob_any, first_hit


@dataclass(frozen=True)
class TwoPointHitting:
    """Попадание ξ в {v, u}: вероятность попадания и вероятности первого попадания."""
    prob_any: float
    first_at_v: float
    first_at_u: float


def two_point_hitting(
    v: float,
    u: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> TwoPointHitting:
    """Попадание ξ (старт в 0) в двухточечное множество {v, u}, v < 0 < u."""
    require_hits_points(params, "Попадание в две точки")
    if not (v < 0.0 < u):
        raise DomainError(f"Требуется v < 0 < u, получено v={v}, u={u}")
    a, b = math.exp(v), math.exp(u)

    def pot(p: float, q: float) -> float:
        return potential_density_u(p, q, params, precision)

    u1a, u1b = pot(1.0, a), pot(1.0, b)
    uaa, ubb, uab = pot(a, a), pot(b, b), pot(a, b)
    delta = uaa * ubb - uab * uab
    if delta <= 0.0:
        raise SingularMatrixError("Определитель матрицы потенциалов неположителен.")
    prob_any = (u1a * ubb + u1b * uaa) / delta - uab * (u1a + u1b) / delta

    def first(x_a: float, x_b: float, aa: float, bb: float, ab: float) -> float:
        # f(x, a, b) = (u(x,a)/u(b,a) − u(x,b)/u(b,b)) / (u(a,a)/u(b,a) − u(a,b)/u(b,b))
        return (x_a / ab - x_b / bb) / (aa / ab - ab / bb)

    return TwoPointHitting(
        prob_any=prob_any,
        first_at_v=first(u1a, u1b, uaa, ubb, uab),
        first_at_u=first(u1b, u1a, ubb, uaa, uab),
    )


# ---------------------------------------------------------------------------
# Тройной закон в момент первого прохождения
# ---------------------------------------------------------------------------

def _triple_const(params: ProcessParams) -> float:
    a, d = params.alpha, params.dim
    return (
        4.0 * a * gamma_ratio([0.5 * (a + d)], [0.5 * d, 0.5 * a])
        * math.sin(0.5 * a * math.pi) / math.pi
    )


def triple_law_first_passage(
    u: float,
    v: float,
    y: float,
    x: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """
    Совместная плотность (ξ_{T_x⁺} − x, x − ξ_{T_x⁺−}, x − sup ξ до T_x⁺)
    в точке (u, v, y); область: y ∈ [0, x], v ≥ y, u > 0.
    """
    require_transient(params, "Тройной закон")
    if not (x > 0.0 and 0.0 <= y <= x and v >= y and u > 0.0):
        raise DomainError(f"Аргументы вне области тройного закона: u={u}, v={v}, y={y}, x={x}")
    if y == x or v == y:
        return math.inf
    a, d = params.alpha, params.dim
    hyp = hyp2f1(0.5 * (a + d), 0.5 * a + 1.0, 0.5 * d, math.exp(-2.0 * (u + v)), precision,
                 one_minus_z=-math.expm1(-2.0 * (u + v)))
    return (
        _triple_const(params)
        * (-math.expm1(-2.0 * (x - y))) ** (0.5 * a - 1.0)
        * math.exp((2.0 - d) * (v - y)) * math.expm1(2.0 * (v - y)) ** (0.5 * a - 1.0)
        * math.exp(-a * (u + v)) * hyp
    )


def triple_law_radial(
    z: float,
    w: float,
    theta: float,
    x: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """
    Радиальный тройной закон при старте из ‖·‖ = x < 1: совместная плотность
    (sup R до σ₁⁺, R_{σ₁⁺−}, R_{σ₁⁺}) в точке (z, w, θ), z ∈ [x, 1], w ∈ (0, z], θ > 1.
    """
    if not (0.0 < x < 1.0 and x <= z <= 1.0 and 0.0 < w <= z and theta > 1.0):
        raise DomainError(f"Аргументы вне области радиального тройного закона: z={z}, w={w}, θ={theta}, x={x}")
    value = triple_law_first_passage(math.log(theta), -math.log(w), -math.log(z), -math.log(x), params, precision)
    return value / (z * w * theta)


def _renewal_convolution_inner(s: float, params: ProcessParams, precision: EvalPrecision,
                               kernel: Callable[[float], float]) -> float:
    """∫₀^∞ v̂(l) kernel(s + l) dl."""
    return integrate(lambda l: renewal_density_desc(l, params) * kernel(s + l), 0.0, np.inf,
                     left_order=0.5 * params.alpha, precision=precision, label="v̂ convolution").value


def _triple_product_const(params: ProcessParams) -> float:
    """Отношение константы тройного закона к произведению констант v, v̂ и π (равно 1)."""
    ladder = LadderData.build(params)
    pref = FBarParams.from_params(params).prefactor
    return _triple_const(params) / (ladder.asc_renewal_const * ladder.desc_renewal_const * pref)


def triple_law_marginal_overshoot(
    u: float,
    x: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """Маргинал тройного закона по (v, y): должен совпадать с плотностью перескока над x."""
    require_transient(params, "Тройной закон")
    if not (u > 0.0 and x > 0.0):
        raise DomainError(f"Требуется u > 0 и x > 0, получено u={u}, x={x}")

    def jump(s: float) -> float:
        return levy_density(s, params, precision)

    def outer(y: float) -> float:
        return renewal_density_asc(x - y, params) * _renewal_convolution_inner(u + y, params, precision, jump)

    res = integrate(outer, 0.0, x, right_order=0.5 * params.alpha, precision=precision, label="triple marginal")
    return _triple_product_const(params) * res.value


def triple_law_total_mass(x: float, params: ProcessParams, precision: EvalPrecision = DEFAULT_PRECISION) -> float:
    """Полная масса тройного закона (интегрирование по u выполнено через Π̄⁺)."""
    require_transient(params, "Тройной закон")
    if not x > 0.0:
        raise DomainError(f"Уровень x должен быть положительным, получено {x}")
    a = params.alpha

    def tail(s: float) -> float:
        return levy_tail_plus_closed(s, params, precision)

    def outer(y: float) -> float:
        return renewal_density_asc(x - y, params) * _renewal_convolution_inner(y, params, precision, tail)

    res = integrate(outer, 0.0, x, left_order=1.0 - 0.5 * a, right_order=0.5 * a,
                    precision=precision, label="triple mass")
    return _triple_product_const(params) * res.value


# ---------------------------------------------------------------------------
# Четверной закон в момент последнего прохождения
# ---------------------------------------------------------------------------

def _quadruple_const(params: ProcessParams) -> float:
    a, d = params.alpha, params.dim
    return (
        8.0 * a * gamma_ratio([0.5 * (a + d)], [0.5 * (d - a), 0.5 * a, 0.5 * a])
        * math.sin(0.5 * a * math.pi) / math.pi
    )


def quadruple_law_last_passage(
    v: float,
    u: float,
    y: float,
    w: float,
    x: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """
    Совместная плотность (−J₀, J_{U_x} − x, x − ξ_{U_x−}, ξ_{U_x} − x) в точке (v, u, y, w);
    область: v > 0, 0 ≤ y < x + v, 0 ≤ u ≤ w.
    """
    require_transient(params, "Четверной закон")
    if not (x > 0.0 and v > 0.0 and 0.0 <= y < x + v and 0.0 <= u <= w):
        raise DomainError(f"Аргументы вне области четверного закона: v={v}, u={u}, y={y}, w={w}, x={x}")
    if u == w or w + y == 0.0:
        return math.inf
    a, d = params.alpha, params.dim
    hyp = hyp2f1(0.5 * (a + d), 0.5 * a + 1.0, 0.5 * d, math.exp(-2.0 * (w + y)), precision,
                 one_minus_z=-math.expm1(-2.0 * (w + y)))
    return (
        _quadruple_const(params)
        * math.exp((2.0 - d) * (v + w - u))
        * math.expm1(2.0 * v) ** (0.5 * a - 1.0)
        * math.expm1(2.0 * (w - u)) ** (0.5 * a - 1.0)
        * (-math.expm1(-2.0 * (x + v - y))) ** (0.5 * a - 1.0)
        * math.exp(-a * (w + y)) * hyp
    )


def quadruple_law_radial(
    v: float,
    y: float,
    w: float,
    u: float,
    x: float,
    b: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """
    Радиальный четверной закон при старте из ‖·‖ = x и уровне b > x:
    совместная плотность (1/F₀, R_{L_b−}, R_{L_b}, F_{L_b}) в точке (v, y, w, u).
    """
    if not (0.0 < x < b):
        raise DomainError(f"Требуется 0 < x < b, получено x={x}, b={b}")
    if not (v > 1.0 / x and 1.0 / v < y <= b and b <= u <= w):
        raise DomainError(f"Аргументы вне области радиального четверного закона: v={v}, y={y}, w={w}, u={u}")
    value = quadruple_law_last_passage(
        math.log(x * v), math.log(u / b), math.log(b / y), math.log(w / b), math.log(b / x), params, precision
    )
    return value / (v * y * w * u)


@lru_cache(maxsize=32)
def _last_passage_kernel(params: ProcessParams, precision: EvalPrecision, y_max: float) -> Callable[[float], float]:
    """
    G(y) = ∫₀^∞ V̂([0, w]) π(w + y) dw, табулированная на логарифмической сетке
    (при y → 0 G(y) ~ y^{−α/2}).
    """
    a = params.alpha
    y_min = 1e-8
    grid = np.geomspace(y_min, y_max, 240)
    far = 60.0 / a

    def g_at(y: float) -> float:
        near = integrate(lambda w: renewal_function_desc(w, params, precision) * levy_density(w + y, params, precision),
                         0.0, y, precision=precision, label="G near").value
        # замена w = e^s на [y, y + far]
        tail = integrate(
            lambda s: renewal_function_desc(math.exp(s), params, precision)
            * levy_density(math.exp(s) + y, params, precision) * math.exp(s),
            math.log(y), math.log(y + far),
            precision=precision, label="G tail",
        ).value
        return near + tail

    log_g = np.log([g_at(float(y)) for y in grid])
    spline = CubicSpline(np.log(grid), log_g)
    slope_hi = (log_g[-1] - log_g[-2]) / (grid[-1] - grid[-2])

    def kernel(y: float) -> float:
        if y < y_min:
            return math.exp(log_g[0]) * (y / y_min) ** (-0.5 * a)
        if y > y_max:
            return math.exp(log_g[-1] + slope_hi * (y - y_max))
        return math.exp(float(spline(math.log(y))))

    return kernel


def _v_horizon(params: ProcessParams) -> float:
    """Граница, за которой масса v̂ пренебрежимо мала (e^{−(d−α)v} < 1e−12)."""
    return 28.0 / (params.dim - params.alpha)


def _last_passage_level_factor(level: float, params: ProcessParams, precision: EvalPrecision,
                               kernel: Callable[[float], float]) -> float:
    """∫₀^L v(L − y) G(y) dy."""
    a = params.alpha
    return integrate(lambda y: renewal_density_asc(level - y, params) * kernel(y), 0.0, level,
                     left_order=1.0 - 0.5 * a, right_order=0.5 * a, precision=precision,
                     label="last passage level").value


def _quadruple_product_const(params: ProcessParams) -> float:
    """Отношение константы четверного закона к произведению констант v̂, v, v̂ и π (равно 1)."""
    ladder = LadderData.build(params)
    pref = FBarParams.from_params(params).prefactor
    return _quadruple_const(params) / (ladder.desc_renewal_const ** 2 * ladder.asc_renewal_const * pref)


def quadruple_law_v_marginal(
    v: float,
    x: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """Маргинал четверного закона по −J₀ (интегрирование по u, y, w)."""
    require_transient(params, "Четверной закон")
    if not (v > 0.0 and x > 0.0):
        raise DomainError(f"Требуется v > 0 и x > 0, получено v={v}, x={x}")
    y_max = round(max(x + _v_horizon(params), x + v) + 1.0, 6)
    kernel = _last_passage_kernel(params, precision, y_max)
    factor = _last_passage_level_factor(x + v, params, precision, kernel)
    return _quadruple_product_const(params) * renewal_density_desc(v, params) * factor


def quadruple_law_total_mass(x: float, params: ProcessParams, precision: EvalPrecision = DEFAULT_PRECISION) -> float:
    """Полная масса четверного закона."""
    require_transient(params, "Четверной закон")
    if not x > 0.0:
        raise DomainError(f"Уровень x должен быть положительным, получено {x}")
    horizon = _v_horizon(params)
    return integrate(
        lambda v: quadruple_law_v_marginal(v, x, params, precision),
        0.0, horizon,
        left_order=0.5 * params.alpha,
        precision=precision,
        label="quadruple mass",
    ).value


# ---------------------------------------------------------------------------
# Потенциальные ядра
# ---------------------------------------------------------------------------

def potential_kernel_r(
    x: float,
    u: float,
    k: float,
    params: ProcessParams,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """Плотность потенциала r(x, u) процесса ξ, убиваемого при входе в (−∞, 0); k — неизвестная константа."""
    require_transient(params, "Потенциальное ядро")
    if x < 0.0 or u < 0.0:
        raise DomainError(f"Требуется x, u ≥ 0, получено x={x}, u={u}")
    if not k > 0.0:
        raise DomainError(f"Константа k должна быть положительной, получено {k}")
    if x == 0.0 or u == 0.0:
        return 0.0
    a, d = params.alpha, params.dim
    if u == x and a <= 1.0:
        return math.inf
    lower = max(u - x, 0.0)
    const = k * 2.0 ** (2.0 - a) * gamma_ratio([], [0.5 * a, 0.5 * a])

    def integrand(y: float) -> float:
        s = x + y - u
        return (
            (-math.expm1(-2.0 * y)) ** (0.5 * a - 1.0)
            * math.exp((2.0 - d) * s) * math.expm1(2.0 * s) ** (0.5 * a - 1.0)
        )

    order = a - 1.0 if u == x else 0.5 * a
    return const * integrate(integrand, lower, u, left_order=order, precision=precision,
                             label="potential kernel").value


def expected_sigma_minus(x: float, k: float, params: ProcessParams, precision: EvalPrecision = DEFAULT_PRECISION) -> float:
    """E_x(σ₁⁻) = k x^α/(2Γ(α)) · B(d/2, α/2) · (1 − I_{x^{−2}}(d/2, α/2))."""
    require_transient(params, "E_x(σ₁⁻)")
    if not x > 1.0:
        raise DomainError(f"Требуется x > 1, получено {x}")
    if not k > 0.0:
        raise DomainError(f"Константа k должна быть положительной, получено {k}")
    a, d = params.alpha, params.dim
    beta_part = math.exp(betaln(0.5 * d, 0.5 * a)) * (1.0 - reg_inc_beta(x ** -2.0, 0.5 * d, 0.5 * a, precision))
    return k * x ** a / (2.0 * math.gamma(a)) * beta_part
