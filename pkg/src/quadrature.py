# -*- coding: utf-8 -*-
"""
Адаптивная квадратура (QUADPACK через scipy) с обработкой степенных
особенностей на концах отрезка.

Порядок особенности γ на конце означает поведение f(x) ~ (x−a)^{γ−1}.
При γ < 1 делается замена t = (x−a)^γ, после которой подынтегральная
функция ограничена.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .errors import ConvergenceError, DomainError
from .specfun import DEFAULT_PRECISION, EvalPrecision

logger = logging.getLogger(__name__)

EPS_ABS = 1e-15


@dataclass(frozen=True)
class QuadResult:
    """Значение интеграла и оценка абсолютной погрешности."""
    value: float
    abs_error: float

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(self.value + other.value, self.abs_error + other.abs_error)

    def __neg__(self) -> "QuadResult":
        return QuadResult(-self.value, self.abs_error)

    def __sub__(self, other: "QuadResult") -> "QuadResult":
        return self + (-other)

    def scaled(self, factor: float) -> "QuadResult":
        return QuadResult(self.value * factor, self.abs_error * abs(factor))


def _call_quad(func: Callable[[float], float], lower: float, upper: float,
               precision: EvalPrecision, label: str, **kwargs) -> QuadResult:
    out = quad(
        func,
        lower,
        upper,
        epsabs=EPS_ABS,
        epsrel=precision.quad_rel_tol,
        limit=precision.max_quad_subdivisions,
        full_output=1,
        **kwargs,
    )
    value, abs_error = float(out[0]), float(out[1])
    if len(out) > 3:
        logger.warning("%s: QUADPACK на [%g, %g]: %s", label or "quad", lower, upper,
                       str(out[3]).strip().splitlines()[0])
    if not math.isfinite(value):
        raise ConvergenceError(f"{label or 'Квадратура'}: значение не конечно на [{lower}, {upper}]")
    return QuadResult(value, abs_error)


def _left_mapped(func: Callable[[float], float], lower: float, order: float) -> Callable[[float], float]:
    inv = 1.0 / order

    def mapped(t: float) -> float:
        gap = t ** inv
        x = lower + gap
        if gap == 0.0 or x == lower:
            return 0.0
        return func(x) * inv * t ** (inv - 1.0)

    return mapped


def _right_mapped(func: Callable[[float], float], upper: float, order: float) -> Callable[[float], float]:
    inv = 1.0 / order

    def mapped(t: float) -> float:
        gap = t ** inv
        x = upper - gap
        if gap == 0.0 or x == upper:
            return 0.0
        return func(x) * inv * t ** (inv - 1.0)

    return mapped


def _integrate_left(func, lower, upper, order, precision, label) -> QuadResult:
    """Отрезок с особенностью только на левом конце (upper конечен)."""
    if order >= 1.0:
        return _call_quad(func, lower, upper, precision, label)
    return _call_quad(_left_mapped(func, lower, order), 0.0, (upper - lower) ** order, precision, label)


def _integrate_right(func, lower, upper, order, precision, label) -> QuadResult:
    if order >= 1.0:
        return _call_quad(func, lower, upper, precision, label)
    return _call_quad(_right_mapped(func, upper, order), 0.0, (upper - lower) ** order, precision, label)


def integrate(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    *,
    left_order: float = 1.0,
    right_order: float = 1.0,
    precision: EvalPrecision = DEFAULT_PRECISION,
    label: str = "",
) -> QuadResult:
    """
    ∫_lower^upper func(x) dx с учётом степенных особенностей на концах.

    upper может быть np.inf (тогда right_order игнорируется).
    """
    if left_order <= 0.0 or right_order <= 0.0:
        raise DomainError("Порядок особенности должен быть положительным (иначе интеграл расходится).")
    if upper == lower:
        return QuadResult(0.0, 0.0)
    if upper < lower:
        return -integrate(func, upper, lower, left_order=right_order, right_order=left_order,
                          precision=precision, label=label)

    if math.isinf(upper):
        split = lower + 1.0
        head = _integrate_left(func, lower, split, left_order, precision, label)
        return head + _call_quad(func, split, np.inf, precision, label)

    if left_order < 1.0 and right_order < 1.0:
        mid = 0.5 * (lower + upper)
        return (
            _integrate_left(func, lower, mid, left_order, precision, label)
            + _integrate_right(func, mid, upper, right_order, precision, label)
        )
    if right_order < 1.0:
        return _integrate_right(func, lower, upper, right_order, precision, label)
    return _integrate_left(func, lower, upper, left_order, precision, label)


def integrate_oscillatory(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    omega: float,
    kind: str = "cos",
    *,
    precision: EvalPrecision = DEFAULT_PRECISION,
    label: str = "",
) -> QuadResult:
    """∫ func(x)·cos(ωx) dx или ∫ func(x)·sin(ωx) dx на конечном отрезке (QAWO)."""
    if kind not in ("cos", "sin"):
        raise DomainError(f"Неизвестный осциллирующий вес: {kind}")
    if upper == lower:
        return QuadResult(0.0, 0.0)
    return _call_quad(func, lower, upper, precision, label, weight=kind, wvar=omega)
