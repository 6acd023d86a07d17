# -*- coding: utf-8 -*-
"""
Ядра специальных функций: комплексная гамма-функция, символ Похгаммера,
гипергеометрическая функция Гаусса ₂F₁, функция Лежандра первого рода
и регуляризованная неполная бета-функция.

Все функции чистые и потокобезопасные; точность задаётся EvalPrecision.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Iterable, Optional

from scipy.special import betaln, digamma, gammaln, gammasgn, rgamma

from .errors import (
    ConvergenceError,
    DomainError,
    GammaOverflowError,
    PoleError,
)

PRECISION_ENV_VAR = "HYPSTABLE_PRECISION"

# Коэффициенты Ланцоша, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
_LOG_2 = math.log(2.0)
# log(DBL_MAX)
MAX_LOG = 709.782712893384

INTEGER_TOL = 1e-9
_FPMIN = 1e-300


@dataclass(frozen=True)
class EvalPrecision:
    """Настройки точности вычислений."""
    rel_tol: float = 1e-12
    max_terms: int = 10_000
    max_quad_subdivisions: int = 200
    z_switch: float = 0.5
    quad_rel_tol: float = 1e-10

    def __post_init__(self) -> None:
        if not (0.0 < self.rel_tol <= 1e-3):
            raise DomainError(f"rel_tol должен лежать в (0, 1e-3], получено {self.rel_tol}")
        if self.max_terms < 64:
            raise DomainError(f"max_terms должен быть не меньше 64, получено {self.max_terms}")
        if self.max_quad_subdivisions < 1:
            raise DomainError("max_quad_subdivisions должен быть положительным.")
        if not (0.0 < self.z_switch < 1.0):
            raise DomainError(f"z_switch должен лежать в (0, 1), получено {self.z_switch}")
        if not (0.0 < self.quad_rel_tol <= 1e-3):
            raise DomainError(f"quad_rel_tol должен лежать в (0, 1e-3], получено {self.quad_rel_tol}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EvalPrecision":
        """Создаёт настройки из словаря конфигурации (лишние ключи игнорируются)."""
        known = {f.name for f in fields(cls)}
        kwargs = {k: v for k, v in data.items() if k in known}
        if "max_terms" in kwargs:
            kwargs["max_terms"] = int(kwargs["max_terms"])
        if "max_quad_subdivisions" in kwargs:
            kwargs["max_quad_subdivisions"] = int(kwargs["max_quad_subdivisions"])
        return cls(**kwargs)

    def with_env_override(self, env_var: str = PRECISION_ENV_VAR) -> "EvalPrecision":
        """Переопределяет rel_tol из переменной окружения, если она задана."""
        raw = os.environ.get(env_var, "").strip()
        if not raw:
            return self
        try:
            value = float(raw)
        except ValueError as exc:
            raise DomainError(f"Некорректное значение {env_var}={raw!r}") from exc
        return replace(self, rel_tol=value)

    @classmethod
    def from_env(cls, env_var: str = PRECISION_ENV_VAR) -> "EvalPrecision":
        return cls().with_env_override(env_var)


DEFAULT_PRECISION = EvalPrecision()


def is_nonpositive_integer(x: float) -> bool:
    """Истина, если x — полюс гамма-функции (0, −1, −2, …)."""
    return x <= 0.0 and x == math.floor(x)


def _log_sin_pi(z: complex) -> complex:
    """log sin(πz) без переполнения при большой мнимой части."""
    if abs(z.imag) < 100.0:
        return cmath.log(cmath.sin(math.pi * z))
    if z.imag > 0:
        # sin(πz) = (i/2)·e^{−iπz}·(1 − e^{2iπz})
        return -1j * math.pi * z + complex(-_LOG_2, 0.5 * math.pi) + cmath.log(1.0 - cmath.exp(2j * math.pi * z))
    return 1j * math.pi * z + complex(-_LOG_2, -0.5 * math.pi) + cmath.log(1.0 - cmath.exp(-2j * math.pi * z))


def complex_log_gamma(z: complex) -> complex:
    """Логарифм Γ(z) по приближению Ланцоша (ветвь мнимой части не фиксируется)."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"Аргумент гамма-функции не конечен: {z}")
    if z.imag == 0.0 and is_nonpositive_integer(z.real):
        raise PoleError(f"Γ(z) имеет полюс в z = {z.real:g}")
    try:
        if z.real < 0.5:
            # формула отражения
            return _LOG_PI - _log_sin_pi(z) - complex_log_gamma(1.0 - z)
        z -= 1.0
        x = complex(_LANCZOS[0])
        for i in range(1, len(_LANCZOS)):
            x += _LANCZOS[i] / (z + i)
        t = z + _LANCZOS_G + 0.5
        return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)
    except OverflowError as exc:
        raise GammaOverflowError(f"Переполнение при вычислении log Γ({z})") from exc


def complex_gamma(z: complex) -> complex:
    """Γ(z) для комплексного z."""
    log_value = complex_log_gamma(z)
    if log_value.real > MAX_LOG:
        raise GammaOverflowError(f"|Γ({z})| превышает диапазон float")
    return cmath.exp(log_value)


def gamma_ratio(numerator: Iterable[float], denominator: Iterable[float]) -> float:
    """Произведение Γ(aᵢ) / произведение Γ(bⱼ) для вещественных аргументов, в логарифмах."""
    numerator = [float(a) for a in numerator]
    denominator = [float(b) for b in denominator]
    for a in numerator:
        if is_nonpositive_integer(a):
            raise PoleError(f"Γ имеет полюс в числителе: {a:g}")
    if any(is_nonpositive_integer(b) for b in denominator):
        return 0.0
    log_value = sum(gammaln(a) for a in numerator) - sum(gammaln(b) for b in denominator)
    if log_value > MAX_LOG:
        raise GammaOverflowError("Отношение гамма-функций не представимо в float")
    sign = 1.0
    for a in numerator:
        sign *= gammasgn(a)
    for b in denominator:
        sign *= gammasgn(b)
    return float(sign * math.exp(log_value))


def complex_gamma_ratio(numerator: Iterable[complex], denominator: Iterable[complex]) -> complex:
    """То же, что gamma_ratio, но для комплексных аргументов (через complex_log_gamma)."""
    numerator = [complex(a) for a in numerator]
    denominator = [complex(b) for b in denominator]
    for b in denominator:
        if b.imag == 0.0 and is_nonpositive_integer(b.real):
            for a in numerator:
                if a.imag == 0.0 and is_nonpositive_integer(a.real):
                    raise PoleError(f"Γ имеет полюс в числителе: {a.real:g}")
            return 0j
    log_value = sum(complex_log_gamma(a) for a in numerator) - sum(complex_log_gamma(b) for b in denominator)
    if log_value.real > MAX_LOG:
        raise GammaOverflowError("Отношение гамма-функций не представимо в float")
    return cmath.exp(log_value)


def pochhammer(z: float, a: float) -> float:
    """Символ Похгаммера (z)_a = Γ(z+a)/Γ(z)."""
    if a == 0.0:
        return 1.0
    if is_nonpositive_integer(z) or is_nonpositive_integer(z + a):
        raise PoleError(f"(z)_a не определён: z={z:g}, a={a:g}")
    return gamma_ratio([z + a], [z])


def hyp2f1_series(
    a: float,
    b: float,
    c: float,
    z: float,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """Прямое суммирование гипергеометрического ряда."""
    if is_nonpositive_integer(c):
        raise PoleError(f"₂F₁: c = {c:g} — полюс")
    terminating = is_nonpositive_integer(a) or is_nonpositive_integer(b)
    if abs(z) >= 1.0 and not terminating:
        raise DomainError(f"Ряд ₂F₁ расходится при |z| = {abs(z):g} ≥ 1")
    term = 1.0
    total = 1.0
    for k in range(precision.max_terms):
        ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        term *= ratio
        total += term
        if term == 0.0:
            return total
        q = max(abs(ratio), abs(z))
        if q < 1.0 and abs(term) <= precision.rel_tol * abs(total) * (1.0 - q):
            return total
    raise ConvergenceError(
        f"Ряд ₂F₁({a:g}, {b:g}; {c:g}; {z:g}) не сошёлся за {precision.max_terms} членов"
    )


def _hyp2f1_logarithmic(
    a: float,
    b: float,
    m: int,
    w: float,
    precision: EvalPrecision,
) -> float:
    """₂F₁(a, b; a+b+m; 1−w) при целом m ≥ 0 (логарифмический случай формулы связи)."""
    c = a + b + m
    if is_nonpositive_integer(a) or is_nonpositive_integer(b):
        return hyp2f1_series(a, b, c, 1.0 - w, precision)

    finite = 0.0
    if m > 0:
        term = 1.0
        partial = 1.0
        for n in range(1, m):
            term *= (a + n - 1) * (b + n - 1) / (n * (n - m)) * w
            partial += term
        finite = gamma_ratio([m, c], [a + m, b + m]) * partial

    log_w = math.log(w)
    coeff = math.exp(-gammaln(m + 1.0))
    series = 0.0
    for n in range(precision.max_terms):
        ratio = 0.0
        if n > 0:
            ratio = (a + m + n - 1) * (b + m + n - 1) / (n * (n + m)) * w
            coeff *= ratio
        bracket = (
            log_w
            - digamma(n + 1.0)
            - digamma(n + m + 1.0)
            + digamma(a + n + m)
            + digamma(b + n + m)
        )
        series += coeff * bracket
        q = max(abs(ratio), w)
        if n > 0 and (coeff == 0.0 or abs(coeff) * (1.0 + abs(bracket)) <= precision.rel_tol * abs(series) * (1.0 - q)):
            break
    else:
        raise ConvergenceError(
            f"Логарифмический ряд ₂F₁({a:g}, {b:g}; {c:g}; 1−{w:g}) не сошёлся"
        )
    return finite - ((-w) ** m) * gamma_ratio([c], [a, b]) * series


def _hyp2f1_near_one(a: float, b: float, c: float, w: float, precision: EvalPrecision) -> float:
    """₂F₁(a, b; c; 1−w) при малом w через формулу связи z ↔ 1−z."""
    s = c - a - b
    m = round(s)
    if abs(s - m) < INTEGER_TOL:
        if m < 0:
            # преобразование Эйлера переводит в случай c−a−b > 0
            return w ** m * _hyp2f1_logarithmic(c - a, c - b, -m, w, precision)
        return _hyp2f1_logarithmic(a, b, m, w, precision)

    total = 0.0
    coeff1 = gamma_ratio([c, s], [c - a, c - b])
    if coeff1 != 0.0:
        total += coeff1 * hyp2f1_series(a, b, 1.0 - s, w, precision)
    coeff2 = gamma_ratio([c, -s], [a, b])
    if coeff2 != 0.0:
        total += coeff2 * w ** s * hyp2f1_series(c - a, c - b, 1.0 + s, w, precision)
    return total


def _hyp2f1_unit(a: float, b: float, c: float, z: float, w: float, precision: EvalPrecision) -> float:
    if is_nonpositive_integer(a) or is_nonpositive_integer(b) or z <= precision.z_switch:
        return hyp2f1_series(a, b, c, z, precision)
    return _hyp2f1_near_one(a, b, c, w, precision)


def hyp2f1(
    a: float,
    b: float,
    c: float,
    z: float,
    precision: EvalPrecision = DEFAULT_PRECISION,
    *,
    one_minus_z: Optional[float] = None,
) -> float:
    """
    Гипергеометрическая функция Гаусса ₂F₁(a, b; c; z) для вещественного z < 1.

    При z < 0 используется преобразование Пфаффа, при z > z_switch —
    формула связи с аргументом 1−z. Параметр one_minus_z позволяет передать
    точное значение 1−z, когда z отличается от единицы на величину порядка
    машинного эпсилон.
    """
    if is_nonpositive_integer(c):
        raise PoleError(f"₂F₁: c = {c:g} — полюс")
    if not math.isfinite(z) or z >= 1.0:
        raise DomainError(f"₂F₁ определена здесь только при z < 1, получено z = {z}")
    if z == 0.0:
        return 1.0
    w = 1.0 - z if one_minus_z is None else float(one_minus_z)
    if is_nonpositive_integer(a) or is_nonpositive_integer(b):
        return hyp2f1_series(a, b, c, z, precision)
    if z < 0.0:
        # Пфафф: аргумент z/(z−1) ∈ (0, 1), дополнение 1/(1−z)
        return w ** (-a) * _hyp2f1_unit(a, c - b, c, z / (z - 1.0), 1.0 / w, precision)
    return _hyp2f1_unit(a, b, c, z, w, precision)


def legendre_p(
    mu: float,
    nu: float,
    z: float,
    precision: EvalPrecision = DEFAULT_PRECISION,
) -> float:
    """Функция Лежандра первого рода P^μ_ν(z) при z > 1."""
    if not z > 1.0:
        raise DomainError(f"P^μ_ν(z) определена здесь при z > 1, получено z = {z}")
    scale = float(rgamma(1.0 - mu))
    if scale == 0.0:
        raise PoleError(f"1−μ = {1.0 - mu:g} — полюс гамма-функции")
    ratio = ((z + 1.0) / (z - 1.0)) ** (0.5 * mu)
    return scale * ratio * hyp2f1(-nu, nu + 1.0, 1.0 - mu, 0.5 * (1.0 - z), precision)


def _betacf(x: float, p: float, q: float, precision: EvalPrecision) -> float:
    """Цепная дробь для неполной бета-функции (модифицированный метод Ленца)."""
    qab = p + q
    qap = p + 1.0
    qam = p - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, precision.max_terms + 1):
        m2 = 2 * m
        aa = m * (q - m) * x / ((qam + m2) * (p + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(p + m) * (qab + m) * x / ((p + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) <= precision.rel_tol:
            return h
    raise ConvergenceError(f"Цепная дробь I_x({p:g}, {q:g}) не сошлась при x = {x:g}")


def reg_inc_beta(
    x: float,
    p: float,
    q: float,
    precision: EvalPrecision = DEFAULT_PRECISION,
    *,
    one_minus_x: Optional[float] = None,
) -> float:
    """Регуляризованная неполная бета-функция I_x(p, q)."""
    if not (p > 0.0 and q > 0.0):
        raise DomainError(f"I_x(p, q) требует p, q > 0, получено p={p}, q={q}")
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"I_x(p, q) требует x ∈ [0, 1], получено x = {x}")
    y = 1.0 - x if one_minus_x is None else float(one_minus_x)
    if x == 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    log_front = p * math.log(x) + q * math.log(y) - betaln(p, q)
    front = math.exp(log_front)
    if x < (p + 1.0) / (p + q + 2.0):
        value = front * _betacf(x, p, q, precision) / p
    else:
        value = 1.0 - front * _betacf(y, q, p, precision) / q
    return min(1.0, max(0.0, value))
