# -*- coding: utf-8 -*-
"""
Иерархия исключений библиотеки.

Все ошибки наследуются от HypStableError, а также от подходящего
встроенного исключения, чтобы вызывающий код мог ловить привычные
ValueError / ArithmeticError / OverflowError.
"""

from __future__ import annotations


class HypStableError(Exception):
    """Базовое исключение библиотеки."""


class DomainError(HypStableError, ValueError):
    """Аргумент вне области определения формулы."""


class PoleError(DomainError):
    """Аргумент попал в полюс гамма-функции."""


class RegimeError(DomainError):
    """Параметры (α, d) не удовлетворяют условию формулы."""


class ConvergenceError(HypStableError, ArithmeticError):
    """Ряд, цепная дробь или квадратура не сошлись."""


class GammaOverflowError(HypStableError, OverflowError):
    """Значение гамма-функции не представимо в float."""


class SingularMatrixError(HypStableError, ArithmeticError):
    """Матрица потенциалов вырождена (совпадающие точки)."""


class EmitError(HypStableError, ValueError):
    """Таблицу нельзя записать (NaN/inf в значениях)."""
