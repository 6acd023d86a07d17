# -*- coding: utf-8 -*-
"""
Вспомогательные функции командной строки: конфигурация, сборка таблиц
законов по имени, запуск моделирования, настройка логирования.
"""

from __future__ import annotations

import json
import logging
import os
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .errors import DomainError
from .fluctuation import char_exponent_closed, renewal_density_asc, renewal_density_desc
from .model import ProcessParams, levy_density, require_hits_points, require_transient
from .passage import (
    DistributionTable,
    LawKind,
    hit_point_prob,
    infimum_law,
    multi_point_hitting,
    overshoot_cdf,
    overshoot_density,
    potential_kernel_r,
    tabulate,
    undershoot_density,
)
from .sim import EmpiricalLaw, SimConfig, estimate_infimum, estimate_overshoot
from .specfun import EvalPrecision

logger = logging.getLogger(__name__)

DEFAULT_CONFIG: Dict[str, Any] = {
    "alpha": 1.0,
    "dim": 3,
    "seed": 20240601,
    "precision": {},
    "grid": {"lo": 0.01, "hi": 3.0, "n": 50},
    "simulation": {
        "n_paths": 10_000,
        "dt": 1e-4,
        "t_max": 20.0,
        "start_norm": 1.0,
        "escape_radius": None,
        "step_rule": "process",
        "block_size": 256,
        "n_jobs": 1,
    },
    "verify": {"montecarlo": {}},
}

EVAL_TARGETS = (
    "levy-density",
    "exponent",
    "overshoot",
    "undershoot",
    "infimum",
    "hitting",
    "potential",
    "renewal",
)

# условия на (α, d), проверяемые до вычислений
REGIME_GATES: Dict[str, Callable[[ProcessParams, str], None]] = {
    "overshoot": require_transient,
    "undershoot": require_transient,
    "infimum": require_transient,
    "renewal": require_transient,
    "potential": require_transient,
    "hitting": require_hits_points,
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def load_config(path: Optional[str] = "config.json") -> Dict[str, Any]:
    """Загружает JSON-конфигурацию поверх встроенных значений по умолчанию."""
    if path is None:
        return _merge(DEFAULT_CONFIG, {})
    if not os.path.exists(path):
        logger.debug("Файл конфигурации %s не найден, используются значения по умолчанию", path)
        return _merge(DEFAULT_CONFIG, {})
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise DomainError(f"Некорректный JSON в {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise DomainError(f"Конфигурация {path} должна быть JSON-объектом.")
    return _merge(DEFAULT_CONFIG, data)


def precision_from_config(config: Dict[str, Any]) -> EvalPrecision:
    """Точность из конфигурации с переопределением rel_tol из HYPSTABLE_PRECISION."""
    return EvalPrecision.from_dict(config.get("precision", {})).with_env_override()


def build_grid(lo: float, hi: float, n: int) -> np.ndarray:
    """Равномерная сетка; n = 0 даёт пустую сетку."""
    if n < 0:
        raise DomainError(f"Число узлов сетки должно быть неотрицательным, получено {n}")
    if n == 0:
        return np.empty(0)
    if n == 1:
        return np.array([float(lo)])
    if not hi > lo:
        raise DomainError(f"Требуется lo < hi, получено lo={lo}, hi={hi}")
    return np.linspace(lo, hi, n)


def parse_grid(text: str) -> Tuple[float, float, int]:
    """Разбор сетки вида 'lo:hi:n'."""
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"Сетка задаётся как lo:hi:n, получено '{text}'")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise DomainError(f"Некорректная сетка '{text}': {exc}") from exc


def parse_points(text: str) -> List[float]:
    """Разбор списка точек вида 'r1,r2,…'."""
    try:
        points = [float(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise DomainError(f"Некорректный список точек '{text}': {exc}") from exc
    if not points:
        raise DomainError("Список точек пуст.")
    return points


def multi_point_table(
    points: Sequence[float],
    grid: np.ndarray,
    params: ProcessParams,
    precision: EvalPrecision,
) -> pd.DataFrame:
    """
    Вероятности первого попадания в каждую точку множества при старте с нормы x из сетки.

    Строка на пару (x, точка); prob_any повторяется для всех точек одного x.
    """
    ordered = np.sort(np.asarray(points, dtype=float))
    rows = []
    for x in grid:
        prob_any, first_hit = multi_point_hitting(ordered, float(x), params, precision)
        for point, prob in zip(ordered, first_hit):
            rows.append({"abscissa": float(x), "point": float(point),
                         "first_hit_prob": float(prob), "prob_any": prob_any})
    return pd.DataFrame(rows, columns=["abscissa", "point", "first_hit_prob", "prob_any"])


def check_regime(target: str, params: ProcessParams) -> None:
    """Проверка режима параметров для цели eval."""
    if target not in EVAL_TARGETS:
        raise DomainError(f"Неизвестная цель: {target}")
    gate = REGIME_GATES.get(target)
    if gate is not None:
        gate(params, f"eval {target}")


def _require(options: Dict[str, Any], key: str, target: str) -> float:
    value = options.get(key)
    if value is None:
        raise DomainError(f"Для eval {target} требуется параметр --{key}")
    return float(value)


def build_table_by_name(
    name: str,
    params: ProcessParams,
    grid: np.ndarray,
    precision: EvalPrecision,
    **options: Any,
) -> DistributionTable | pd.DataFrame:
    """Возвращает таблицу закона (или характеристической экспоненты) по названию цели."""
    check_regime(name, params)
    if options.get("points") is not None and name != "hitting":
        raise DomainError(f"Параметр --points допустим только для eval hitting, получена цель {name}")
    kind = LawKind(options.get("kind") or "density")

    if name == "levy-density":
        return tabulate(lambda y: levy_density(y, params, precision), grid, LawKind.DENSITY, probability=False)
    if name == "exponent":
        values = [char_exponent_closed(float(lam), params) for lam in grid]
        return pd.DataFrame({
            "abscissa": grid,
            "re": [v.real for v in values],
            "im": [v.imag for v in values],
        })
    if name == "overshoot":
        u = _require(options, "level", name)
        if kind is LawKind.CDF:
            return tabulate(lambda t: overshoot_cdf(t, u, params, precision), grid, kind)
        return tabulate(lambda t: overshoot_density(t, u, params), grid, kind)
    if name == "undershoot":
        v = _require(options, "level", name)
        return tabulate(lambda t: undershoot_density(t, v, params), grid, LawKind.DENSITY)
    if name == "infimum":
        return tabulate(lambda z: infimum_law(z, params, kind, precision), grid, kind)
    if name == "hitting":
        if options.get("points") is not None:
            return multi_point_table(options["points"], grid, params, precision)
        return tabulate(lambda y: hit_point_prob(y, params, precision), grid, LawKind.DENSITY, probability=False)
    if name == "potential":
        x = _require(options, "x", name)
        k = float(options.get("k") or 1.0)
        return tabulate(lambda u: potential_kernel_r(x, u, k, params, precision), grid, LawKind.DENSITY,
                        probability=False)
    if name == "renewal":
        side = options.get("side") or "desc"
        if side not in ("desc", "asc"):
            raise DomainError(f"Неизвестная сторона: {side}")
        density = renewal_density_desc if side == "desc" else renewal_density_asc
        return tabulate(lambda y: density(y, params), grid, LawKind.DENSITY, probability=side == "desc")
    raise DomainError(f"Неизвестная цель: {name}")


def sim_config_from(config: Dict[str, Any], params: ProcessParams, seed: int, **overrides: Any) -> SimConfig:
    """SimConfig из секции simulation конфигурации; overrides (не None) имеют приоритет."""
    section = dict(config.get("simulation", {}))
    section.update({k: v for k, v in overrides.items() if v is not None})
    escape = section.get("escape_radius")
    return SimConfig(
        params=params,
        n_paths=int(section["n_paths"]),
        dt=float(section["dt"]),
        t_max=float(section["t_max"]),
        seed=int(seed),
        start_norm=float(section.get("start_norm", 1.0)),
        escape_radius=None if escape is None else float(escape),
        step_rule=str(section.get("step_rule", "process")),
        block_size=int(section.get("block_size", 256)),
        n_jobs=int(section.get("n_jobs", 1)),
    )


def run_simulation(sim_config: SimConfig, mode: str, level: Optional[float] = None) -> EmpiricalLaw:
    """Запускает оценку перескока или инфимума."""
    if mode == "overshoot":
        if level is None:
            raise DomainError("Для режима overshoot требуется --level")
        return estimate_overshoot(sim_config, level)
    if mode == "infimum":
        return estimate_infimum(sim_config)
    raise DomainError(f"Неизвестный режим моделирования: {mode}")


def simulation_header(sim_config: SimConfig, mode: str, level: Optional[float], law: EmpiricalLaw) -> List[str]:
    """Строки-комментарии CSV: эхо конфигурации и дефект."""
    lines = [
        f"mode={mode}",
        f"alpha={sim_config.params.alpha:.17g}",
        f"dim={sim_config.params.dim}",
        f"paths={sim_config.n_paths}",
        f"dt={sim_config.dt:.17g}",
        f"tmax={sim_config.t_max:.17g}",
        f"seed={sim_config.seed}",
        f"start_norm={sim_config.start_norm:.17g}",
        f"step_rule={sim_config.step_rule}",
    ]
    if level is not None:
        lines.append(f"level={level:.17g}")
    lines.append(f"defect={law.defect:.17g}")
    return lines


def setup_logging(verbosity: int) -> None:
    """WARNING по умолчанию, INFO при -v, DEBUG при -vv; вывод в stderr."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
