# -*- coding: utf-8 -*-
"""
Независимый Монте-Карло оракул: симметричный α-устойчивый процесс как
подчинённое броуновское движение, его радиальная часть и преобразование
Ламперти; эмпирические законы перескока и инфимума.

Каждый блок путей получает собственный поток Philox(SeedSequence(seed, spawn_key=(блок,))),
поэтому результат не зависит от числа параллельных исполнителей.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed
from scipy.stats import kstest

from .errors import DomainError
from .model import ProcessParams, require_transient

logger = logging.getLogger(__name__)

STEP_RULES = ("process", "lamperti")
DEFECT_WARN = 0.01
LATE_FRACTION = 0.1
LATE_WARN = 0.05
PATH_MEMORY_LIMIT = 256 * 2 ** 20


@dataclass(frozen=True)
class SimConfig:
    """Параметры моделирования."""
    params: ProcessParams
    n_paths: int
    dt: float
    t_max: float
    seed: int
    start_norm: float = 1.0
    escape_radius: Optional[float] = None
    step_rule: str = "process"
    block_size: int = 256
    n_jobs: int = 1

    def __post_init__(self) -> None:
        if not self.dt > 0.0:
            raise DomainError(f"Шаг dt должен быть положительным, получено {self.dt}")
        if not self.t_max > 0.0:
            raise DomainError(f"Горизонт t_max должен быть положительным, получено {self.t_max}")
        if self.n_paths < 1:
            raise DomainError(f"Число путей должно быть ≥ 1, получено {self.n_paths}")
        if not self.start_norm > 0.0:
            raise DomainError(f"Начальная норма должна быть положительной, получено {self.start_norm}")
        if self.step_rule not in STEP_RULES:
            raise DomainError(f"Неизвестное правило шага: {self.step_rule}")
        if self.block_size < 1:
            raise DomainError("block_size должен быть положительным.")
        if self.escape_radius is not None and not self.escape_radius > self.start_norm:
            raise DomainError("escape_radius должен превышать начальную норму.")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise DomainError("seed должен быть 64-битным неотрицательным целым.")

    @property
    def n_steps(self) -> int:
        return int(math.ceil(self.t_max / self.dt - 1e-12))

    @property
    def n_blocks(self) -> int:
        return (self.n_paths + self.block_size - 1) // self.block_size

    def block_rng(self, block_index: int) -> np.random.Generator:
        ss = np.random.SeedSequence(int(self.seed), spawn_key=(block_index,))
        return np.random.Generator(np.random.Philox(ss))

    def block_range(self, block_index: int) -> Tuple[int, int]:
        start = block_index * self.block_size
        return start, min(start + self.block_size, self.n_paths)


@dataclass
class PathSample:
    """Дискретная траектория Z, её норма R и часы Ламперти ∫ R^{−α} ds."""
    times: np.ndarray
    positions: np.ndarray
    radial: np.ndarray
    lamperti_clock: np.ndarray
    start_norm: float = 1.0

    def xi(self) -> Tuple[np.ndarray, np.ndarray]:
        """Траектория ξ в собственном времени: (часы Ламперти, log(R/R₀))."""
        return self.lamperti_clock, np.log(self.radial / self.start_norm)


@dataclass
class EmpiricalLaw:
    """Отсортированная выборка и доля путей без события до t_max."""
    samples: np.ndarray
    count: int
    defect: float
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0.0 <= self.defect <= 1.0:
            raise DomainError(f"Дефект должен лежать в [0, 1], получено {self.defect}")

    def cdf(self, x: float) -> float:
        return float(np.searchsorted(self.samples, x, side="right")) / max(self.count, 1)


def _kanter(beta: float, rng: np.random.Generator, size: int) -> np.ndarray:
    """Положительная β-устойчивая величина с E e^{−λS} = e^{−λ^β} (представление Кантера)."""
    u = rng.uniform(0.0, math.pi, size)
    w = rng.standard_exponential(size)
    return (
        np.sin(beta * u) / np.sin(u) ** (1.0 / beta)
        * (np.sin((1.0 - beta) * u) / w) ** ((1.0 - beta) / beta)
    )


def sample_subordinator_increment(
    dt: float,
    alpha_half: float,
    rng: np.random.Generator,
    size: Optional[int] = None,
) -> float | np.ndarray:
    """Приращение устойчивого субординатора индекса α/2 за время dt (массив при заданном size)."""
    if not 0.0 < alpha_half < 1.0:
        raise DomainError(f"Индекс субординатора должен лежать в (0, 1), получено {alpha_half}")
    if not dt > 0.0:
        raise DomainError(f"dt должно быть положительным, получено {dt}")
    draws = dt ** (1.0 / alpha_half) * _kanter(alpha_half, rng, 1 if size is None else size)
    return float(draws[0]) if size is None else draws


def _step(z: np.ndarray, dts: np.ndarray, beta: float, rng: np.random.Generator) -> np.ndarray:
    """Один шаг подчинённого броуновского движения для массива путей."""
    m, d = z.shape
    sigma = dts ** (1.0 / beta) * _kanter(beta, rng, m)
    return z + np.sqrt(2.0 * sigma)[:, None] * rng.standard_normal((m, d))


def _step_sizes(config: SimConfig, radial: np.ndarray) -> np.ndarray:
    if config.step_rule == "lamperti":
        return config.dt * (radial / config.start_norm) ** config.params.alpha
    return np.full(radial.shape, config.dt)


def _initial_positions(config: SimConfig, m: int) -> np.ndarray:
    z = np.zeros((m, config.params.dim))
    z[:, 0] = config.start_norm
    return z


def _path_bytes(config: SimConfig) -> int:
    """Память одной сохранённой траектории: положения, время, норма и часы Ламперти."""
    return (config.n_steps + 1) * (config.params.dim + 3) * 8


def _simulate_chunk(config: SimConfig, rng: np.random.Generator, m: int) -> List[PathSample]:
    n = config.n_steps
    beta = 0.5 * config.params.alpha
    z = _initial_positions(config, m)
    positions = np.empty((m, n + 1, config.params.dim))
    times = np.zeros((m, n + 1))
    positions[:, 0] = z
    for i in range(n):
        r = np.linalg.norm(z, axis=1)
        dts = _step_sizes(config, r)
        z = _step(z, dts, beta, rng)
        positions[:, i + 1] = z
        times[:, i + 1] = times[:, i] + dts
    paths = []
    for j in range(m):
        radial = np.linalg.norm(positions[j], axis=1)
        increments = np.diff(times[j]) * radial[:-1] ** (-config.params.alpha)
        clock = np.concatenate([[0.0], np.cumsum(increments)])
        paths.append(PathSample(times=times[j], positions=positions[j], radial=radial,
                                lamperti_clock=clock, start_norm=config.start_norm))
    return paths


def simulate_paths(config: SimConfig) -> Iterator[PathSample]:
    """
    Поток полных траекторий.

    Траектории хранятся целиком, поэтому блок моделируется частями, каждая не
    больше PATH_MEMORY_LIMIT байт; оценки перескока и инфимума траектории не хранят.
    """
    per_path = _path_bytes(config)
    if per_path > PATH_MEMORY_LIMIT:
        raise DomainError(
            f"Одна траектория из {config.n_steps} шагов занимает {per_path / 2 ** 20:.0f} МБ "
            f"(предел {PATH_MEMORY_LIMIT / 2 ** 20:.0f} МБ); увеличьте dt или уменьшите t_max"
        )
    chunk = max(1, PATH_MEMORY_LIMIT // per_path)
    for block in range(config.n_blocks):
        start, stop = config.block_range(block)
        rng = config.block_rng(block)
        for offset in range(start, stop, chunk):
            yield from _simulate_chunk(config, rng, min(chunk, stop - offset))


def _overshoot_block(config: SimConfig, block_index: int, level_radius: float) -> Tuple[np.ndarray, int]:
    start, stop = config.block_range(block_index)
    m = stop - start
    rng = config.block_rng(block_index)
    beta = 0.5 * config.params.alpha
    z = _initial_positions(config, m)
    active = np.ones(m, dtype=bool)
    samples = np.full(m, np.nan)
    for _ in range(config.n_steps):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        zi = z[idx]
        zi = _step(zi, _step_sizes(config, np.linalg.norm(zi, axis=1)), beta, rng)
        z[idx] = zi
        r = np.linalg.norm(zi, axis=1)
        crossed = r > level_radius
        samples[idx[crossed]] = np.log(r[crossed] / level_radius)
        active[idx[crossed]] = False
    return samples[~active], int(active.sum())


def _infimum_block(config: SimConfig, block_index: int) -> Tuple[np.ndarray, int]:
    start, stop = config.block_range(block_index)
    m = stop - start
    rng = config.block_rng(block_index)
    beta = 0.5 * config.params.alpha
    escape = config.escape_radius if config.escape_radius is not None else 1e3 * config.start_norm
    z = _initial_positions(config, m)
    running_min = np.full(m, config.start_norm)
    last_new_min = np.zeros(m, dtype=int)
    active = np.ones(m, dtype=bool)
    n = config.n_steps
    for step in range(1, n + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        zi = z[idx]
        zi = _step(zi, _step_sizes(config, np.linalg.norm(zi, axis=1)), beta, rng)
        z[idx] = zi
        r = np.linalg.norm(zi, axis=1)
        lower = r < running_min[idx]
        running_min[idx[lower]] = r[lower]
        last_new_min[idx[lower]] = step
        active[idx[r > escape]] = False
    late = int(np.sum(active & (last_new_min > (1.0 - LATE_FRACTION) * n)))
    return -np.log(running_min / config.start_norm), late


def _radial_block(config: SimConfig, block_index: int, t: float, n: int) -> np.ndarray:
    start, stop = config.block_range(block_index)
    rng = config.block_rng(block_index)
    z = _initial_positions(config, stop - start)
    dts = np.full(stop - start, t / n)
    for _ in range(n):
        z = _step(z, dts, 0.5 * config.params.alpha, rng)
    return np.linalg.norm(z, axis=1)


def _run_blocks(config: SimConfig, worker: Callable, *args) -> list:
    return Parallel(n_jobs=config.n_jobs)(
        delayed(worker)(config, block, *args) for block in range(config.n_blocks)
    )


def estimate_overshoot(config: SimConfig, u: float) -> EmpiricalLaw:
    """Эмпирический закон log(R_{σ⁺}/(R₀e^u)) при первом выходе R за уровень R₀e^u."""
    require_transient(config.params, "Оценка перескока")
    if not u > 0.0:
        raise DomainError(f"Уровень u должен быть положительным, получено {u}")
    level_radius = config.start_norm * math.exp(u)
    results = _run_blocks(config, _overshoot_block, level_radius)
    samples = np.sort(np.concatenate([s for s, _ in results]))
    missing = sum(k for _, k in results)
    defect = missing / config.n_paths
    if defect > DEFECT_WARN:
        logger.warning("Перескок: %.1f%% путей не покинули уровень до t_max", 100.0 * defect)
    return EmpiricalLaw(samples=samples, count=int(samples.size), defect=defect,
                        diagnostics={"level": u, "missing": missing})


def estimate_infimum(config: SimConfig) -> EmpiricalLaw:
    """Эмпирический закон −log(inf R_t/R₀) на конечном горизонте."""
    require_transient(config.params, "Оценка инфимума")
    results = _run_blocks(config, _infimum_block)
    samples = np.sort(np.concatenate([s for s, _ in results]))
    late = sum(k for _, k in results)
    late_share = late / config.n_paths
    if late_share > LATE_WARN:
        logger.warning(
            "Инфимум не стабилизировался: у %.1f%% путей минимум достигнут в последних %d%% горизонта",
            100.0 * late_share, int(100 * LATE_FRACTION),
        )
    return EmpiricalLaw(samples=samples, count=int(samples.size), defect=0.0,
                        diagnostics={"late_minimum_share": late_share})


def estimate_radial_at(config: SimConfig, t: float) -> np.ndarray:
    """Выборка R_t в фиксированный момент t (шаги подгоняются так, чтобы попасть ровно в t)."""
    if not t > 0.0:
        raise DomainError(f"t должно быть положительным, получено {t}")
    n = max(1, int(math.ceil(t / config.dt - 1e-12)))
    return np.concatenate(_run_blocks(config, _radial_block, t, n))


def ks_distance(law: EmpiricalLaw, cdf: Callable[[float], float]) -> Tuple[float, float]:
    """Статистика Колмогорова–Смирнова и p-значение против теоретической ФР."""
    if law.count == 0:
        raise DomainError("Пустая выборка.")
    vec = np.vectorize(cdf, otypes=[float])
    res = kstest(law.samples, vec)
    return float(res.statistic), float(res.pvalue)
