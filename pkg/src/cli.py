# -*- coding: utf-8 -*-
"""
Командная строка: eval (табулирование законов), simulate (Монте-Карло),
verify (проверочные наборы).

Коды возврата: 0 при успехе, 1 при проваленной проверке, 2 при ошибке
использования, режима параметров или ввода-вывода.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from typing import Any, Dict, Optional, Sequence

import pandas as pd

from .app_core import (
    EVAL_TARGETS,
    build_grid,
    build_table_by_name,
    load_config,
    parse_grid,
    parse_points,
    precision_from_config,
    run_simulation,
    setup_logging,
    sim_config_from,
    simulation_header,
)
from .errors import DomainError, HypStableError
from .evaluation import VerifyContext, run_verification, suite_names
from .model import ProcessParams
from .tables import FORMATS, emit, write_output

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Подробный лог (-vv — отладка).")
    parser.add_argument("--config", default="config.json", help="JSON-конфигурация (по умолчанию config.json).")
    parser.add_argument("--format", choices=FORMATS, default="csv", help="Формат вывода.")
    parser.add_argument("--out", default=None, help="Файл вывода (по умолчанию stdout).")
    parser.add_argument("--alpha", type=float, default=None, help="Индекс устойчивости α ∈ (0, 2).")
    parser.add_argument("--dim", type=int, default=None, help="Размерность d ≥ 1.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypstable",
        description="Гипергеометрически-устойчивый процесс Леви: законы прохождения и проверки.",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    p_eval = verbs.add_parser("eval", help="Табулировать закон на сетке.")
    p_eval.add_argument("target", choices=EVAL_TARGETS)
    _common(p_eval)
    p_eval.add_argument("--lo", type=float, default=None, help="Левый конец сетки.")
    p_eval.add_argument("--hi", type=float, default=None, help="Правый конец сетки.")
    p_eval.add_argument("--n", type=int, default=None, help="Число узлов сетки.")
    p_eval.add_argument("--grid", default=None, help="Сетка lo:hi:n (вместо --lo/--hi/--n).")
    p_eval.add_argument("--points", default=None,
                        help="Точки r1,r2,… для eval hitting: вероятности первого попадания при старте с нормы x.")
    p_eval.add_argument("--level", type=float, default=None, help="Уровень u > 0 (overshoot) или v < 0 (undershoot).")
    p_eval.add_argument("--kind", choices=("density", "cdf"), default=None)
    p_eval.add_argument("--x", type=float, default=None, help="Начальная точка для потенциального ядра.")
    p_eval.add_argument("--k", type=float, default=None, help="Константа нормировки потенциального ядра.")
    p_eval.add_argument("--side", choices=("desc", "asc"), default=None, help="Сторона меры восстановления.")

    p_sim = verbs.add_parser("simulate", help="Монте-Карло оценка закона перескока или инфимума.")
    _common(p_sim)
    p_sim.add_argument("--paths", type=int, default=None)
    p_sim.add_argument("--dt", type=float, default=None)
    p_sim.add_argument("--tmax", type=float, default=None)
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--mode", choices=("overshoot", "infimum"), required=True)
    p_sim.add_argument("--level", type=float, default=None)
    p_sim.add_argument("--start", type=float, default=None, help="Начальная норма.")
    p_sim.add_argument("--step-rule", choices=("process", "lamperti"), default=None)
    p_sim.add_argument("--jobs", type=int, default=None, help="Число параллельных исполнителей joblib.")

    p_ver = verbs.add_parser("verify", help="Запустить проверочный набор.")
    p_ver.add_argument("suite", choices=suite_names())
    _common(p_ver)
    p_ver.add_argument("--quick", action="store_true", help="Уменьшенные сетки и выборки.")
    p_ver.add_argument("--seed", type=int, default=None)
    p_ver.add_argument("--jobs", type=int, default=None)
    p_ver.add_argument("--timing", action="store_true", help="Включить время выполнения в отчёт.")
    return parser


def _params(args: argparse.Namespace, config: Dict[str, Any], explicit_only: bool = False) -> Optional[ProcessParams]:
    if explicit_only and args.alpha is None and args.dim is None:
        return None
    alpha = args.alpha if args.alpha is not None else config["alpha"]
    dim = args.dim if args.dim is not None else config["dim"]
    return ProcessParams(alpha, dim)


def _cmd_eval(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    params = _params(args, config)
    precision = precision_from_config(config)
    grid_cfg = config["grid"]
    if args.grid is not None:
        if any(v is not None for v in (args.lo, args.hi, args.n)):
            raise DomainError("--grid нельзя сочетать с --lo/--hi/--n")
        grid = build_grid(*parse_grid(args.grid))
    else:
        grid = build_grid(
            args.lo if args.lo is not None else grid_cfg["lo"],
            args.hi if args.hi is not None else grid_cfg["hi"],
            args.n if args.n is not None else int(grid_cfg["n"]),
        )
    points = None if args.points is None else parse_points(args.points)
    table = build_table_by_name(
        args.target, params, grid, precision,
        level=args.level, kind=args.kind, x=args.x, k=args.k, side=args.side, points=points,
    )
    comments = [f"target={args.target}", f"alpha={params.alpha:.17g}", f"dim={params.dim}"]
    if points is not None:
        comments.append("points=" + ",".join(f"{p:.17g}" for p in sorted(points)))
    write_output(emit(table, args.format, comments), args.out)
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    params = _params(args, config)
    seed = args.seed if args.seed is not None else config["seed"]
    sim_config = sim_config_from(
        config, params, seed,
        n_paths=args.paths, dt=args.dt, t_max=args.tmax, start_norm=args.start,
        step_rule=args.step_rule, n_jobs=args.jobs,
    )
    law = run_simulation(sim_config, args.mode, args.level)
    frame = pd.DataFrame({"sample": law.samples})
    header = simulation_header(sim_config, args.mode, args.level, law)
    write_output(emit(frame, args.format, header), args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, config: Dict[str, Any], argv: Sequence[str]) -> int:
    # в режиме verify seed берётся только из --seed
    verify_cfg = config.get("verify", {})
    ctx = VerifyContext(
        precision=precision_from_config(config),
        quick=args.quick,
        seed=args.seed,
        params=_params(args, config, explicit_only=True),
        n_jobs=args.jobs if args.jobs is not None else int(config["simulation"].get("n_jobs", 1)),
        montecarlo=verify_cfg.get("montecarlo", {}),
    )
    report = run_verification(args.suite, ctx, command=" ".join(argv))
    if not args.timing:
        report.wall_clock = None
    write_output(emit(report, args.format), args.out)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Точка входа: разбор аргументов, выполнение команды, код возврата."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    setup_logging(args.verbose)
    start = time.perf_counter()
    try:
        config = load_config(args.config)
        if args.verb == "eval":
            code = _cmd_eval(args, config)
        elif args.verb == "simulate":
            code = _cmd_simulate(args, config)
        else:
            code = _cmd_verify(args, config, argv)
    except HypStableError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except OSError as exc:
        path = getattr(exc, "filename", None) or args.out
        logger.error("Ошибка ввода-вывода (%s): %s", path, exc.strerror or exc)
        return EXIT_USAGE
    logger.info("%s завершено за %.3f с (код %d)", args.verb, time.perf_counter() - start, code)
    return code
