# -*- coding: utf-8 -*-
"""
Проверочные наборы: сверка замкнутых формул с численными и
Монте-Карло оценками, результаты в виде RunReport.
"""

from __future__ import annotations

import cmath
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.special import betainc, ellipk, hyp2f1 as scipy_hyp2f1

from .errors import DomainError, HypStableError
from .fluctuation import (
    char_exponent_closed,
    kappa_asc,
    kappa_desc,
    ladder_levy_tail_asc,
    renewal_density_desc,
    renewal_laplace_transform,
    stationary_overshoot_density,
    vigon_tail_numeric,
)
from .model import (
    LevyCharacteristics,
    ProcessParams,
    char_exponent_numeric,
    levy_density,
    levy_density_d1_split,
    levy_density_via_fbar,
    require_hits_points,
    require_transient,
)
from .passage import (
    LawKind,
    exit_radial_marginal,
    hit_point_const,
    hit_point_prob,
    infimum_law,
    multi_point_hitting,
    overshoot_cdf,
    overshoot_density,
    potential_density_u,
    quadruple_law_total_mass,
    triple_law_marginal_overshoot,
    triple_law_total_mass,
    two_point_hitting,
    undershoot_mass,
)
from .quadrature import integrate
from .sim import EmpiricalLaw, SimConfig, estimate_infimum, estimate_overshoot, ks_distance
from .specfun import (
    DEFAULT_PRECISION,
    EvalPrecision,
    complex_gamma,
    gamma_ratio,
    hyp2f1,
    hyp2f1_series,
    legendre_p,
    reg_inc_beta,
)

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    """Одна проверка: ожидаемое и наблюдаемое значения, допуск и итог."""
    name: str
    expected: float
    observed: float
    tolerance: float
    passed: bool
    mode: str = "rel"
    note: str = ""

    @classmethod
    def close(cls, name: str, expected: float, observed: float, tolerance: float,
              relative: bool = True) -> "CheckResult":
        expected, observed = float(expected), float(observed)
        scale = abs(expected) if relative else 1.0
        passed = math.isfinite(observed) and abs(observed - expected) <= tolerance * scale
        return cls(name, expected, observed, tolerance, bool(passed), "rel" if relative else "abs")

    @classmethod
    def at_most(cls, name: str, observed: float, bound: float) -> "CheckResult":
        observed = float(observed)
        return cls(name, float(bound), observed, 0.0, bool(observed <= bound), "upper")

    @classmethod
    def failed(cls, name: str, exc: Exception) -> "CheckResult":
        return cls(name, 0.0, 0.0, 0.0, False, "error", f"{type(exc).__name__}: {exc}")

    def as_row(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "expected": self.expected,
            "observed": self.observed,
            "tolerance": self.tolerance,
            "mode": self.mode,
            "passed": self.passed,
            "note": self.note,
        }


@dataclass
class RunReport:
    """Отчёт о запуске: команда, проверки, общий статус (И по всем проверкам)."""
    command: str
    checks: List[CheckResult] = field(default_factory=list)
    wall_clock: Optional[float] = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_frame(self) -> pd.DataFrame:
        columns = ["name", "expected", "observed", "tolerance", "mode", "passed", "note"]
        return pd.DataFrame([c.as_row() for c in self.checks], columns=columns)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "command": self.command,
            "ok": self.ok,
            "checks": [c.as_row() for c in self.checks],
        }
        if self.wall_clock is not None:
            out["wall_clock_s"] = self.wall_clock
        return out


def report_to_markdown_table(report: RunReport) -> str:
    """Преобразует отчёт в markdown-таблицу."""
    headers = ["Проверка", "Ожидается", "Получено", "Допуск", "Итог"]
    lines: List[str] = []
    lines.append("| " + " | ".join(headers) + " |")
    lines.append("|" + "|".join(["---"] * len(headers)) + "|")
    for c in report.checks:
        row = [
            c.name,
            f"{c.expected:.10g}",
            f"{c.observed:.10g}",
            f"{c.tolerance:.1e}" if c.mode != "upper" else "≤",
            "OK" if c.passed else "FAIL",
        ]
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines)


@dataclass(frozen=True)
class VerifyContext:
    """Настройки проверочного запуска."""
    precision: EvalPrecision = DEFAULT_PRECISION
    quick: bool = False
    seed: Optional[int] = None
    params: Optional[ProcessParams] = None
    n_jobs: int = 1
    montecarlo: Dict[str, Any] = field(default_factory=dict)

    def pairs(self, full: Sequence[Tuple[float, int]], quick: Sequence[Tuple[float, int]]) -> List[ProcessParams]:
        if self.params is not None:
            return [self.params]
        return [ProcessParams(a, d) for a, d in (quick if self.quick else full)]


def _guarded(checks: List[CheckResult], name: str, compute: Callable[[], CheckResult]) -> None:
    try:
        checks.append(compute())
    except HypStableError as exc:
        logger.warning("Проверка '%s' завершилась ошибкой: %s", name, exc)
        checks.append(CheckResult.failed(name, exc))


# ---------------------------------------------------------------------------
# Специальные функции
# ---------------------------------------------------------------------------

def suite_specfun(ctx: VerifyContext) -> List[CheckResult]:
    prec = ctx.precision
    tol = 10.0 * prec.rel_tol
    checks: List[CheckResult] = []

    for z in (0.3 + 2.0j, 2.5 - 1.5j, -1.7 + 0.4j):
        lhs = complex_gamma(z + 1.0)
        rhs = z * complex_gamma(z)
        checks.append(CheckResult.close(f"gamma recurrence Γ(z+1)=zΓ(z), z={z}", 0.0,
                                        abs(lhs - rhs) / abs(rhs), tol, relative=False))
    for z in (0.3 + 0.7j, -0.25 + 0.1j):
        lhs = complex_gamma(z) * complex_gamma(1.0 - z)
        rhs = math.pi / cmath.sin(math.pi * z)
        checks.append(CheckResult.close(f"gamma reflection Γ(z)Γ(1−z)=π/sin(πz), z={z}", 0.0,
                                        abs(lhs - rhs) / abs(rhs), tol, relative=False))
    checks.append(CheckResult.close("gamma ratio vs lgamma, Γ(10.5)/Γ(3.25)",
                                    math.exp(math.lgamma(10.5) - math.lgamma(3.25)),
                                    gamma_ratio([10.5], [3.25]), tol))

    a, b, c = 0.75, 1.25, 1.5
    for z in (-0.4, 0.3):
        checks.append(CheckResult.close(f"hyp2f1 transformed vs direct series, z={z}",
                                        hyp2f1_series(a, b, c, z, prec), hyp2f1(a, b, c, z, prec), tol))
    for z in (0.7, 0.95):
        euler = (1.0 - z) ** (c - a - b) * hyp2f1(c - a, c - b, c, z, prec)
        checks.append(CheckResult.close(f"hyp2f1 Euler transformation self-consistency, z={z}",
                                        euler, hyp2f1(a, b, c, z, prec), tol))
    checks.append(CheckResult.close("hyp2f1 logarithmic case c−a−b=0 vs scipy, z=0.9",
                                    float(scipy_hyp2f1(0.5, 1.0, 1.5, 0.9)),
                                    hyp2f1(0.5, 1.0, 1.5, 0.9, prec), max(tol, 1e-11)))

    for z in (1.5, 3.0):
        checks.append(CheckResult.close(f"Legendre P_1(z)=z, z={z}", z, legendre_p(0.0, 1.0, z, prec), tol))
        checks.append(CheckResult.close(f"Legendre P_2(z)=(3z²−1)/2, z={z}", 0.5 * (3.0 * z * z - 1.0),
                                        legendre_p(0.0, 2.0, z, prec), tol))
        m = (z - 1.0) / (z + 1.0)
        elliptic = 2.0 / math.pi * math.sqrt(2.0 / (z + 1.0)) * float(ellipk(m))
        checks.append(CheckResult.close(f"Legendre P_(−1/2)(z) vs complete elliptic integral, z={z}",
                                        elliptic, legendre_p(0.0, -0.5, z, prec), tol))

    for x, p, q in ((0.3, 0.5, 1.0), (0.8, 2.5, 0.75), (0.05, 0.25, 1.25)):
        lhs = reg_inc_beta(x, p, q, prec)
        rhs = 1.0 - reg_inc_beta(1.0 - x, q, p, prec)
        checks.append(CheckResult.close(f"incomplete beta symmetry I_x(p,q)=1−I_(1−x)(q,p), x={x}",
                                        rhs, lhs, tol))
        checks.append(CheckResult.close(f"incomplete beta vs scipy betainc, x={x}",
                                        float(betainc(p, q, x)), lhs, max(tol, 1e-11)))
    return checks


# ---------------------------------------------------------------------------
# Мера Леви
# ---------------------------------------------------------------------------

def suite_levy(ctx: VerifyContext) -> List[CheckResult]:
    prec = ctx.precision
    checks: List[CheckResult] = []
    pairs = ctx.pairs([(0.5, 1), (1.0, 3), (1.5, 2)], [(1.0, 3)])
    n_grid = 10 if ctx.quick else 40
    for params in pairs:
        worst = 0.0
        for y in np.linspace(0.05, 4.0, n_grid):
            lhs = levy_density(-y, params, prec)
            rhs = math.exp((params.alpha - params.dim) * y) * levy_density(y, params, prec)
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
        checks.append(CheckResult.close(f"Lévy density exchange π(−y)=e^((α−d)y)π(y), {params.describe()}",
                                        0.0, worst, 1e-9, relative=False))
        worst = 0.0
        for y in (-2.0, -0.3, 0.2, 1.0, 3.0):
            tail_form = levy_density(y, params, prec)
            worst = max(worst, abs(levy_density_via_fbar(y, params, prec) - tail_form) / tail_form)
        checks.append(CheckResult.close(f"Lévy density tail form vs F̄ form, {params.describe()}",
                                        0.0, worst, 1e-9, relative=False))

    alphas = (0.5, 1.0) if ctx.quick else (0.3, 0.5, 0.8, 1.0)
    if ctx.params is None or ctx.params.dim == 1:
        for a in alphas if ctx.params is None else (ctx.params.alpha,):
            params = ProcessParams(a, 1)
            worst = 0.0
            for y in (-3.0, -1.0, -0.1, 0.1, 1.0, 3.0):
                pi1, pi2 = levy_density_d1_split(y, params)
                total = levy_density(y, params, prec)
                worst = max(worst, abs(pi1 + pi2 - total) / total)
            checks.append(CheckResult.close(f"d=1 split π=π₁+π₂, α={a:g}", 0.0, worst, 1e-10, relative=False))

    cauchy = ProcessParams(1.0, 1)
    for lam in (0.5, 1.0, 2.0, 5.0):
        expected = lam * math.tanh(0.5 * math.pi * lam)
        residual = abs(char_exponent_closed(lam, cauchy) - expected) / expected
        checks.append(CheckResult.close(f"Cauchy exponent Ψ(λ)=λ·tanh(πλ/2), λ={lam:g}",
                                        0.0, residual, 1e-10, relative=False))
    return checks


# ---------------------------------------------------------------------------
# Винер–Хопф и Виньон
# ---------------------------------------------------------------------------

def suite_wiener_hopf(ctx: VerifyContext) -> List[CheckResult]:
    prec = ctx.precision
    checks: List[CheckResult] = []
    pairs = ctx.pairs([(0.5, 1), (1.0, 2), (1.5, 3), (0.8, 2)], [(1.0, 2), (1.5, 3)])
    lambdas = (0.5, 2.0) if ctx.quick else (0.5, 1.0, 2.0, 4.0)
    for params in pairs:
        chars = LevyCharacteristics.build(params, prec)
        ratios = []
        for lam in lambdas:
            numeric = char_exponent_numeric(lam, chars)
            closed = char_exponent_closed(lam, params)
            ratios.append(numeric / closed)
            logger.info("Ψ(%g): численно %r, замкнуто %r (%s)", lam, numeric, closed, params.describe())
        ratios = np.array(ratios)
        mean = ratios.mean()
        cv = float(np.sqrt(np.mean(np.abs(ratios - mean) ** 2)) / abs(mean))
        checks.append(CheckResult.at_most(
            f"Wiener-Hopf proportionality Ψ_numeric/Ψ_closed variation, {params.describe()}", cv, 1e-4))

        if params.alpha < params.dim:
            for lam in (0.5, 2.0):
                for side, kappa in (("desc", kappa_desc), ("asc", kappa_asc)):
                    lt = renewal_laplace_transform(lam, params, side, prec)
                    checks.append(CheckResult.close(
                        f"renewal Laplace transform × ladder exponent = 1, side={side}, λ={lam:g}, "
                        f"{params.describe()}", 1.0, lt * kappa(lam, params), 1e-8))
    return checks


def suite_vigon(ctx: VerifyContext) -> List[CheckResult]:
    prec = ctx.precision
    checks: List[CheckResult] = []
    pairs = ctx.pairs([(1.0, 3), (0.5, 2)], [(1.0, 3)])
    radii = (0.5, 1.0) if ctx.quick else (0.1, 0.5, 1.0, 2.0)
    for params in pairs:
        require_transient(params, "Тождество Виньона")
        chars = LevyCharacteristics.build(params, prec)
        for r in radii:
            name = f"Vigon identity ∫V̂(dl)Π̄⁺(l+r) = Π̄_H(r), r={r:g}, {params.describe()}"
            _guarded(checks, name, lambda: CheckResult.close(
                name, ladder_levy_tail_asc(r, params), vigon_tail_numeric(r, chars), 1e-5))
    return checks


# ---------------------------------------------------------------------------
# Законы выхода
# ---------------------------------------------------------------------------

def suite_exit_laws(ctx: VerifyContext) -> List[CheckResult]:
    prec = ctx.precision
    checks: List[CheckResult] = []
    pairs = ctx.pairs([(1.0, 3), (0.5, 2), (0.7, 1)], [(1.0, 3)])
    for params in pairs:
        require_transient(params, "Законы выхода")
        a, d = params.alpha, params.dim
        tag = params.describe()
        for u in (0.5, 2.0):
            mass = integrate(lambda t: overshoot_density(t, u, params), 0.0, np.inf,
                             left_order=1.0 - 0.5 * a, precision=prec, label="overshoot mass").value
            checks.append(CheckResult.close(f"overshoot density total mass, u={u:g}, {tag}", 1.0, mass, 1e-6))

        part = integrate(lambda t: overshoot_density(t, 0.5, params), 0.0, 0.7,
                         left_order=1.0 - 0.5 * a, precision=prec, label="overshoot partial").value
        checks.append(CheckResult.close(f"overshoot CDF vs integrated density, θ=0.7, u=0.5, {tag}",
                                        part, overshoot_cdf(0.7, 0.5, params, prec), 1e-7))

        for v in (-0.5, -2.0):
            checks.append(CheckResult.close(
                f"undershoot mass = 1 − infimum CDF at −v, v={v:g}, {tag}",
                1.0 - infimum_law(-v, params, LawKind.CDF, prec), undershoot_mass(v, params, prec), 1e-6))

        mass = integrate(lambda z: renewal_density_desc(z, params), 0.0, np.inf,
                         left_order=0.5 * a, precision=prec, label="infimum mass").value
        checks.append(CheckResult.close(f"infimum density total mass, {tag}", 1.0, mass, 1e-8))

        for z in (0.1, 1.0, 3.0):
            oracle = float(betainc(0.5 * a, 0.5 * (d - a), -math.expm1(-2.0 * z)))
            checks.append(CheckResult.close(f"infimum CDF vs incomplete-beta form, z={z:g}, {tag}",
                                            oracle, infimum_law(z, params, LawKind.CDF, prec), 1e-10))

        checks.append(CheckResult.close(f"overshoot density at high level vs stationary law, θ=0.5, {tag}",
                                        stationary_overshoot_density(0.5, params),
                                        overshoot_density(0.5, 40.0, params), 1e-12))

        theta, u = 0.5, 0.5
        name = f"overshoot density vs radial exit from the ball, θ={theta:g}, u={u:g}, {tag}"
        _guarded(checks, name, lambda: CheckResult.close(
            name, overshoot_density(theta, u, params),
            math.exp(theta) * exit_radial_marginal(math.exp(theta), math.exp(-u), params, prec), 1e-7))
    return checks


# ---------------------------------------------------------------------------
# Попадание в точки
# ---------------------------------------------------------------------------

def suite_hitting(ctx: VerifyContext) -> List[CheckResult]:
    prec = ctx.precision
    checks: List[CheckResult] = []
    pairs = ctx.pairs([(1.5, 3), (1.2, 2), (1.8, 3)], [(1.5, 3)])
    for params in pairs:
        require_hits_points(params, "Попадание в точки")
        tag = params.describe()
        for y in (-1.0, 0.5, 2.0):
            r = math.exp(y)
            lhs = hit_point_prob(y, params, prec) * potential_density_u(r, r, params, prec)
            checks.append(CheckResult.close(f"point hitting P(T_y<∞)·u(e^y,e^y) = u(1,e^y), y={y:g}, {tag}",
                                            potential_density_u(1.0, r, params, prec), lhs, 1e-10))
            prob_any, first = multi_point_hitting([r], 1.0, params, prec)
            checks.append(CheckResult.close(f"one-point set reduces to point hitting, y={y:g}, {tag}",
                                            hit_point_prob(y, params, prec), prob_any, 1e-10))

        limit = hit_point_const(params) / math.gamma(0.5 * params.dim)
        checks.append(CheckResult.close(f"point hitting far above tends to sphere hitting constant, {tag}",
                                        limit, hit_point_prob(10.0, params, prec), 1e-6))

        for v, u in ((-0.5, 0.7), (-1.5, 0.3)):
            two = two_point_hitting(v, u, params, prec)
            checks.append(CheckResult.close(
                f"two-point first-hit probabilities sum to any-hit probability, v={v:g}, u={u:g}, {tag}",
                two.prob_any, two.first_at_v + two.first_at_u, 1e-12))
            checks.append(CheckResult.at_most(f"two-point any-hit probability ≤ 1, v={v:g}, u={u:g}, {tag}",
                                              two.prob_any, 1.0))

        prob_any, first = multi_point_hitting([0.5, 1.7, 3.0], 1.0, params, prec)
        checks.append(CheckResult.at_most(f"three-point any-hit probability ≤ 1, {tag}", prob_any, 1.0))
        checks.append(CheckResult.at_most(f"three-point first-hit probabilities non-negative, {tag}",
                                          -float(np.min(first)), 1e-12))
    return checks


# ---------------------------------------------------------------------------
# Тройной и четверной законы
# ---------------------------------------------------------------------------

def suite_joint_laws(ctx: VerifyContext) -> List[CheckResult]:
    prec = ctx.precision
    checks: List[CheckResult] = []
    pairs = ctx.pairs([(1.0, 3)], [(1.0, 3)])
    levels = (0.5,) if ctx.quick else (0.25, 0.5, 1.0)
    x = 1.0
    for params in pairs:
        require_transient(params, "Тройной и четверной законы")
        tag = params.describe()
        for u in levels:
            name = f"first-passage triple law marginal recovers overshoot density, u={u:g}, x={x:g}, {tag}"
            _guarded(checks, name, lambda: CheckResult.close(
                name, overshoot_density(u, x, params), triple_law_marginal_overshoot(u, x, params, prec), 1e-4))
        name = f"first-passage triple law total mass, x={x:g}, {tag}"
        _guarded(checks, name, lambda: CheckResult.close(name, 1.0, triple_law_total_mass(x, params, prec), 1e-4))
        name = f"last-passage quadruple law total mass, x={x:g}, {tag}"
        _guarded(checks, name, lambda: CheckResult.close(name, 1.0, quadruple_law_total_mass(x, params, prec), 5e-3))
    return checks


# ---------------------------------------------------------------------------
# Монте-Карло
# ---------------------------------------------------------------------------

MC_FULL = {"n_paths": 10_000, "dt": 1e-4, "t_max": 20.0, "infimum_dt": 1e-3, "infimum_t_max": 40.0,
           "level": 0.5, "ks_bound": 0.02}
MC_QUICK = {"n_paths": 2_000, "dt": 1e-3, "t_max": 20.0, "infimum_dt": 2e-3, "infimum_t_max": 30.0,
            "level": 0.5, "ks_bound": 0.06}


def _mc_settings(ctx: VerifyContext) -> Dict[str, Any]:
    base = dict(MC_QUICK if ctx.quick else MC_FULL)
    section = ctx.montecarlo.get("quick" if ctx.quick else "full", {})
    base.update(section)
    return base


def _infimum_law_for(params: ProcessParams, cfg: Dict[str, Any], seed: int, n_jobs: int) -> EmpiricalLaw:
    sim_cfg = SimConfig(params=params, n_paths=int(cfg["n_paths"]), dt=float(cfg["infimum_dt"]),
                        t_max=float(cfg["infimum_t_max"]), seed=seed, step_rule="lamperti", n_jobs=n_jobs)
    return estimate_infimum(sim_cfg)


def suite_montecarlo(ctx: VerifyContext) -> List[CheckResult]:
    if ctx.seed is None:
        raise DomainError("Проверка Монте-Карло требует явного --seed")
    prec = ctx.precision
    cfg = _mc_settings(ctx)
    params = ctx.params if ctx.params is not None else ProcessParams(1.0, 3)
    require_transient(params, "Проверка Монте-Карло")
    tag = params.describe()
    n = int(cfg["n_paths"])
    noise = 1.36 / math.sqrt(n)
    bound = float(cfg["ks_bound"])
    u = float(cfg["level"])
    checks: List[CheckResult] = []

    def overshoot_ks(dt: float) -> float:
        sim_cfg = SimConfig(params=params, n_paths=n, dt=dt, t_max=float(cfg["t_max"]),
                            seed=ctx.seed, n_jobs=ctx.n_jobs)
        law = estimate_overshoot(sim_cfg, u)
        stat, _ = ks_distance(law, lambda t: overshoot_cdf(t, u, params, prec))
        checks.append(CheckResult.at_most(f"Monte-Carlo overshoot defect, dt={dt:g}, {tag}", law.defect, 0.01))
        if law.count:
            checks.append(CheckResult.close(f"Monte-Carlo overshoot samples strictly positive, dt={dt:g}, {tag}",
                                            1.0, float(law.samples[0] > 0.0), 0.0, relative=False))
        return stat

    dt = float(cfg["dt"])
    coarse = overshoot_ks(2.0 * dt)
    fine = overshoot_ks(dt)
    checks.append(CheckResult.at_most(f"Monte-Carlo overshoot KS vs closed CDF, u={u:g}, dt={dt:g}, {tag}",
                                      fine, bound))
    checks.append(CheckResult.at_most(f"Monte-Carlo overshoot KS does not grow when dt is halved, {tag}",
                                      fine - coarse, noise))

    law = _infimum_law_for(params, cfg, ctx.seed, ctx.n_jobs)
    stat, _ = ks_distance(law, lambda z: infimum_law(z, params, LawKind.CDF, prec))
    checks.append(CheckResult.at_most(f"Monte-Carlo infimum KS vs closed CDF, {tag}", stat, bound))
    checks.append(CheckResult.at_most(f"Monte-Carlo infimum samples non-negative, {tag}",
                                      -float(law.samples[0]) if law.count else 0.0, 0.0))

    light = _infimum_law_for(ProcessParams(0.5, 3), cfg, ctx.seed, ctx.n_jobs)
    heavy = _infimum_law_for(ProcessParams(1.5, 3), cfg, ctx.seed + 1, ctx.n_jobs)
    grid = np.linspace(0.0, 3.0, 61)
    excess = max(heavy.cdf(z) - light.cdf(z) for z in grid)
    checks.append(CheckResult.at_most("Monte-Carlo infimum stochastic ordering in α at d=3 (α=0.5 shallower)",
                                      excess, noise))
    return checks


SUITES: Dict[str, Callable[[VerifyContext], List[CheckResult]]] = {
    "specfun": suite_specfun,
    "levy": suite_levy,
    "wiener-hopf": suite_wiener_hopf,
    "vigon": suite_vigon,
    "exit-laws": suite_exit_laws,
    "hitting": suite_hitting,
    "joint-laws": suite_joint_laws,
    "montecarlo": suite_montecarlo,
}


# наборы, которым нужен генератор случайных чисел
RANDOMIZED_SUITES = frozenset({"montecarlo"})


def suite_names() -> List[str]:
    return list(SUITES) + ["all"]


def run_verification(name: str, ctx: VerifyContext, command: str = "") -> RunReport:
    """Запускает набор проверок (или все наборы для name='all')."""
    if name != "all" and name not in SUITES:
        raise DomainError(f"Неизвестный набор проверок: {name}")
    names: Iterable[str] = SUITES if name == "all" else [name]
    if ctx.seed is None and any(suite in RANDOMIZED_SUITES for suite in names):
        raise DomainError(f"verify {name}: проверки Монте-Карло требуют явного --seed")
    report = RunReport(command=command or f"verify {name}")
    start = time.perf_counter()
    for suite in names:
        t0 = time.perf_counter()
        checks = SUITES[suite](ctx)
        if name == "all":
            for c in checks:
                c.name = f"{suite}: {c.name}"
        report.checks.extend(checks)
        logger.info("Набор %s: %d проверок за %.2f с", suite, len(checks), time.perf_counter() - t0)
    elapsed = time.perf_counter() - start
    logger.info("verify %s: %s за %.2f с", name, "OK" if report.ok else "FAIL", elapsed)
    logger.info("\n%s", report_to_markdown_table(report))
    report.wall_clock = elapsed
    return report
