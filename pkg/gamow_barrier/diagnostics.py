"""Invariant checks behind the ``validate`` command.

Each check returns a CheckResult with the measured residual and the threshold it is
held to; the suite never raises for a failed comparison, only for numerical errors.
"""
from typing import Callable, List, Optional, Sequence

import numpy as np

from .barrier import count_poles, pole_arrays, resonance_norm, resonance_norm_definition
from .cxmath import faddeeva_w
from .evolution import (
    bracket_factors,
    free_wave_cancellation,
    erfc_bracket_factors,
    psi_t,
    stationary_limit,
    sum_rule_residual,
)
from .greenfn import corner_at_zero, green_closed, green_pole_series, green_values
from .laplace import psi_bar_direct, psi_bar_green
from .models import (
    BarrierParams,
    CheckResult,
    GreenQuery,
    RegionTag,
    ResonancePole,
    ScatteringKind,
    SeriesControl,
    SumRule,
    TimePoint,
)
from .oracle import faddeeva_quadrature, oracle_psi
from .stationary import scattering_solution, transmission
from .utils.logging import RunLogger, get_logger


def _check(name: str, measured: float, threshold: float, detail: str = "") -> CheckResult:
    measured = float(measured)
    return CheckResult(name=name, measured=measured, threshold=threshold, passed=bool(measured <= threshold), detail=detail)


def _relative(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def check_poles(params: BarrierParams, poles: Sequence[ResonancePole]) -> List[CheckResult]:
    positive = [pole for pole in poles if pole.n > 0]
    by_index = {pole.n: pole.p for pole in poles}
    mirror = max(abs(by_index[-pole.n] + np.conj(pole.p)) / abs(pole.p) for pole in positive)
    outside = sum(1 for pole in positive if not -0.25 * np.pi < np.angle(pole.p) < 0.0)
    im_min = min(pole.p.imag for pole in positive)
    box = (0.0, positive[-1].p.real + 0.5 * np.pi / params.L, im_min - 1.0, -1e-3)
    counted = count_poles(params, box)
    first = positive[: min(5, len(positive))]
    norm_gap = max(_relative(resonance_norm_definition(params, pole), resonance_norm(params, pole)) for pole in first)
    return [
        _check("pole mirror symmetry", mirror, 1e-12),
        _check("pole scaled residual", max(pole.residual for pole in poles), 1e-10),
        _check("poles outside -pi/4 < arg p < 0", outside, 0),
        _check("argument-principle count", abs(counted - len(positive)), 0, f"counted {counted}"),
        _check("norm closed form vs integral", norm_gap, 1e-9),
    ]


def check_green(params: BarrierParams, poles: Sequence[ResonancePole], pairs: int) -> List[CheckResult]:
    rng = np.random.default_rng(7)
    points = rng.uniform(0.0, params.L, size=(20, 2))
    momenta = rng.uniform(0.5, 6.0, 20) + 1j * rng.uniform(-0.5, 0.5, 20)
    symmetry = max(
        _relative(green_values(params, x, y, p), green_values(params, y, x, p))
        for (x, y), p in zip(points, momenta)
    )
    kappa = params.kappa
    zero = abs(corner_at_zero(params) + 1.0 / (kappa * np.tanh(kappa * params.L)))
    query = GreenQuery(0.3 * params.L, 0.7 * params.L, 2.0 + 0j)
    series = _relative(green_pole_series(params, query, poles, pairs), green_closed(params, query))
    return [
        _check("Green symmetry", symmetry, 1e-13),
        _check("G(0,0,0) closed form", zero, 1e-12),
        _check("Green pole series at (0.3L, 0.7L, 2)", series, 1e-3, f"{pairs} pairs"),
    ]


def check_psibar(params: BarrierParams, k: float) -> List[CheckResult]:
    L = params.L
    p = 1.7 + 0.4j
    worst = 0.0
    for x in (-0.5 * L, -0.1 * L, 0.25 * L, 0.5 * L, 0.8 * L, 1.2 * L, 2.0 * L):
        region = RegionTag.of(x, L)
        worst = max(worst, _relative(psi_bar_green(params, k, region, x, p), psi_bar_direct(params, k, x, p)))
    return [_check("psibar Green route vs matching route", worst, 1e-9)]


def check_scattering(params: BarrierParams, momenta: Sequence[float]) -> List[CheckResult]:
    flux = 0.0
    routes = 0.0
    for k in momenta:
        solution = scattering_solution(ScatteringKind.IN_R, params, k)
        flux = max(flux, abs(abs(solution.R) ** 2 + abs(solution.T) ** 2 - 1.0))
        routes = max(routes, _relative(transmission(params, k), solution.T))
    return [
        _check("flux |R|^2 + |T|^2 = 1", flux, 1e-12),
        _check("transmission Green route vs matching", routes, 1e-11),
    ]


def check_special_functions() -> List[CheckResult]:
    rng = np.random.default_rng(11)
    z = rng.uniform(-6.0, 6.0, 1000) + 1j * rng.uniform(-6.0, 6.0, 1000)
    w = faddeeva_w(z)
    conj = np.max(np.abs(faddeeva_w(np.conj(z)) - np.conj(faddeeva_w(-z))) / (1.0 + np.abs(w)))
    return [
        _check("w(0) = 1", abs(faddeeva_w(0j) - 1.0), 1e-14),
        _check("w conjugation identity", conj, 1e-13),
        _check("w(i) vs integral representation", abs(faddeeva_w(1j) - faddeeva_quadrature(1j)), 1e-10),
    ]


def check_brackets(params: BarrierParams, k: float, poles: Sequence[ResonancePole]) -> List[CheckResult]:
    worst = 0.0
    for region, x in ((RegionTag.II, 0.5 * params.L), (RegionTag.III, 1.5 * params.L)):
        for tau in (0.1, 0.2, 0.5):
            time = TimePoint(t=2.0 * params.m * tau, m=params.m)
            kernel_route = bracket_factors(params, region, x, time, k, poles, pairs=3)
            erfc_form = erfc_bracket_factors(params, region, x, time, k, _first_poles(poles, 3))
            for name, value in erfc_form.items():
                worst = max(worst, float(np.max(np.abs(value - kernel_route[name]) / np.maximum(np.abs(value), 1e-300))))
    return [_check("bracket factors erfc form vs kernels", worst, 1e-9)]


def _first_poles(poles: Sequence[ResonancePole], pairs: int) -> np.ndarray:
    return np.stack(pole_arrays(poles, pairs))


def check_limits(
    params: BarrierParams, k: float, poles: Sequence[ResonancePole], pairs: int, control: SeriesControl
) -> List[CheckResult]:
    x = 0.5 * params.L

    def deviation(t: float) -> float:
        time = TimePoint(t=t, m=params.m)
        psi = psi_t(params, RegionTag.II, x, time, k, poles, pairs, control)
        return _relative(psi, stationary_limit(params, RegionTag.II, x, time, k))

    early = [abs(psi_t(params, RegionTag.II, x, TimePoint(t, params.m), k, poles, pairs, control) - np.exp(1j * k * x))
             for t in (1e-1, 1e-2, 1e-3)]
    late_10, late_50 = deviation(10.0), deviation(50.0)
    cancel = [abs(free_wave_cancellation(params, 1.5 * params.L, TimePoint(t, params.m), k)) for t in (10.0, 50.0)]
    s_rule = {n: sum_rule_residual(params, SumRule.S_RULE, x, poles, n) for n in (pairs // 2, pairs)}
    return [
        _check("t -> 0 recovery is monotone", float(not (early[0] > early[1] > early[2])), 0, repr(early)),
        _check("stationary limit deviation at t=50", late_50, 1e-2),
        _check("stationary limit deviation shrinks from t=10 to t=50", late_50 / late_10, 1.0),
        _check("free-wave cancellation shrinks from t=10 to t=50", cancel[1] / cancel[0], 1.0),
        _check("S-rule residual", s_rule[pairs], 1e-2, f"{pairs // 2} pairs: {s_rule[pairs // 2]:.3e}"),
    ]


def check_oracle(
    params: BarrierParams, k: float, poles: Sequence[ResonancePole], pairs: int, control: SeriesControl
) -> List[CheckResult]:
    x, t = 1.5 * params.L, 0.2
    time = TimePoint(t=t, m=params.m)
    series = psi_t(params, RegionTag.III, x, time, k, poles, pairs, control)
    reference = oracle_psi(params, k, x, t, poles=poles).value
    causal = oracle_psi(params, k, 0.5 * params.L, -0.1).value
    return [
        _check("pole series vs inverse-Laplace quadrature", abs(series - reference) / max(abs(reference), 1.0), 1e-2),
        _check("causality at t < 0", abs(causal), 1e-6),
    ]


def run_validation(
    params: BarrierParams,
    k: float,
    poles: Sequence[ResonancePole],
    control: Optional[SeriesControl] = None,
    include_oracle: bool = True,
    logger: Optional[RunLogger] = None,
) -> List[CheckResult]:
    """Run every check group and collect the results in a fixed order"""
    control = control or SeriesControl()
    logger = logger or get_logger("gamow.validate")
    pairs = min(control.pairs, sum(1 for pole in poles if pole.n > 0))
    groups: List[Callable[[], List[CheckResult]]] = [
        lambda: check_special_functions(),
        lambda: check_poles(params, poles),
        lambda: check_green(params, poles, pairs),
        lambda: check_psibar(params, k),
        lambda: check_scattering(params, (1.0, 3.0, 5.0)),
        lambda: check_brackets(params, k, poles),
        lambda: check_limits(params, k, poles, pairs, control),
    ]
    if include_oracle:
        groups.append(lambda: check_oracle(params, k, poles, pairs, control))
    results: List[CheckResult] = []
    for group in groups:
        batch = group()
        for result in batch:
            logger.debug("check", name=result.name, measured=result.measured, passed=result.passed)
        results.extend(batch)
    return results
