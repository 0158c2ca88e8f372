"""Time-domain solution psi(x, t) through the momentum kernels

    K[f](a) = (1/i pi) int dp e^{-i tau p^2 + i p a} f(p),

taken along a path above every pole of f. With I0 = K[1/(p - q)], I1 = K[p/(p - q)],
I2 = K[p^2/(p - q)] and I = K[p], psi = (i/alpha) K[p psibar]. The offset a is x - L
in region III, 0 inside the barrier and -x in region I (mirrored coordinate).
"""
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.special import erfc

from .barrier import plus_minus
from .cxmath import scaled_erfc
from .exceptions import DomainError
from .greenfn import corner_at_zero, green_values
from .laplace import PoleData, segment_exp_integral
from .models import (
    BarrierParams,
    BracketFactors,
    KernelKind,
    KernelRequest,
    RegionTag,
    ResonancePole,
    ScatteringKind,
    SeriesControl,
    SumRule,
    TimePoint,
    WaveSample,
)
from .series import alternating_mean, truncate_pairs
from .stationary import scattering_solution, transmission
from .utils.logging import RunLogger, get_logger

_ROT = np.exp(0.25j * np.pi)


def _require_tau(tau: float) -> None:
    if not tau > 0:
        raise DomainError(f"kernels need tau > 0, got tau={tau}")


def y_argument(a, q, tau: float):
    """y_q = e^{-i pi/4} (a - 2 tau q) / (2 sqrt(tau))"""
    return np.conj(_ROT) * (np.asarray(a) - 2.0 * tau * np.asarray(q, dtype=complex)) / (2.0 * np.sqrt(tau))


def _phase(a, tau: float):
    return np.exp(1j * np.asarray(a) ** 2 / (4.0 * tau))


def kernel_J(a, tau: float):
    """K[1] = -e^{i pi/4} e^{i a^2/4tau} / sqrt(pi tau)"""
    _require_tau(tau)
    return -_ROT / np.sqrt(np.pi * tau) * _phase(a, tau)


def kernel_I(a, tau: float):
    return np.asarray(a) / (2.0 * tau) * kernel_J(a, tau)


def kernel_I0(a, q, tau: float):
    """K[1/(p - q)] = -e^{i a^2/4tau} e^{y_q^2} erfc(y_q), i.e. -2 M(a, q, t)"""
    _require_tau(tau)
    return -_phase(a, tau) * np.asarray(scaled_erfc(y_argument(a, q, tau)), dtype=complex)


def kernel_I1(a, q, tau: float):
    """K[p/(p - q)] = -i d/da I0"""
    return kernel_J(a, tau) + np.asarray(q) * kernel_I0(a, q, tau)


def kernel_I2(a, q, tau: float):
    """K[p^2/(p - q)] = (-i d/da)^2 I0"""
    q = np.asarray(q)
    return kernel_I(a, tau) + q * kernel_J(a, tau) + q * q * kernel_I0(a, q, tau)


def kernel(req: KernelRequest, params: BarrierParams) -> complex:
    """Kernel value at position ``req.x`` (offset x - L)"""
    _require_tau(req.tau)
    a = req.x - params.L
    if req.kind is KernelKind.I:
        return complex(kernel_I(a, req.tau))
    evaluate = {KernelKind.I0: kernel_I0, KernelKind.I1: kernel_I1, KernelKind.I2: kernel_I2}[req.kind]
    return complex(evaluate(a, req.q, req.tau))


def kernel_offset(params: BarrierParams, region: RegionTag, x: float) -> float:
    if region is RegionTag.III:
        return x - params.L
    if region is RegionTag.I:
        return -x
    return 0.0


def bracket_factors(
    params: BarrierParams,
    region: RegionTag,
    x: float,
    time: TimePoint,
    k: float,
    poles: Sequence[ResonancePole],
    pairs: Optional[int] = None,
) -> BracketFactors:
    """Time factors of every term of psi in ``region``; per-pole arrays have rows n > 0, n < 0"""
    tau = time.tau
    _require_tau(tau)
    p_n = PoleData(params, k, poles, pairs if pairs is not None else sum(1 for pole in poles if pole.n > 0)).p
    a = kernel_offset(params, region, x)
    factors = BracketFactors(region=region, x=x, tau=tau)
    if region is RegionTag.II:
        factors.scalars = {"B": complex(kernel_I0(0.0, -k, tau)), "S": complex(kernel_I0(0.0, k, tau))}
        factors.per_pole = {
            "A_n": kernel_I1(0.0, p_n, tau),
            "B_n": kernel_I0(0.0, p_n, tau),
            "S_n": kernel_I0(0.0, p_n, tau),
        }
        return factors
    shared = {
        "C1": complex(kernel_I0(0.0, -k, tau)),
        "C2": complex(kernel_I0(0.0, k, tau)),
        "C3": complex(kernel_I0(a, -k, tau)),
        "C4": complex(kernel_I0(a, k, tau)),
    }
    if region is RegionTag.III:
        factors.scalars = {
            "B_0": complex(kernel_I(a, tau)),
            "B_-k": complex(kernel_I2(a, -k, tau)),
            "S": complex(kernel_I0(a, k, tau)),
            **shared,
        }
        factors.per_pole = {
            "A_n": kernel_I1(a, p_n, tau),
            "B_n": kernel_I2(a, p_n, tau),
            "S_n": kernel_I0(a, p_n, tau),
        }
        return factors
    factors.scalars = {
        "B": complex(kernel_I0(a, -k, tau)),
        "S_0": complex(kernel_I(a, tau)),
        "S_k": complex(kernel_I2(a, k, tau)),
        **shared,
    }
    factors.per_pole = {
        "A_n": kernel_I1(a, p_n, tau),
        "B_n": kernel_I0(a, p_n, tau),
        "S_n": kernel_I2(a, p_n, tau),
    }
    return factors


def erfc_bracket_factors(
    params: BarrierParams,
    region: RegionTag,
    x: float,
    time: TimePoint,
    k: float,
    p_n: np.ndarray,
) -> Dict[str, np.ndarray]:
    """Bracket factors written with raw erfc, exponentials and y_q, term by term.

    Independent of the kernel route; only usable where exp(y^2) erfc(y) does not overflow.
    """
    tau = time.tau
    _require_tau(tau)
    p_n = np.asarray(p_n, dtype=complex)
    root = _ROT * np.sqrt(tau)  # sqrt(i tau)
    head = _ROT / np.sqrt(np.pi * tau)
    if region is RegionTag.II:
        en = np.exp(-1j * tau * p_n ** 2)
        ek = np.exp(-1j * tau * k * k)
        return {
            "A_n": -p_n * en * erfc(1j * root * p_n) - head,
            "B": -ek * erfc(-1j * root * k),
            "B_n": -en * erfc(1j * root * p_n),
            "S": -ek * erfc(1j * root * k),
            "S_n": -en * erfc(1j * root * p_n),
        }
    if region is not RegionTag.III:
        raise DomainError("erfc-form factors exist for regions II and III only")
    a = x - params.L
    ph = _phase(a, tau)

    def scaled(q):
        y = y_argument(a, q, tau)
        return np.exp(y * y) * erfc(y)

    ek = np.exp(-1j * tau * k * k)
    return {
        "A_n": -ph * (p_n * scaled(p_n) + head),
        "B_0": -head * a / (2.0 * tau) * ph,
        "B_-k": -ph * (k * k * scaled(-k) + head * (-k + a / (2.0 * tau))),
        "B_n": -ph * (p_n ** 2 * scaled(p_n) + head * (p_n + a / (2.0 * tau))),
        "S": -ph * scaled(k),
        "S_n": -ph * scaled(p_n),
        "C1": -ek * erfc(-1j * root * k),
        "C2": -ek * erfc(1j * root * k),
        "C3": -ph * scaled(-k),
        "C4": -ph * scaled(k),
    }


def _time_terms(
    params: BarrierParams, region: RegionTag, x: float, tau: float, k: float, data: PoleData
) -> Tuple[complex, np.ndarray]:
    """(non-resonant part, per-pair contributions) of psi(x, t)"""
    L = params.L
    ekl = np.exp(1j * k * L)
    ekx = np.exp(1j * k * x)
    a = kernel_offset(params, region, x)
    pn = data.p

    if region is RegionTag.II:
        ux = data.u(x)
        nonres = (
            1j * k * complex(green_values(params, L, x, -k)) * ekl * kernel_I0(0.0, -k, tau)
            - 1j * k * complex(green_values(params, 0.0, x, k)) * kernel_I0(0.0, k, tau)
        )
        per_pole = (
            -ux * data.weight / data.norm * kernel_I1(0.0, pn, tau)
            - 1j * ekl * pn / (k + pn) * data.uL * ux / data.norm * kernel_I0(0.0, pn, tau)
            + 1j * pn / (k - pn) * data.u0 * ux / data.norm * kernel_I0(0.0, pn, tau)
        )
        return complex(nonres), per_pole.sum(axis=0)

    free = -0.5 * ekx * (kernel_I0(0.0, -k, tau) + kernel_I0(0.0, k, tau))
    corner0 = corner_at_zero(params)
    if region is RegionTag.III:
        nonres = (
            -1j * corner0 * ekl / k * kernel_I(a, tau)
            + 1j * complex(green_values(params, L, L, -k)) * ekl / k * kernel_I2(a, -k, tau)
            - 1j * k * complex(green_values(params, 0.0, L, k)) * kernel_I0(a, k, tau)
            + free
            + 0.5 * ekl * (kernel_I0(a, -k, tau) + kernel_I0(a, k, tau))
        )
        per_pole = (
            -data.uL * data.weight / data.norm * kernel_I1(a, pn, tau)
            - 1j * ekl / (pn * (k + pn)) * data.uL ** 2 / data.norm * kernel_I2(a, pn, tau)
            + 1j * pn / (k - pn) * data.u0 * data.uL / data.norm * kernel_I0(a, pn, tau)
        )
        return complex(nonres), per_pole.sum(axis=0)

    nonres = (
        1j * k * ekl * complex(green_values(params, L, 0.0, -k)) * kernel_I0(a, -k, tau)
        + 1j / k * corner0 * kernel_I(a, tau)
        - 1j / k * complex(green_values(params, 0.0, 0.0, k)) * kernel_I2(a, k, tau)
        + free
        + 0.5 * (kernel_I0(a, -k, tau) + kernel_I0(a, k, tau))
    )
    per_pole = (
        -data.u0 * data.weight / data.norm * kernel_I1(a, pn, tau)
        - 1j * ekl * pn / (k + pn) * data.uL * data.u0 / data.norm * kernel_I0(a, pn, tau)
        + 1j / (pn * (k - pn)) * data.u0 ** 2 / data.norm * kernel_I2(a, pn, tau)
    )
    return complex(nonres), per_pole.sum(axis=0)


def tau_min_default(params: BarrierParams) -> float:
    return 1e-5 * 2.0 * params.m * params.L ** 2


def psi_t_sample(
    params: BarrierParams,
    region: RegionTag,
    x: float,
    time: TimePoint,
    k: float,
    poles: Sequence[ResonancePole],
    pairs: int,
    control: Optional[SeriesControl] = None,
    logger: Optional[RunLogger] = None,
) -> WaveSample:
    """psi(x, t) with its truncation record"""
    if not k > 0:
        raise DomainError(f"incident momentum must be positive, got k={k}")
    if RegionTag.of(x, params.L) is not region:
        raise DomainError(f"x={x} does not lie in region {region.value}")
    _require_tau(time.tau)
    control = control or SeriesControl()
    tau_min = control.tau_min if control.tau_min is not None else tau_min_default(params)
    if time.tau < tau_min:
        (logger or get_logger("gamow.evolution")).warning(
            "reduced time below tau_min; returning the exact t -> 0 limit", tau=time.tau, tau_min=tau_min
        )
        return WaveSample(region=region, x=x, t=time.t, psi=complex(np.exp(1j * k * x)), limit_value=True)
    data = PoleData(params, k, poles, pairs)
    nonres, pair_terms = _time_terms(params, region, x, time.tau, k, data)
    # u_n(0) u_n(L) / N_n grows like p_n, so outside the barrier the pairs alternate without decaying
    outcome = truncate_pairs(
        nonres,
        alternating_mean(pair_terms),
        control.model_copy(update={"pairs": pairs}),
        logger,
        label=f"psi region {region.value} at x={x}, t={time.t}",
    )
    return WaveSample(
        region=region,
        x=x,
        t=time.t,
        psi=outcome.value,
        tail_estimate=outcome.tail_estimate,
        pairs_used=outcome.pairs_used,
    )


def psi_t(
    params: BarrierParams,
    region: RegionTag,
    x: float,
    time: TimePoint,
    k: float,
    poles: Sequence[ResonancePole],
    pairs: int,
    control: Optional[SeriesControl] = None,
) -> complex:
    return psi_t_sample(params, region, x, time, k, poles, pairs, control).psi


def stationary_limit(params: BarrierParams, region: RegionTag, x: float, time: TimePoint, k: float) -> complex:
    """Large-time form phi_in_r(x) e^{-iE_k t} (without the energy normalisation)"""
    phase = np.exp(-1j * time.tau * k * k)
    if region is RegionTag.II:
        return complex(2j * k * green_values(params, 0.0, x, k) * phase)
    if region is RegionTag.III:
        return complex(transmission(params, k) * np.exp(1j * k * x) * phase)
    reflected = scattering_solution(ScatteringKind.IN_R, params, k).R
    return complex((np.exp(1j * k * x) + reflected * np.exp(-1j * k * x)) * phase)


def free_wave_cancellation(params: BarrierParams, x: float, time: TimePoint, k: float) -> complex:
    """-1/2 e^{ikx} C2 + 1/2 e^{ikL} C4 in region III; its stationary parts cancel"""
    tau = time.tau
    a = x - params.L
    return complex(
        -0.5 * np.exp(1j * k * x) * kernel_I0(0.0, k, tau) + 0.5 * np.exp(1j * k * params.L) * kernel_I0(a, k, tau)
    )


def _sine_overlap(params: BarrierParams, p_n: np.ndarray, mode: int) -> np.ndarray:
    """int_0^L sin(mode pi x'/L) u_n(x') dx'"""
    L = params.L
    pp = np.sqrt(p_n * p_n - params.kappa2 + 0j)
    wave = mode * np.pi / L

    def sine_exp(beta):
        return (segment_exp_integral(beta + wave, 0.0, L) - segment_exp_integral(beta - wave, 0.0, L)) / 2j

    plus, minus = plus_minus(params, p_n, pp)
    return minus * sine_exp(pp) - plus * sine_exp(-pp)


def sum_rule_residual(
    params: BarrierParams,
    which: SumRule,
    x: float,
    poles: Sequence[ResonancePole],
    pairs: int,
    mode: int = 1,
) -> float:
    """Residual of the completeness relations of the Gamow functions after ``pairs`` pairs.

    B-rule: sum u_n(L) u_n(x)/N_n = 0, S-rule: sum u_n(0) u_n(x)/N_n = 0 (0 < x < L);
    delta-rule: sum u_n(x) int sin(mode pi x'/L) u_n(x') dx' / N_n = sin(mode pi x/L).
    """
    if not 0.0 < x < params.L:
        raise DomainError("sum rules are checked at interior points")
    data = PoleData(params, 1.0, poles, pairs)
    ux = data.u(x)
    if which is SumRule.B_RULE:
        return float(abs(np.sum(data.uL * ux / data.norm)))
    if which is SumRule.S_RULE:
        return float(abs(np.sum(data.u0 * ux / data.norm)))
    overlap = _sine_overlap(params, data.p, mode)
    return float(abs(np.sum(ux * overlap / data.norm) - np.sin(mode * np.pi * x / params.L)))
