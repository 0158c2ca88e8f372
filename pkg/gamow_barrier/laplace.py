"""Laplace-domain solution psibar(x, p) of the plane-wave problem.

psibar obeys [d^2/dx^2 + p^2 - 2mV 1_[0,L]] psibar = i alpha e^{ikx} with outgoing
behaviour e^{-ipx} for x < 0 and e^{ip(x-L)} for x > L. Two closed routes are offered
(amplitude matching and Green-function surface terms) plus the pole expansion of p psibar.
"""
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .barrier import norm_closed, p_prime, plus_minus, pole_arrays, resonant_u_values, sinc
from .exceptions import DomainError
from .greenfn import check_pole_proximity, corner_at_zero, green_from_left, green_from_right, green_values
from .models import AmplitudeSet, BarrierParams, RegionTag, ResonancePole, SeriesControl, SeriesOutcome
from .series import alternating_mean, truncate_pairs
from .utils.logging import RunLogger

_DEGENERACY = 1e-6


def segment_exp_integral(beta, a: float, b: float):
    """int_a^b e^{i beta s} ds, regular at beta = 0"""
    beta = np.asarray(beta, dtype=complex)
    half = 0.5 * (b - a)
    return np.exp(0.5j * beta * (a + b)) * 2.0 * half * sinc(beta * half)


def particular_coefficients(params: BarrierParams, k: float, p):
    """(a_out, a_in): amplitudes of e^{ikx} outside and inside the barrier"""
    p = np.asarray(p, dtype=complex)
    a_out = 1j * params.alpha / (p * p - k * k)
    a_in = 1j * params.alpha / (p * p - params.kappa2 - k * k)
    return a_out, a_in


def _check_momentum(params: BarrierParams, k: float, p: complex) -> None:
    if not k > 0:
        raise DomainError(f"incident momentum must be positive, got k={k}")
    p = complex(p)
    scale = max(abs(k), 1.0)
    if min(abs(p - k), abs(p + k)) < _DEGENERACY * scale:
        raise DomainError(f"p={p!r} is at +-k; these poles are absorbed analytically by the time-domain kernels")
    threshold = np.sqrt(k * k + params.kappa2)
    if min(abs(p - threshold), abs(p + threshold)) < _DEGENERACY * threshold:
        raise DomainError(f"p={p!r} makes p'^2 = k^2; the inner particular solution degenerates")


def matching_matrix(params: BarrierParams, p):
    """Coefficient matrix over (B, M, N, A) for value and slope continuity at 0 and L"""
    p = np.asarray(p, dtype=complex)
    pp = p_prime(params, p)
    e = np.exp(1j * pp * params.L)
    zero = np.zeros_like(p)
    one = np.ones_like(p)
    rows = [
        [one, -one, -one, zero],
        [-1j * p, -1j * pp, 1j * pp, zero],
        [zero, e, 1.0 / e, -one],
        [zero, 1j * pp * e, -1j * pp / e, -1j * p],
    ]
    return np.moveaxis(np.array(rows, dtype=complex), (0, 1), (-2, -1))


def matching_solve(params: BarrierParams, k: float, p) -> Tuple[np.ndarray, ...]:
    """Vectorised (B, M, N, A); A multiplies e^{ip(x-L)} in region III"""
    p = np.asarray(p, dtype=complex)
    a_out, a_in = particular_coefficients(params, k, p)
    jump = a_in - a_out
    phase = np.exp(1j * k * params.L)
    rhs = np.stack([jump, 1j * k * jump, -phase * jump, -1j * k * phase * jump], axis=-1)
    solved = np.linalg.solve(matching_matrix(params, p), rhs[..., None])[..., 0]
    return solved[..., 0], solved[..., 1], solved[..., 2], solved[..., 3]


def matching_amplitudes(params: BarrierParams, k: float, p: complex) -> AmplitudeSet:
    _check_momentum(params, k, p)
    check_pole_proximity(params, p)
    b, m, n, a = (complex(v) for v in matching_solve(params, k, p))
    return AmplitudeSet(A=a, B=b, M=m, N=n, k=float(k), p=complex(p))


def psi_bar_values(params: BarrierParams, k: float, x: float, p, derivative: bool = False):
    """Vectorised psibar(x, p) (or its x-derivative) over an array of p, no domain checks"""
    p = np.asarray(p, dtype=complex)
    b, m, n, a = matching_solve(params, k, p)
    a_out, a_in = particular_coefficients(params, k, p)
    src = np.exp(1j * k * x)
    if x < 0:
        if derivative:
            return -1j * p * b * np.exp(-1j * p * x) + 1j * k * a_out * src
        return b * np.exp(-1j * p * x) + a_out * src
    if x > params.L:
        out = np.exp(1j * p * (x - params.L))
        if derivative:
            return 1j * p * a * out + 1j * k * a_out * src
        return a * out + a_out * src
    pp = p_prime(params, p)
    up, down = np.exp(1j * pp * x), np.exp(-1j * pp * x)
    if derivative:
        return 1j * pp * (m * up - n * down) + 1j * k * a_in * src
    return m * up + n * down + a_in * src


def psi_bar_direct(params: BarrierParams, k: float, x: float, p: complex) -> complex:
    """psibar(x, p) from the 4x4 matching solve"""
    _check_momentum(params, k, p)
    check_pole_proximity(params, p)
    return complex(psi_bar_values(params, k, x, p))


def _check_region(params: BarrierParams, region: RegionTag, x: float) -> None:
    if RegionTag.of(x, params.L) is not region:
        raise DomainError(f"x={x} does not lie in region {region.value}")


def green_integral(params: BarrierParams, k: float, x: float, p: complex) -> complex:
    """int_0^L G(x', x, p) e^{ikx'} dx' from the exponential form of G"""
    p = complex(p)
    pp = complex(p_prime(params, p))
    if pp == 0:
        raise DomainError("the exponential Green route is singular at p' = 0")
    plus, minus = (complex(v) for v in plus_minus(params, p, pp))
    L = params.L
    e = np.exp(1j * pp * L)
    d = minus ** 2 * e - plus ** 2 / e

    def left_solution(s: float) -> complex:
        return minus * np.exp(1j * pp * s) - plus * np.exp(-1j * pp * s)

    below = minus * segment_exp_integral(pp + k, 0.0, x) - plus * segment_exp_integral(k - pp, 0.0, x)
    above = minus * e * segment_exp_integral(k - pp, x, L) - plus / e * segment_exp_integral(k + pp, x, L)
    return complex(1j / (2.0 * pp * d) * (left_solution(L - x) * below + left_solution(x) * above))


def psi_bar_green_parts(params: BarrierParams, k: float, region: RegionTag, x: float, p: complex) -> Dict[str, complex]:
    """Labelled pieces of psibar from the Green-function surface formulas.

    ``integral`` is the bulk source term, ``surface_L`` and ``surface_0`` the boundary
    terms at x = L and x = 0 (the latter alone is the shutter problem), ``free`` the
    free-propagation pair outside the barrier.
    """
    _check_momentum(params, k, p)
    _check_region(params, region, x)
    check_pole_proximity(params, p)
    alpha = params.alpha
    L = params.L
    a_out = complex(particular_coefficients(params, k, p)[0])
    anchor = {RegionTag.I: 0.0, RegionTag.II: x, RegionTag.III: L}[region]
    parts = {
        "integral": 1j * alpha * green_integral(params, k, anchor, p),
        "surface_L": complex(-alpha * np.exp(1j * k * L) * green_from_right(params, anchor, p) / (p + k)),
        "surface_0": complex(-alpha * green_from_left(params, anchor, p) / (p - k)),
        "free": 0j,
    }
    if region is RegionTag.II:
        return parts
    if region is RegionTag.I:
        out = np.exp(-1j * p * x)
        source = a_out
    else:
        out = np.exp(1j * p * (x - L))
        source = a_out * np.exp(1j * k * L)
    parts = {name: complex(value * out) for name, value in parts.items()}
    parts["free"] = complex(a_out * np.exp(1j * k * x) - source * out)
    return parts


def psi_bar_green(params: BarrierParams, k: float, region: RegionTag, x: float, p: complex) -> complex:
    return complex(sum(psi_bar_green_parts(params, k, region, x, p).values()))


def resonance_weights(params: BarrierParams, k: float, p_n):
    """int_0^L u_n(x') e^{ikx'} dx' in closed form"""
    p_n = np.asarray(p_n, dtype=complex)
    pp = p_prime(params, p_n)
    plus, minus = plus_minus(params, p_n, pp)
    L = params.L
    return minus * segment_exp_integral(pp + k, 0.0, L) - plus * segment_exp_integral(k - pp, 0.0, L)


class PoleData:
    """Per-pole quantities shared by the p-domain and time-domain expansions"""

    def __init__(self, params: BarrierParams, k: float, poles: Sequence[ResonancePole], pairs: int):
        p_pos, p_neg = pole_arrays(poles, pairs)
        # rows: n > 0 and n < 0
        self.p = np.stack([p_pos, p_neg])
        self.norm = norm_closed(params, self.p)
        self.u0 = resonant_u_values(params, self.p, 0.0)
        self.uL = resonant_u_values(params, self.p, params.L)
        self.weight = resonance_weights(params, k, self.p)
        self.params = params
        self.k = k

    def u(self, x: float) -> np.ndarray:
        return resonant_u_values(self.params, self.p, x)

    @property
    def pairs(self) -> int:
        return self.p.shape[1]


def _fixed_green(params: BarrierParams, k: float, region: RegionTag, x: float) -> Dict[str, complex]:
    L = params.L
    if region is RegionTag.II:
        return {
            "L_minus_k": complex(green_values(params, L, x, -k)),
            "0_k": complex(green_values(params, 0.0, x, k)),
        }
    if region is RegionTag.III:
        return {
            "corner_0": corner_at_zero(params),
            "corner_minus_k": complex(green_values(params, L, L, -k)),
            "through_k": complex(green_values(params, 0.0, L, k)),
        }
    return {
        "L_minus_k": complex(green_values(params, L, 0.0, -k)),
        "corner_0": corner_at_zero(params),
        "corner_k": complex(green_values(params, 0.0, 0.0, k)),
    }


def series_terms(
    params: BarrierParams, k: float, region: RegionTag, x: float, p: complex, data: PoleData
) -> Tuple[complex, np.ndarray]:
    """(non-resonant part, per-pair contributions) of p psibar(x, p)"""
    alpha = params.alpha
    L = params.L
    pn = data.p
    ekl = np.exp(1j * k * L)
    g = _fixed_green(params, k, region, x)
    free_factor = 0.5j * alpha * (1.0 / (p + k) + 1.0 / (p - k))

    if region is RegionTag.II:
        ux = data.u(x)
        nonres = alpha * ekl * k / (p + k) * g["L_minus_k"] - alpha * k / (p - k) * g["0_k"]
        per_pole = (
            1j * alpha * p / (p - pn) * ux * data.weight / data.norm
            - alpha * ekl * pn / ((p - pn) * (k + pn)) * data.uL * ux / data.norm
            + alpha * pn / ((p - pn) * (k - pn)) * data.u0 * ux / data.norm
        )
    elif region is RegionTag.III:
        out = np.exp(1j * p * (x - L))
        nonres = out * (
            -alpha * p / k * g["corner_0"] * ekl
            + alpha * p * p / (k * (p + k)) * g["corner_minus_k"] * ekl
            + alpha * k / (k - p) * g["through_k"]
        ) + free_factor * (np.exp(1j * k * x) - out * ekl)
        per_pole = out * (
            1j * alpha * p / (p - pn) * data.uL * data.weight / data.norm
            - alpha * ekl * p * p / ((p - pn) * pn * (k + pn)) * data.uL ** 2 / data.norm
            + alpha * pn / ((p - pn) * (k - pn)) * data.u0 * data.uL / data.norm
        )
    else:
        out = np.exp(-1j * p * x)
        nonres = out * (
            alpha * ekl * k / (p + k) * g["L_minus_k"]
            + alpha * p / k * g["corner_0"]
            - alpha / k * p * p / (p - k) * g["corner_k"]
        ) + free_factor * (np.exp(1j * k * x) - out)
        per_pole = out * (
            1j * alpha * p / (p - pn) * data.u0 * data.weight / data.norm
            - alpha * ekl * pn / ((p - pn) * (k + pn)) * data.uL * data.u0 / data.norm
            + alpha * p * p / (pn * (p - pn) * (k - pn)) * data.u0 ** 2 / data.norm
        )
    return complex(nonres), per_pole.sum(axis=0)


def p_psi_bar_series_outcome(
    params: BarrierParams,
    k: float,
    region: RegionTag,
    x: float,
    p: complex,
    poles: Sequence[ResonancePole],
    pairs: int,
    control: Optional[SeriesControl] = None,
    logger: Optional[RunLogger] = None,
) -> SeriesOutcome:
    _check_momentum(params, k, p)
    _check_region(params, region, x)
    data = PoleData(params, k, poles, pairs)
    nonres, pair_terms = series_terms(params, k, region, x, complex(p), data)
    pair_terms = alternating_mean(pair_terms)
    early_stop = control is not None
    control = (control or SeriesControl()).model_copy(update={"pairs": pairs})
    return truncate_pairs(
        nonres, pair_terms, control, logger, label=f"p*psibar region {region.value}", early_stop=early_stop
    )


def p_psi_bar_series(
    params: BarrierParams,
    k: float,
    region: RegionTag,
    x: float,
    p: complex,
    poles: Sequence[ResonancePole],
    pairs: int,
    control: Optional[SeriesControl] = None,
) -> complex:
    """Pole expansion of p psibar(x, p) truncated after at most ``pairs`` (n, -n) pairs"""
    return p_psi_bar_series_outcome(params, k, region, x, p, poles, pairs, control).value
