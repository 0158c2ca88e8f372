"""Green function of the barrier with outgoing (resonant) boundary conditions.

G solves [d^2/dx^2 + p^2 - 2mV] G(x, y, p) = delta(x - y) on [0, L] with
dG/dx = -ipG at x = 0 and dG/dx = ipG at x = L. With the regular solution
g(x) = 2ipx sinc(p'x) - 2cos(p'x) (the left-boundary solution divided by p'),

    G(x, y, p) = i g(min(x, y)) g(L - max(x, y)) / (2 D(p)/p')

which is even in p' and therefore free of branch bookkeeping.
"""
from typing import Sequence

import numpy as np

from .barrier import (
    denominator_D,
    denominator_scale,
    norm_closed,
    p_prime,
    plus_minus,
    pole_arrays,
    reduced_denominator,
    resonant_u_values,
    sinc,
)
from .exceptions import DomainError, PoleProximityError
from .models import BarrierParams, GreenQuery, ResonancePole, ScatteringKind

_PROXIMITY = 1e-12


def regular_solution(params: BarrierParams, x, p):
    """g(x, p): solution obeying the outgoing condition at x = 0, divided by p'"""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=complex)
    z = np.sqrt(p * p - params.kappa2 + 0j)
    return 2j * p * x * sinc(z * x) - 2.0 * np.cos(z * x)


def green_values(params: BarrierParams, x, y, p):
    """Vectorised G(x, y, p) without proximity checks"""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    low = np.minimum(x, y)
    high = np.maximum(x, y)
    g_low = regular_solution(params, low, p)
    g_high = regular_solution(params, params.L - high, p)
    return 1j * g_low * g_high / (2.0 * reduced_denominator(params, p))


def _check_query(params: BarrierParams, q: GreenQuery) -> None:
    tol = 1e-12 * params.L
    for name, value in (("x", q.x), ("y", q.y)):
        if not (-tol <= value <= params.L + tol):
            raise DomainError(f"{name}={value} lies outside the barrier [0, {params.L}]")


def check_pole_proximity(params: BarrierParams, p: complex) -> None:
    """Raise PoleProximityError when |D(p)| is below the scale-aware threshold"""
    p = complex(p)
    pp = complex(p_prime(params, p))
    reduced = reduced_denominator(params, p)
    scale = denominator_scale(params, p)
    if abs(reduced) * max(abs(pp), 1.0 / params.L) < _PROXIMITY * scale:
        raise PoleProximityError(p, reduced * pp, _PROXIMITY * scale)


def green_closed(params: BarrierParams, q: GreenQuery) -> complex:
    """G(x, y, p); p = 0 is served by the hyperbolic zero-momentum form"""
    _check_query(params, q)
    if q.p == 0:
        return green_at_zero(params, q.x, q.y)
    check_pole_proximity(params, q.p)
    return complex(green_values(params, q.x, q.y, q.p))


# Special values written with exponentials of p'.

def _exp_parts(params: BarrierParams, p: complex):
    p = complex(p)
    pp = complex(p_prime(params, p))
    if pp == 0:
        raise DomainError("exponential special values are singular at p' = 0; use green_closed")
    plus, minus = plus_minus(params, p, pp)
    return p, pp, complex(plus), complex(minus), denominator_D(params, p)


def green_from_left(params: BarrierParams, x, p: complex):
    """G(0, x, p) = -(i/D)(minus e^{ip'(L-x)} - plus e^{-ip'(L-x)})"""
    _, pp, plus, minus, d = _exp_parts(params, p)
    s = params.L - np.asarray(x, dtype=float)
    return -1j / d * (minus * np.exp(1j * pp * s) - plus * np.exp(-1j * pp * s))


def green_from_right(params: BarrierParams, x, p: complex):
    """G(L, x, p) = G(0, L - x, p)"""
    return green_from_left(params, params.L - np.asarray(x, dtype=float), p)


def green_through(params: BarrierParams, p: complex) -> complex:
    """G(0, L, p) = 2ip'/D"""
    _, pp, _, _, d = _exp_parts(params, p)
    return 2j * pp / d


def green_corner(params: BarrierParams, p: complex) -> complex:
    """G(0, 0, p) = G(L, L, p)"""
    _, pp, plus, minus, d = _exp_parts(params, p)
    e = np.exp(1j * pp * params.L)
    return complex(-1j / d * (minus * e - plus / e))


def green_at_zero(params: BarrierParams, x, y):
    """G(x, y, 0) = -(cosh k(L - x - y) + cosh k(L - |x - y|)) / (2k sinh kL), k^2 = 2mV"""
    kappa = params.kappa
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    total = np.cosh(kappa * (params.L - x - y)) + np.cosh(kappa * (params.L - np.abs(x - y)))
    value = np.asarray(-total / (2.0 * kappa * np.sinh(kappa * params.L)))
    return complex(value) if value.ndim == 0 else value


def green_slope_at_zero(params: BarrierParams, x, y):
    """dG/dp at p = 0"""
    kappa = params.kappa
    L = params.L
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    span = L - np.abs(x - y)
    total = np.cosh(kappa * (L - x - y)) + np.cosh(kappa * span)
    sh = np.sinh(kappa * L)
    value = np.asarray(-1j * (total * np.cosh(kappa * L) - np.sinh(kappa * span) * sh) / (kappa ** 2 * sh ** 2))
    return complex(value) if value.ndim == 0 else value


def corner_at_zero(params: BarrierParams) -> complex:
    """G(0, 0, 0) = -coth(kL)/k"""
    kappa = params.kappa
    return complex(-1.0 / (kappa * np.tanh(kappa * params.L)))


def corner_slope_at_zero(params: BarrierParams) -> complex:
    """dG(0, 0, p)/dp at p = 0 = -(i/4mV)(3 + cosh 2kL)/sinh^2 kL"""
    kl = params.kappa * params.L
    return complex(-1j / (2.0 * params.kappa2) * (3.0 + np.cosh(2.0 * kl)) / np.sinh(kl) ** 2)


def residue_weights(params: BarrierParams, x, y, p_n):
    """u_n(x) u_n(y) / N_n"""
    return resonant_u_values(params, p_n, x) * resonant_u_values(params, p_n, y) / norm_closed(params, p_n)


def is_corner(params: BarrierParams, x: float, y: float) -> bool:
    tol = 1e-12 * params.L
    return (abs(x) <= tol and abs(y) <= tol) or (abs(x - params.L) <= tol and abs(y - params.L) <= tol)


def green_pole_series(params: BarrierParams, q: GreenQuery, poles: Sequence[ResonancePole], pairs: int) -> complex:
    """Mittag-Leffler sum over (n, -n) pairs of u_n(x)u_n(y)/N_n/(p - p_n)"""
    _check_query(params, q)
    if is_corner(params, q.x, q.y):
        raise DomainError("G(0,0,p) and G(L,L,p) grow like |p|; use green_subtracted_series")
    p_pos, p_neg = pole_arrays(poles, pairs)
    terms = residue_weights(params, q.x, q.y, p_pos) / (q.p - p_pos)
    terms = terms + residue_weights(params, q.x, q.y, p_neg) / (q.p - p_neg)
    return complex(np.sum(terms))


def green_subtracted_series(params: BarrierParams, q: GreenQuery, poles: Sequence[ResonancePole], pairs: int) -> complex:
    """p^2 sum C_n/(p_n^2 (p - p_n)) + G(x, y, 0) + p dG/dp|_0"""
    _check_query(params, q)
    p_pos, p_neg = pole_arrays(poles, pairs)
    p = q.p
    total = 0j
    for group in (p_pos, p_neg):
        total += np.sum(residue_weights(params, q.x, q.y, group) / (group ** 2 * (p - group)))
    return complex(p * p * total + green_at_zero(params, q.x, q.y) + p * green_slope_at_zero(params, q.x, q.y))


def energy_normalization(params: BarrierParams, k: float) -> float:
    """(2 pi)^{-1/2} (m/k)^{1/2}"""
    return float(np.sqrt(params.m / k) / np.sqrt(2.0 * np.pi))


def scattering_from_green(params: BarrierParams, x, p: float, kind: ScatteringKind = ScatteringKind.IN_R):
    """phi_in_r(x) = norm 2ip G(0, x, p); phi_in_l(x) = norm 2ip G(L, x, p)"""
    if not p > 0:
        raise DomainError(f"scattering solutions need a positive real momentum, got p={p}")
    if kind not in (ScatteringKind.IN_R, ScatteringKind.IN_L):
        raise DomainError(f"only in-solutions follow from the Green function, got {kind.value}")
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0) or np.any(xs > params.L):
        raise DomainError("Green extraction is defined inside the barrier")
    source = 0.0 if kind is ScatteringKind.IN_R else params.L
    value = energy_normalization(params, p) * 2j * p * green_values(params, source, xs, p)
    return complex(value) if np.ndim(value) == 0 else value
