"""Brute-force cross-checks: inverse-Laplace quadrature of psi, quadrature of the
momentum kernels and of w(z), and argument-principle zero counting of D(p)."""
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad

from .barrier import count_poles, find_resonances
from .exceptions import DomainError, PoleSweepError, ToleranceNotMetError
from .laplace import psi_bar_values
from .models import BarrierParams, ContourSpec, KernelKind, OracleResult, ResonancePole
from .utils.contour import Box
from .utils.logging import RunLogger, get_logger

Segment = Tuple[complex, complex]

_DECAY = 45.0  # e-folds of the Gaussian factor at which a tail is cut
_MAX_EVALUATIONS = 4_000_000


def count_zeros(params: BarrierParams, box: Box) -> int:
    """Zeros of D(p) inside ``box`` = (re_min, re_max, im_min, im_max)"""
    return count_poles(params, box)


def _panel_points(segments: Sequence[Segment], step: Callable[[complex], float]) -> List[Segment]:
    """Initial panels whose length follows the local oscillation scale"""
    panels: List[Segment] = []
    for start, end in segments:
        length = abs(end - start)
        if length == 0:
            continue
        direction = (end - start) / length
        s = 0.0
        while s < length:
            h = min(step(start + s * direction), length - s)
            if length - s - h < 1e-3 * h:
                h = length - s
            panels.append((start + s * direction, start + (s + h) * direction))
            s += h
    return panels


def path_integral(
    integrand: Callable[[np.ndarray], np.ndarray],
    segments: Sequence[Segment],
    step: Callable[[complex], float],
    order: int = 16,
    tolerance: float = 1e-9,
    max_depth: int = 40,
) -> OracleResult:
    """Adaptive Gauss-Legendre along a polyline; each level of panels is evaluated in one batch

    Panels are refined against one global error budget. The result is accepted as soon as the
    accumulated error plus the estimate of every pending panel fits in ``tolerance``.
    """
    nodes, weights = leggauss(order)
    panels = np.array(_panel_points(segments, step), dtype=complex)
    accepted: List[np.ndarray] = []
    error = 0.0
    floor = 0.0
    evaluations = 0
    pending_error = 0.0
    for depth in range(max_depth + 1):
        if panels.size == 0:
            break
        a, b = panels[:, 0], panels[:, 1]
        mid = 0.5 * (a + b)
        whole = 0.5 * (a + b)[:, None] + 0.5 * (b - a)[:, None] * nodes[None, :]
        left = 0.5 * (a + mid)[:, None] + 0.5 * (mid - a)[:, None] * nodes[None, :]
        right = 0.5 * (mid + b)[:, None] + 0.5 * (b - mid)[:, None] * nodes[None, :]
        points = np.concatenate([whole, left, right], axis=1)
        values = np.asarray(integrand(points.ravel()), dtype=complex).reshape(points.shape)
        evaluations += points.size
        n = order
        coarse = 0.5 * (b - a) * (values[:, :n] @ weights)
        fine = 0.5 * (mid - a) * (values[:, n:2 * n] @ weights) + 0.5 * (b - mid) * (values[:, 2 * n:] @ weights)
        gap = np.abs(fine - coarse)
        # roundoff floor: a panel cannot be resolved below the noise of its own values
        noise = 64.0 * np.finfo(float).eps * np.abs(b - a) * np.max(np.abs(values), axis=1)

        resolved = gap <= noise
        accepted.append(fine[resolved])
        error += float(np.sum(gap[resolved]))
        floor += float(np.sum(noise[resolved]))
        live = ~resolved
        a, mid, b = a[live], mid[live], b[live]
        fine, gap, noise = fine[live], gap[live], noise[live]

        pending_error = float(np.sum(gap))
        allowed = max(tolerance, floor + float(np.sum(noise)))
        if error + pending_error <= allowed:
            accepted.append(fine)
            error += pending_error
            panels = np.empty((0, 2), dtype=complex)
            break
        if depth == max_depth or evaluations > _MAX_EVALUATIONS:
            break

        # the smallest contributions are kept while they fit in half of the remaining budget
        ranked = np.argsort(gap)
        keep = np.zeros(gap.size, dtype=bool)
        keep[ranked[np.cumsum(gap[ranked]) <= 0.5 * (allowed - error)]] = True
        accepted.append(fine[keep])
        error += float(np.sum(gap[keep]))
        floor += float(np.sum(noise[keep]))
        split = ~keep
        pa, pm, pb = a[split], mid[split], b[split]
        panels = np.concatenate([np.stack([pa, pm], axis=1), np.stack([pm, pb], axis=1)])
    if panels.size:
        raise ToleranceNotMetError(error + pending_error, tolerance)
    value = complex(np.sum(np.concatenate(accepted))) if accepted else 0j
    return OracleResult(value=value, error_estimate=error, evaluations=evaluations)


def _ray_length(tau: float, start: float, spread: float) -> float:
    """s with tau (s^2 + sqrt(2) start s) - spread s / sqrt(2) = _DECAY"""
    b = np.sqrt(2.0) * tau * start - spread / np.sqrt(2.0)
    return float((-b + np.sqrt(b * b + 4.0 * tau * _DECAY)) / (2.0 * tau))


def _staircase(
    params: BarrierParams,
    poles: Sequence[ResonancePole],
    start: float,
    epsilon: float,
    tau: float,
    spread: float,
) -> List[Segment]:
    """Right tail: descends into the fourth quadrant while staying above every located pole"""
    positive = sorted((pole.p for pole in poles if pole.n > 0), key=lambda p: p.real)
    if not positive:
        raise DomainError("the oracle contour needs at least one located pole")
    depths = 0.5 * np.minimum.accumulate(np.abs(np.array([p.imag for p in positive]))[::-1])[::-1]
    vertices = [complex(start, epsilon)]
    for p, depth in zip(positive, depths):
        if p.real > start:
            vertices.append(complex(p.real, -depth))
    d_end = float(depths[-1])
    x_end = max(vertices[-1].real + 1.0, (_DECAY + d_end * spread) / (2.0 * tau * d_end))
    vertices.append(complex(x_end, -d_end))
    return list(zip(vertices[:-1], vertices[1:]))


def _height_at(segments: Sequence[Segment], re: float) -> Optional[float]:
    for a, b in segments:
        lo, hi = sorted((a.real, b.real))
        if lo <= re <= hi and hi > lo:
            return a.imag + (b.imag - a.imag) * (re - a.real) / (b.real - a.real)
    return None


def _check_sweep(segments: Sequence[Segment], poles: Sequence[ResonancePole]) -> None:
    for pole in poles:
        if pole.n < 0:
            continue
        height = _height_at(segments, pole.p.real)
        if height is not None and pole.p.imag >= height:
            raise PoleSweepError(pole.p)


def oracle_path(
    params: BarrierParams,
    k: float,
    x: float,
    t: float,
    contour: ContourSpec,
    poles: Sequence[ResonancePole],
) -> List[Segment]:
    """Integration path for t > 0: up-left ray, the real axis shifted by +epsilon, then a
    right tail that is either the pole-avoiding staircase or a ray at -rotation"""
    tau = params.tau(t)
    eps = contour.epsilon
    min_depth = min(abs(pole.p.imag) for pole in poles)
    if eps >= 0.5 * min_depth:
        raise PoleSweepError(min(poles, key=lambda pole: abs(pole.p.imag)).p, "epsilon is not small against Im p_n")
    spread = max(abs(x), abs(x - params.L), params.L)
    p0 = contour.p_max or max(3.0 * k, np.sqrt(k * k + params.kappa2) + 1.0, spread / (2.0 * tau) + 2.0)
    left_len = _ray_length(tau, p0, spread)
    left = [(complex(-p0, eps) + left_len * np.exp(0.75j * np.pi), complex(-p0, eps))]
    middle = [(complex(-p0, eps), complex(p0, eps))]
    if contour.rotation is not None:
        right_len = _ray_length(tau, p0, spread)
        right = [(complex(p0, eps), complex(p0, eps) + right_len * np.exp(-1j * contour.rotation))]
    else:
        right = _staircase(params, poles, p0, eps, tau, spread)
    _check_sweep(right, poles)
    return left + middle + right


def causal_path(params: BarrierParams, x: float, t: float) -> List[Segment]:
    """First-quadrant wedge for t < 0, where e^{-i tau p^2} decays"""
    tau = abs(params.tau(t))
    spread = max(abs(x), abs(x - params.L), params.L)
    near = 1.0
    far = near
    while tau * far * far * np.sin(0.25 * np.pi) - far * spread < _DECAY:
        far *= 1.5
    low, high = np.exp(0.125j * np.pi), np.exp(0.375j * np.pi)
    return [(far * low, near * low), (near * low, near * high), (near * high, far * high)]


def oracle_psi(
    params: BarrierParams,
    k: float,
    x: float,
    t: float,
    contour: Optional[ContourSpec] = None,
    poles: Optional[Sequence[ResonancePole]] = None,
    logger: Optional[RunLogger] = None,
) -> OracleResult:
    """psi(x, t) = (1/2 pi m) int p e^{-i p^2 t/2m} psibar(x, p) dp with psibar from the matching solve"""
    if t == 0:
        raise DomainError("the oracle evaluates t != 0; psi(x, 0) is the initial plane wave")
    if not k > 0:
        raise DomainError(f"incident momentum must be positive, got k={k}")
    contour = contour or ContourSpec()
    logger = logger or get_logger("gamow.oracle")
    tau = params.tau(t)
    if t > 0:
        if poles is None:
            spread = max(abs(x), abs(x - params.L), params.L)
            reach = max(3.0 * k, spread / (2.0 * tau) + 2.0)
            poles = find_resonances(params, max(10, int(np.ceil(reach * params.L / np.pi)) + 5), logger)
        segments = oracle_path(params, k, x, t, contour, poles)
    else:
        segments = causal_path(params, x, t)
    spread = max(abs(x), abs(x - params.L), params.L) + 1.0
    scale = 1.0 / (2.0 * np.pi * params.m)

    def integrand(p: np.ndarray) -> np.ndarray:
        return scale * p * np.exp(-1j * tau * p * p) * psi_bar_values(params, k, x, p)

    def step(p: complex) -> float:
        return float(contour.panel_width * np.pi / (2.0 * abs(tau) * abs(p) + spread + 1.0))

    result = path_integral(integrand, segments, step, contour.panels, contour.tolerance, contour.max_depth)
    logger.debug("oracle quadrature", x=x, t=t, evaluations=result.evaluations, error=result.error_estimate)
    return result


def _kernel_factor(kind: KernelKind, q: Optional[complex]) -> Callable[[np.ndarray], np.ndarray]:
    if kind is KernelKind.I:
        return lambda p: p
    if kind is KernelKind.I0:
        return lambda p: 1.0 / (p - q)
    if kind is KernelKind.I1:
        return lambda p: p / (p - q)
    return lambda p: p * p / (p - q)


def kernel_quadrature(
    kind: KernelKind,
    a: float,
    q: Optional[complex],
    tau: float,
    epsilon: float = 1e-3,
    tolerance: float = 1e-10,
) -> OracleResult:
    """(1/i pi) int e^{-i tau p^2 + i p a} f(p) dp along a path passing above q"""
    if not tau > 0:
        raise DomainError(f"kernel quadrature needs tau > 0, got {tau}")
    q_abs = abs(q) if q is not None else 0.0
    if q is not None and q.imag >= epsilon:
        raise PoleSweepError(q, "kernel momentum lies above the integration path")
    p0 = q_abs + abs(a) / (2.0 * tau) + 2.0
    length = _ray_length(tau, p0, abs(a))
    start, stop = complex(-p0, epsilon), complex(p0, epsilon)
    segments = [
        (start + length * np.exp(0.75j * np.pi), start),
        (start, stop),
        (stop, stop + length * np.exp(-0.25j * np.pi)),
    ]
    factor = _kernel_factor(kind, q)

    def integrand(p: np.ndarray) -> np.ndarray:
        return np.exp(-1j * tau * p * p + 1j * p * a) * factor(p) / (1j * np.pi)

    def step(p: complex) -> float:
        return float(np.pi / (2.0 * tau * abs(p) + abs(a) + 1.0))

    return path_integral(integrand, segments, step, tolerance=tolerance)


def faddeeva_quadrature(z: complex) -> complex:
    """w(z) = (i/pi) int e^{-u^2}/(z - u) du for Im z > 0; reflected with w(z) = 2e^{-z^2} - w(-z) below"""
    z = complex(z)
    if z.imag == 0:
        raise DomainError("the integral representation needs Im z != 0")
    if z.imag < 0:
        return complex(2.0 * np.exp(-z * z) - faddeeva_quadrature(-z))

    def part(u: float, real: bool) -> float:
        value = 1j / np.pi * np.exp(-u * u) / (z - u)
        return value.real if real else value.imag

    options = dict(epsabs=1e-15, epsrel=1e-13, limit=500, points=[z.real])
    lo, hi = z.real - 12.0, z.real + 12.0
    re = quad(part, lo, hi, args=(True,), **options)[0]
    im = quad(part, lo, hi, args=(False,), **options)[0]
    return complex(re, im)
