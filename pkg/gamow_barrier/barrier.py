"""Barrier configuration helpers, the resonance denominator and the Gamow poles."""
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from .exceptions import BoundaryTooCloseError, ConvergenceError, DomainError
from .models import BarrierParams, MomentumFrame, ResonancePole
from .utils.contour import Box, contains, winding_number
from .utils.logging import RunLogger, get_logger


def p_prime(params: BarrierParams, p):
    """Principal branch of sqrt(p^2 - 2mV); a negative zero imaginary part is folded onto +0"""
    p = np.asarray(p, dtype=complex)
    return np.sqrt(p * p - params.kappa2 + 0j)


def lower_p_prime(params: BarrierParams, p):
    """Branch of sqrt(p^2 - 2mV) with Im p' <= 0, analytic in the open lower half-plane.

    Coincides with the principal branch for Re p >= 0, Im p < 0 and is continuous onto
    the real axis p >= 0 from below.
    """
    p = np.asarray(p, dtype=complex)
    return -1j * np.sqrt(-(p * p - params.kappa2) + 0j)


def plus_minus(params: BarrierParams, p, pp):
    """(p + p', p - p') with the smaller one taken as 2mV over the larger"""
    p = np.asarray(p, dtype=complex)
    pp = np.asarray(pp, dtype=complex)
    plus, minus = p + pp, p - pp
    plus_larger = np.abs(plus) >= np.abs(minus)
    # plus * minus = 2mV on either branch, so the larger factor never vanishes
    big = np.where(plus_larger, plus, minus)
    small = params.kappa2 / big
    return np.where(plus_larger, big, small), np.where(plus_larger, small, big)


def sinc(z):
    """sin(z)/z for complex z, entire"""
    return np.sinc(np.asarray(z, dtype=complex) / np.pi)


def denominator_D(params: BarrierParams, p, branch: int = 1):
    """D(p) = minus^2 exp(ip'L) - plus^2 exp(-ip'L); ``branch=-1`` evaluates it with -p'"""
    p = np.asarray(p, dtype=complex)
    pp = branch * p_prime(params, p)
    plus, minus = plus_minus(params, p, pp)
    e = np.exp(1j * pp * params.L)
    value = minus ** 2 * e - plus ** 2 / e
    return complex(value) if value.ndim == 0 else value


def reduced_denominator(params: BarrierParams, p):
    """D(p)/p' = 2i(p^2 + p'^2) L sinc(p'L) - 4p cos(p'L).

    Entire and even in p', so it has no branch and no spurious zero at p' = 0.
    """
    p = np.asarray(p, dtype=complex)
    w = p * p - params.kappa2
    z = np.sqrt(w + 0j) * params.L
    value = 2j * (params.kappa2 + 2.0 * w) * params.L * sinc(z) - 4.0 * p * np.cos(z)
    return complex(value) if value.ndim == 0 else value


def reduced_denominator_derivative(params: BarrierParams, p):
    p = np.asarray(p, dtype=complex)
    L = params.L
    w = p * p - params.kappa2
    z = np.sqrt(w + 0j) * L
    s = sinc(z)
    c = np.cos(z)
    small = np.abs(z) < 1e-3
    safe_w = np.where(small, 1.0, w)
    ratio = np.where(small, L * L * (-1.0 / 3.0 + z * z / 30.0), (c - s) / safe_w)
    value = (
        8j * p * L * s
        + 2j * L * (params.kappa2 + 2.0 * w) * p * ratio
        - 4.0 * c
        + 4.0 * L * L * p * p * s
    )
    return complex(value) if value.ndim == 0 else value


def denominator_scale(params: BarrierParams, p) -> float:
    """|minus|^2 e^{|Im p'|L} + |plus|^2 e^{|Im p'|L}, the natural size of D near p"""
    frame = MomentumFrame.from_p(params, p)
    grow = np.exp(abs(frame.p_prime.imag) * params.L)
    return float((abs(frame.minus) ** 2 + abs(frame.plus) ** 2) * grow)


def scaled_residual(params: BarrierParams, p: complex) -> float:
    return abs(denominator_D(params, p)) / denominator_scale(params, p)


_ENTIRE_BAND = 2.0  # |Im p'L| below which the entire form carries no cancellation


def scaled_denominator(params: BarrierParams, p):
    """D(p) e^{-ip'L} / p' on the lower branch, an O(1) function with the zeros of D.

    Near the real axis it is the entire form times e^{-ip'L}; deeper down the growing
    exponential is divided out analytically, leaving minus^2 - plus^2 e^{-2ip'L}.
    Analytic for Re p >= 0, Im p <= 0.
    """
    p = np.asarray(p, dtype=complex)
    pp = lower_p_prime(params, p)
    z = pp * params.L
    near = np.abs(z.imag) <= _ENTIRE_BAND
    safe_p = np.where(near, p, 0j)
    entire = reduced_denominator(params, safe_p) * np.exp(-1j * np.where(near, z, 0j))
    plus, minus = plus_minus(params, p, pp)
    safe_pp = np.where(near, 1.0, pp)
    far = (minus ** 2 - plus ** 2 * np.exp(-2j * z)) / safe_pp
    value = np.where(near, entire, far)
    return complex(value) if value.ndim == 0 else value


def _newton_ratio(params: BarrierParams, p: complex) -> complex:
    """f/f' for the Newton step, from whichever form is free of cancellation at p"""
    pp = complex(lower_p_prime(params, p))
    z = pp * params.L
    if abs(z.imag) <= _ENTIRE_BAND:
        return reduced_denominator(params, p) / reduced_denominator_derivative(params, p)
    plus, minus = (complex(v) for v in plus_minus(params, p, pp))
    e = np.exp(-2j * z)
    numerator = minus ** 2 - plus ** 2 * e
    slope = (-2.0 * minus ** 2 - 2.0 * plus ** 2 * e + 2j * params.L * p * plus ** 2 * e) / pp
    # f = N/p', f' = N'/p' - N p/p'^3
    return numerator / (slope - numerator * p / (pp * pp))


def count_poles(params: BarrierParams, box: Box) -> int:
    """Zeros of D inside box by the argument principle.

    Boxes in the closed fourth quadrant use the scaled denominator; anywhere else the
    entire reduced denominator D/p' is used.
    """
    if box[0] >= 0.0 and box[3] <= 0.0:
        return winding_number(lambda z: scaled_denominator(params, z), box)
    return winding_number(lambda z: reduced_denominator(params, z), box)


def _newton(params: BarrierParams, start: complex, max_iter: int = 60) -> Optional[complex]:
    p = complex(start)
    for _ in range(max_iter):
        step = complex(_newton_ratio(params, p))
        if not np.isfinite(step):
            return None
        p -= step
        if not np.isfinite(p):
            return None
        if abs(step) <= 1e-15 * max(abs(p), 1.0):
            return p
    return p if scaled_residual(params, p) < 1e-12 else None


def asymptotic_pole(params: BarrierParams, n: int, iterations: int = 4) -> complex:
    """Fixed point of p'L = n pi + i log(minus/plus), the large-n form of D = 0"""
    L = params.L
    p = complex(np.sqrt((n * np.pi / L) ** 2 + params.kappa2), -np.log1p(4.0 * (n * np.pi / L) ** 2 / params.kappa2) / L)
    for _ in range(iterations):
        pp = complex(lower_p_prime(params, p))
        plus, minus = (complex(v) for v in plus_minus(params, p, pp))
        z = n * np.pi + 1j * np.log(minus / plus)
        p = complex(np.sqrt((z / L) ** 2 + params.kappa2))
    return p


def _column_edge(params: BarrierParams, j: float) -> float:
    """Re p where Re p'L = (j + 1/2) pi, half-way between asymptotic zeros"""
    return float(np.sqrt(((j + 0.5) * np.pi / params.L) ** 2 + params.kappa2))


def _seeds(params: BarrierParams, box: Box) -> List[complex]:
    re0, re1, im0, im1 = box
    centre = 0.5 * (re0 + re1)
    index = int(round(np.sqrt(max(centre * centre - params.kappa2, 0.0)) * params.L / np.pi))
    seeds = [asymptotic_pole(params, index)] if index >= 1 else []
    x = centre
    depth = np.log1p(4.0 * x * x / params.kappa2) / params.L
    seeds.append(complex(x, float(np.clip(-depth, im0, im1))))
    seeds.append(complex(centre, 0.5 * (im0 + im1)))
    return seeds


class _BoxResolver:
    """Resolves one search box into its simple zeros by counting, splitting and Newton polish"""

    def __init__(self, params: BarrierParams, logger: RunLogger, max_depth: int = 24):
        self.params = params
        self.logger = logger
        self.max_depth = max_depth

    def resolve(self, box: Box, count: int, depth: int = 0) -> List[complex]:
        if count == 0:
            return []
        if count == 1:
            for start in _seeds(self.params, box):
                root = _newton(self.params, start)
                if root is not None and contains(box, root):
                    return [root]
        if depth >= self.max_depth:
            raise ConvergenceError(
                f"argument principle counts {count} zero(s) but refinement found none that converge", box
            )
        return self._split_and_resolve(box, count, depth)

    def _split(self, box: Box) -> Iterable[Tuple[Box, Box]]:
        re0, re1, im0, im1 = box
        for fraction in (0.5, 0.43, 0.57, 0.37, 0.63):
            if (re1 - re0) >= (im1 - im0):
                cut = re0 + fraction * (re1 - re0)
                yield (re0, cut, im0, im1), (cut, re1, im0, im1)
            else:
                cut = im0 + fraction * (im1 - im0)
                yield (re0, re1, im0, cut), (re0, re1, cut, im1)

    def _split_and_resolve(self, box: Box, count: int, depth: int) -> List[complex]:
        for first, second in self._split(box):
            try:
                n_first = count_poles(self.params, first)
                n_second = count_poles(self.params, second)
            except BoundaryTooCloseError:
                continue
            if n_first + n_second != count:
                raise ConvergenceError(
                    f"sub-box counts {n_first}+{n_second} disagree with parent count {count}", box
                )
            return self.resolve(first, n_first, depth + 1) + self.resolve(second, n_second, depth + 1)
        raise ConvergenceError("every split of the box passes too close to a zero", box)


def _column_depth(params: BarrierParams, re_max: float) -> float:
    return (np.log1p(4.0 * (re_max ** 2 + params.kappa2) / params.kappa2) + 3.0) / params.L


def find_resonances(
    params: BarrierParams,
    count: int,
    logger: Optional[RunLogger] = None,
) -> List[ResonancePole]:
    """Poles n = 1..count in the fourth quadrant plus their mirrors n = -1..-count.

    The fourth quadrant is scanned in columns whose edges sit half-way between the
    asymptotic zeros, Re p'L = (j + 1/2) pi. Each column is counted with the argument
    principle and resolved into simple zeros by splitting and Newton polish seeded from
    the asymptotic pole positions.
    Returned order: n = 1..count, then n = -1..-count.
    """
    if count < 1:
        raise DomainError(f"pole count must be positive, got {count}")
    logger = logger or get_logger("gamow.barrier")
    resolver = _BoxResolver(params, logger)
    roots: List[complex] = []
    left = 0.0
    column = 0
    while len(roots) < count:
        column += 1
        for shift in (0.0, 0.15, -0.15, 0.3, -0.3):
            right = _column_edge(params, column - 1 + shift)
            box = (left, right, -_column_depth(params, right), 0.0)
            try:
                found = count_poles(params, box)
                break
            except BoundaryTooCloseError:
                logger.debug("column edge too close to a zero, nudging", column=column, right=right)
        else:
            raise ConvergenceError("could not place a column edge away from the zeros", box)
        new_roots = resolver.resolve(box, found)
        logger.debug("resolved column", column=column, zeros=found, re_range=[left, right])
        roots.extend(sorted(new_roots, key=lambda z: z.real))
        left = right

    unique: List[complex] = []
    for root in sorted(roots, key=lambda z: z.real):
        if unique and abs(root - unique[-1]) <= 1e-8 * abs(root):
            raise ConvergenceError(f"duplicate zero at p={root!r}; the zero is not simple")
        unique.append(root)
    unique = unique[:count]

    poles: List[ResonancePole] = []
    for n, p in enumerate(unique, start=1):
        if not (-np.pi / 4 < np.angle(p) < 0):
            raise ConvergenceError(f"zero p={p!r} lies outside the sector -pi/4 < arg p < 0")
        poles.append(_make_pole(params, n, p))
    mirrors = [_make_pole(params, -pole.n, -pole.p.conjugate()) for pole in poles]
    logger.info("located resonance poles", pairs=count, last=poles[-1].p)
    return poles + mirrors


def _make_pole(params: BarrierParams, n: int, p: complex) -> ResonancePole:
    return ResonancePole(n=n, p=p, norm=norm_closed(params, p), residual=scaled_residual(params, p))


def norm_closed(params: BarrierParams, p):
    """N = -8mV (pL + 2i)"""
    return -4.0 * params.kappa2 * (np.asarray(p, dtype=complex) * params.L + 2j)


def pole_arrays(poles: Sequence[ResonancePole], pairs: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """(p_n for n = 1..N, p_-n for n = 1..N); missing mirrors are filled with -conj(p_n)"""
    positive = sorted((pole for pole in poles if pole.n > 0), key=lambda pole: pole.n)
    negative = {-pole.n: pole.p for pole in poles if pole.n < 0}
    if pairs is not None:
        if pairs > len(positive):
            raise DomainError(f"{pairs} pairs requested but only {len(positive)} poles are available")
        positive = positive[:pairs]
    p_pos = np.array([pole.p for pole in positive], dtype=complex)
    p_neg = np.array([negative.get(pole.n, -pole.p.conjugate()) for pole in positive], dtype=complex)
    return p_pos, p_neg


def resonant_u_values(params: BarrierParams, p, x):
    """u(x) for momentum array p (broadcast against x); the three-region form of the Gamow function"""
    p = np.asarray(p, dtype=complex)
    x = np.asarray(x, dtype=float)
    pp = p_prime(params, p)
    plus, minus = plus_minus(params, p, pp)
    L = params.L
    inside = minus * np.exp(1j * pp * x) - plus * np.exp(-1j * pp * x)
    left = -2.0 * pp * np.exp(-1j * p * x)
    right = (minus * np.exp(-1j * minus * L) - plus * np.exp(-1j * plus * L)) * np.exp(1j * p * x)
    return np.where(x < 0, left, np.where(x > L, right, inside))


def resonant_u(params: BarrierParams, pole: ResonancePole, x):
    value = resonant_u_values(params, pole.p, x)
    return complex(value) if np.ndim(value) == 0 else value


def resonance_norm(params: BarrierParams, pole: ResonancePole) -> complex:
    return complex(norm_closed(params, pole.p))


def resonance_norm_definition(params: BarrierParams, pole: ResonancePole, panels: int = 64, order: int = 8) -> complex:
    """i(u(0)^2 + u(L)^2) + 2p int_0^L u^2 dx with composite Gauss-Legendre quadrature"""
    nodes, weights = leggauss(order)
    edges = np.linspace(0.0, params.L, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    u = resonant_u_values(params, pole.p, x)
    integral = np.sum(w * u * u)
    u0 = resonant_u(params, pole, 0.0)
    uL = resonant_u(params, pole, params.L)
    return complex(1j * (u0 ** 2 + uL ** 2) + 2.0 * pole.p * integral)
