"""Stationary scattering solutions, delta-normalised in energy.

Every solution is written piecewise as
    I:   L1 e^{ikx} + L2 e^{-ikx}
    II:  P e^{ik'x} + Q e^{-ik'x}
    III: R1 e^{ik(x-L)} + R2 e^{-ik(x-L)}
times (2 pi)^{-1/2} (m/k)^{1/2}. The r/l suffix names the right(left)-moving character
of the free incoming (in) or outgoing (out) wave.
"""
from typing import Dict, List, Tuple

import numpy as np

from .barrier import p_prime
from .exceptions import DomainError
from .greenfn import energy_normalization, green_values
from .models import BarrierParams, ScatteringKind, ScatteringSolution

# kind -> (fixed unknowns, index of R, index of T) over [L1, L2, P, Q, R1, R2]
_BOUNDARY: Dict[ScatteringKind, Tuple[Dict[int, complex], int, int]] = {
    ScatteringKind.IN_R: ({0: 1.0, 5: 0.0}, 1, 4),
    ScatteringKind.IN_L: ({5: 1.0, 0: 0.0}, 4, 1),
    ScatteringKind.OUT_R: ({4: 1.0, 1: 0.0}, 5, 0),
    ScatteringKind.OUT_L: ({1: 1.0, 4: 0.0}, 0, 5),
}


def _matching_rows(params: BarrierParams, k: float) -> np.ndarray:
    kp = complex(p_prime(params, k))
    if abs(kp) ** 2 < 1e-12 * max(k * k, 1.0):
        raise DomainError("k equals the barrier threshold sqrt(2mV); the inner basis degenerates")
    e = np.exp(1j * kp * params.L)
    return np.array(
        [
            [1.0, 1.0, -1.0, -1.0, 0.0, 0.0],
            [1j * k, -1j * k, -1j * kp, 1j * kp, 0.0, 0.0],
            [0.0, 0.0, e, 1.0 / e, -1.0, -1.0],
            [0.0, 0.0, 1j * kp * e, -1j * kp / e, -1j * k, 1j * k],
        ],
        dtype=complex,
    )


def scattering_solution(kind: ScatteringKind, params: BarrierParams, k: float) -> ScatteringSolution:
    """Amplitudes from the 4x4 matching solve with two boundary amplitudes fixed by ``kind``

    T is referred to plane waves e^{+/-ikx} on both sides, so for in_r the transmitted
    wave reads T e^{ikx}.
    """
    if not k > 0:
        raise DomainError(f"scattering solutions need k > 0, got {k}")
    rows = _matching_rows(params, k)
    fixed, r_index, t_index = _BOUNDARY[kind]
    free = [i for i in range(6) if i not in fixed]
    rhs = -sum(rows[:, i] * value for i, value in fixed.items())
    solved = np.linalg.solve(rows[:, free], rhs)
    coeffs = np.zeros(6, dtype=complex)
    for i, value in fixed.items():
        coeffs[i] = value
    coeffs[free] = solved
    return ScatteringSolution(
        kind=kind,
        k=float(k),
        R=complex(coeffs[r_index]),
        P=complex(coeffs[2]),
        Q=complex(coeffs[3]),
        T=complex(coeffs[t_index] * np.exp(-1j * k * params.L)),
        coefficients=tuple(complex(c) for c in coeffs),
        normalization=energy_normalization(params, k),
    )


def evaluate_solution(params: BarrierParams, solution: ScatteringSolution, x, derivative: bool = False):
    """phi(x) or dphi/dx of a scattering solution"""
    x = np.asarray(x, dtype=float)
    k = solution.k
    kp = complex(p_prime(params, k))
    l1, l2, p, q, r1, r2 = solution.coefficients
    s = x - params.L
    if derivative:
        left = 1j * k * (l1 * np.exp(1j * k * x) - l2 * np.exp(-1j * k * x))
        inside = 1j * kp * (p * np.exp(1j * kp * x) - q * np.exp(-1j * kp * x))
        right = 1j * k * (r1 * np.exp(1j * k * s) - r2 * np.exp(-1j * k * s))
    else:
        left = l1 * np.exp(1j * k * x) + l2 * np.exp(-1j * k * x)
        inside = p * np.exp(1j * kp * x) + q * np.exp(-1j * kp * x)
        right = r1 * np.exp(1j * k * s) + r2 * np.exp(-1j * k * s)
    value = solution.normalization * np.where(x < 0, left, np.where(x > params.L, right, inside))
    return complex(value) if value.ndim == 0 else value


def scattering_phi(kind: ScatteringKind, params: BarrierParams, k: float, x):
    return evaluate_solution(params, scattering_solution(kind, params, k), x)


def transmission(params: BarrierParams, k: float) -> complex:
    """T(k) = 2ik G(0, L, k) e^{-ikL}"""
    if not k > 0:
        raise DomainError(f"transmission needs k > 0, got {k}")
    return complex(2j * k * green_values(params, 0.0, params.L, k) * np.exp(-1j * k * params.L))


def transmission_table(params: BarrierParams, momenta: List[float]) -> List[Dict[str, float]]:
    rows = []
    for k in momenta:
        t = transmission(params, k)
        r = scattering_solution(ScatteringKind.IN_R, params, k).R
        rows.append({"k": float(k), "re_T": t.real, "im_T": t.imag, "abs_T2": abs(t) ** 2, "abs_R2": abs(r) ** 2})
    return rows
