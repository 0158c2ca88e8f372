"""Complex error-function family used by every time-domain kernel.

All evaluations accept scalars or numpy arrays and return the same shape.
"""
from math import factorial
from typing import Union

import numpy as np
from scipy.special import wofz

from .exceptions import DomainError, FaddeevaOverflowError

ArrayLike = Union[complex, float, np.ndarray]

_SQRT_PI = np.sqrt(np.pi)
_EXP_LIMIT = 700.0


def _finish(value: np.ndarray, scalar: bool) -> ArrayLike:
    return complex(value) if scalar else value


def _check_finite(result: np.ndarray, argument: np.ndarray, detail: str) -> None:
    bad = ~np.isfinite(result)
    if np.any(bad):
        first = complex(np.asarray(argument).reshape(-1)[np.argmax(bad.reshape(-1))])
        raise FaddeevaOverflowError(first, detail)


def faddeeva_w(z: ArrayLike) -> ArrayLike:
    """w(z) = exp(-z^2) erfc(-iz).

    The left half plane is mapped onto the right one with w(z) = conj(w(-conj(z))),
    so the conjugation symmetry holds bit for bit.
    """
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise DomainError("faddeeva_w requires a finite argument")
    left = z.real < 0
    base = np.where(left, -np.conj(z), z)
    value = wofz(base)
    value = np.where(left, np.conj(value), value)
    _check_finite(value, z, "exp(-z^2) scaling exceeds the representable range")
    return _finish(value, scalar)


def reflected_branch(y: ArrayLike) -> np.ndarray:
    """True where exp(y^2) erfc(y) is dominated by the exponentially large 2 exp(y^2) part"""
    y = np.asarray(y, dtype=complex)
    return (y.real < 0) & ((y * y).real > 0)


def scaled_erfc(y: ArrayLike, return_flag: bool = False):
    """exp(y^2) erfc(y), computed as w(iy) without forming exp(y^2) separately.

    With ``return_flag`` a boolean (array) is returned alongside, marking the sector
    |arg y| > 3pi/4 where the result grows like 2 exp(y^2).
    """
    scalar = np.ndim(y) == 0
    y = np.asarray(y, dtype=complex)
    if not np.all(np.isfinite(y)):
        raise DomainError("scaled_erfc requires a finite argument")
    flag = reflected_branch(y)
    if np.any(flag & ((y * y).real > _EXP_LIMIT)):
        raise FaddeevaOverflowError(complex(y.reshape(-1)[np.argmax(flag.reshape(-1))]),
                                    "reflected branch 2exp(y^2) overflows")
    value = np.asarray(faddeeva_w(1j * y), dtype=complex)
    _check_finite(value, y, "scaled erfc is not representable")
    out = _finish(value, scalar)
    if return_flag:
        return out, (bool(flag) if scalar else flag)
    return out


def reflected_scaled_erfc(y: ArrayLike) -> ArrayLike:
    """exp(y^2) erfc(y) through erfc(y) = 2 - erfc(-y): 2 exp(y^2) - exp(y^2) erfc(-y)"""
    scalar = np.ndim(y) == 0
    y = np.asarray(y, dtype=complex)
    y2 = y * y
    if np.any(y2.real > _EXP_LIMIT):
        raise FaddeevaOverflowError(complex(y.reshape(-1)[0]), "reflected branch 2exp(y^2) overflows")
    value = 2.0 * np.exp(y2) - np.asarray(faddeeva_w(-1j * y), dtype=complex)
    return _finish(value, scalar)


def asymptotic_coefficients(terms: int) -> np.ndarray:
    """C_m = (-1)^m (2m-1)!! / 2^m, m = 1..terms, of exp(y^2)erfc(y) ~ (1 + sum C_m y^-2m)/(sqrt(pi) y)"""
    return np.array(
        [(-1) ** m * factorial(2 * m) / (factorial(m) * 2 ** m) / 2 ** m for m in range(1, terms + 1)],
        dtype=float,
    )


def asymptotic_scaled_erfc(y: ArrayLike, terms: int = 6) -> ArrayLike:
    """Large-|y| expansion of exp(y^2)erfc(y), valid for |arg y| < 3pi/4"""
    scalar = np.ndim(y) == 0
    y = np.asarray(y, dtype=complex)
    inv2 = 1.0 / (y * y)
    series = np.ones_like(y)
    power = np.ones_like(y)
    for c in asymptotic_coefficients(terms):
        power = power * inv2
        series = series + c * power
    return _finish(series / (_SQRT_PI * y), scalar)


def moshinsky(x: ArrayLike, q: ArrayLike, t: float, m: float) -> ArrayLike:
    """M(x,q,t) = 1/2 exp(i m x^2 / 2t) w(i exp(-i pi/4) sqrt(m/2t) (x - t q / m))"""
    if t <= 0:
        raise DomainError(f"moshinsky requires t > 0, got t={t}")
    if m <= 0:
        raise DomainError(f"moshinsky requires m > 0, got m={m}")
    scalar = np.ndim(x) == 0 and np.ndim(q) == 0
    x = np.asarray(x, dtype=complex)
    q = np.asarray(q, dtype=complex)
    arg = 1j * np.exp(-0.25j * np.pi) * np.sqrt(m / (2.0 * t)) * (x - t * q / m)
    value = 0.5 * np.exp(1j * m * x * x / (2.0 * t)) * np.asarray(faddeeva_w(arg), dtype=complex)
    return _finish(value, scalar)

