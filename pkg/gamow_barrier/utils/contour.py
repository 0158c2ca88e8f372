"""Argument-principle helpers: winding numbers of analytic functions around rectangles."""
from typing import Callable, Tuple

import numpy as np

from ..exceptions import BoundaryTooCloseError, ConvergenceError

Box = Tuple[float, float, float, float]  # (re_min, re_max, im_min, im_max)

_MAX_STEP = np.pi / 4


def box_corners(box: Box) -> Tuple[complex, complex, complex, complex]:
    re0, re1, im0, im1 = box
    return complex(re0, im0), complex(re1, im0), complex(re1, im1), complex(re0, im1)


def contains(box: Box, z: complex, margin: float = 0.0) -> bool:
    re0, re1, im0, im1 = box
    return re0 + margin <= z.real <= re1 - margin and im0 + margin <= z.imag <= im1 - margin


def _edge_phase(
    f: Callable[[np.ndarray], np.ndarray],
    a: complex,
    b: complex,
    samples: int,
    max_depth: int,
    box: Box,
) -> float:
    """Accumulated arg f along the segment a -> b, bisecting wherever arg jumps by more than pi/4"""
    nodes = a + (b - a) * np.linspace(0.0, 1.0, samples + 1)
    values = np.asarray(f(nodes), dtype=complex)
    if not np.all(np.isfinite(values)) or np.any(values == 0):
        raise BoundaryTooCloseError("function vanishes or overflows on the contour", box)
    left_z, right_z = nodes[:-1], nodes[1:]
    left_f, right_f = values[:-1], values[1:]
    total = 0.0
    for depth in range(max_depth + 1):
        step = np.angle(right_f / left_f)
        settled = np.abs(step) <= _MAX_STEP
        total += float(np.sum(step[settled]))
        if np.all(settled):
            return total
        if depth == max_depth:
            worst = left_z[~settled][0]
            raise BoundaryTooCloseError(
                f"phase not resolved near p={complex(worst):.6g} after {max_depth} refinements; "
                "move the box edge or raise the refinement depth",
                box,
            )
        lz, rz, lf, rf = left_z[~settled], right_z[~settled], left_f[~settled], right_f[~settled]
        mz = 0.5 * (lz + rz)
        mf = np.asarray(f(mz), dtype=complex)
        if not np.all(np.isfinite(mf)) or np.any(mf == 0):
            raise BoundaryTooCloseError("function vanishes or overflows on the contour", box)
        left_z = np.concatenate([lz, mz])
        right_z = np.concatenate([mz, rz])
        left_f = np.concatenate([lf, mf])
        right_f = np.concatenate([mf, rf])
    return total


def winding_number(
    f: Callable[[np.ndarray], np.ndarray],
    box: Box,
    samples: int = 128,
    max_depth: int = 32,
) -> int:
    """Number of zeros of f inside box, by phase continuation along its boundary"""
    re0, re1, im0, im1 = box
    if not (re1 > re0 and im1 > im0):
        raise ValueError(f"degenerate box {box}")
    corners = box_corners(box)
    total = 0.0
    for a, b in zip(corners, corners[1:] + corners[:1]):
        total += _edge_phase(f, a, b, samples, max_depth, box)
    turns = total / (2.0 * np.pi)
    count = int(round(turns))
    if abs(turns - count) > 1e-3:
        raise ConvergenceError(f"non-integer winding {turns:.6f}; sampling too coarse", box)
    return count
