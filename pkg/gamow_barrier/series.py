"""Truncation of symmetric (n, -n) pole sums."""
import warnings
from typing import Optional

import numpy as np

from .exceptions import InsufficientPolesWarning
from .models import SeriesControl, SeriesOutcome
from .utils.logging import RunLogger


def truncate_pairs(
    nonresonant: complex,
    pair_terms: np.ndarray,
    control: Optional[SeriesControl] = None,
    logger: Optional[RunLogger] = None,
    label: str = "pole series",
    early_stop: bool = True,
) -> SeriesOutcome:
    """Sum pair contributions until the last ``stall_window`` pairs are all below tolerance.

    ``pair_terms[j]`` holds the combined n = j+1 and n = -(j+1) contribution. The tail
    estimate is the mean relative size of the last ``stall_window`` pairs actually summed.
    With ``early_stop`` off every available pair is summed.
    """
    control = control or SeriesControl()
    terms = np.asarray(pair_terms, dtype=complex)[: control.pairs]
    if terms.size == 0:
        return SeriesOutcome(value=complex(nonresonant), tail_estimate=0.0, pairs_used=0)
    running = nonresonant + np.cumsum(terms)
    scale = np.maximum(np.abs(running), np.finfo(float).tiny)
    relative = np.abs(terms) / scale
    window = min(control.stall_window, terms.size)
    small = relative < control.tail_tolerance
    stall = np.convolve(small.astype(int), np.ones(window, dtype=int), mode="valid") == window
    hits = np.flatnonzero(stall) if early_stop else np.array([], dtype=int)
    used = int(hits[0] + window) if hits.size else terms.size
    tail = float(np.mean(relative[used - window:used]))
    if not hits.size and tail > control.tail_tolerance:
        message = f"{label}: tail estimate {tail:.2e} after {used} pairs exceeds {control.tail_tolerance:.1e}"
        warnings.warn(message, InsufficientPolesWarning, stacklevel=3)
        if logger is not None:
            logger.warning(message, pairs=used, tail_estimate=tail)
    return SeriesOutcome(value=complex(running[used - 1]), tail_estimate=tail, pairs_used=used)


def alternating_mean(pair_terms: np.ndarray) -> np.ndarray:
    """Increments of the mean of consecutive partial sums, (S_j + S_{j-1}) / 2.

    Summing the first N entries gives S_N - t_N / 2. Pair terms that settle to a bounded
    alternating sequence, like the through-barrier residues whose size grows with p_n, then
    sum to their Abel value; a convergent series keeps its limit.
    """
    terms = np.asarray(pair_terms, dtype=complex)
    averaged = 0.5 * terms
    averaged[1:] += 0.5 * terms[:-1]
    return averaged
