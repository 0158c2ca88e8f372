import numpy as np
import pytest

from gamow_barrier.exceptions import InsufficientPolesWarning
from gamow_barrier.models import SeriesControl
from gamow_barrier.series import alternating_mean, truncate_pairs


def test_stops_after_stall_window():
    terms = np.array([1.0, 0.5] + [0.0] * 20, dtype=complex)
    outcome = truncate_pairs(1.0, terms, SeriesControl(pairs=50))
    assert outcome.pairs_used == 5
    assert outcome.value == pytest.approx(2.5)
    assert outcome.tail_estimate == 0.0


def test_slow_tail_warns_and_sums_everything():
    terms = 1.0 / np.arange(1, 11) ** 2
    with pytest.warns(InsufficientPolesWarning):
        outcome = truncate_pairs(0.0, terms, SeriesControl(pairs=10))
    assert outcome.pairs_used == 10
    assert outcome.value == pytest.approx(np.sum(terms))
    assert outcome.tail_estimate > 1e-6


def test_pair_cap_and_disabled_early_stop():
    terms = np.full(30, 1e-12, dtype=complex)
    capped = truncate_pairs(1.0, terms, SeriesControl(pairs=8), early_stop=False)
    assert capped.pairs_used == 8
    assert capped.value == pytest.approx(1.0 + 8e-12)
    stopped = truncate_pairs(1.0, terms, SeriesControl(pairs=8))
    assert stopped.pairs_used == 3


def test_no_terms_returns_the_nonresonant_part():
    outcome = truncate_pairs(2.0 - 1j, np.array([]), SeriesControl())
    assert outcome.value == 2.0 - 1j
    assert outcome.pairs_used == 0


def test_alternating_mean_sums_a_bounded_oscillation_to_its_abel_value():
    terms = 0.25j * (-1.0) ** np.arange(40)
    averaged = alternating_mean(terms)
    assert averaged[0] == pytest.approx(0.125j)
    assert np.all(np.abs(averaged[1:]) == 0.0)
    assert np.sum(averaged) == pytest.approx(0.125j)


def test_alternating_mean_keeps_a_convergent_limit():
    terms = 0.5 ** np.arange(1, 60)
    averaged = alternating_mean(terms)
    assert np.sum(averaged) == pytest.approx(np.sum(terms), abs=1e-15)
    assert np.sum(averaged[:5]) == pytest.approx(np.sum(terms[:5]) - 0.5 * terms[4])


def test_averaged_oscillation_stops_early():
    terms = 0.1 * (-1.0) ** np.arange(30) * (1.0 + 1.0 / np.arange(1, 31) ** 3)
    outcome = truncate_pairs(1.0, alternating_mean(terms), SeriesControl(pairs=30, tail_tolerance=1e-2))
    assert outcome.pairs_used < 30
    assert outcome.value == pytest.approx(1.14, abs=5e-3)
