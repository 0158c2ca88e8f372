import numpy as np
import pytest

from gamow_barrier.barrier import (
    asymptotic_pole,
    count_poles,
    denominator_D,
    find_resonances,
    lower_p_prime,
    plus_minus,
    pole_arrays,
    reduced_denominator,
    resonance_norm,
    resonance_norm_definition,
    resonant_u,
    scaled_denominator,
    scaled_residual,
)
from gamow_barrier.exceptions import DomainError
from gamow_barrier.models import BarrierParams, MomentumFrame
from gamow_barrier.oracle import count_zeros


def _positive(poles):
    return [pole for pole in poles if pole.n > 0]


def test_pole_table_layout(poles):
    assert len(poles) == 80
    assert [pole.n for pole in poles] == list(range(1, 41)) + list(range(-1, -41, -1))
    reals = [pole.p.real for pole in _positive(poles)]
    assert reals == sorted(reals)


def test_poles_lie_in_fourth_quadrant_sector(poles):
    for pole in _positive(poles):
        assert -np.pi / 4 < np.angle(pole.p) < 0


def test_mirror_poles(poles):
    by_n = {pole.n: pole.p for pole in poles}
    for n in range(1, 41):
        assert abs(by_n[-n] + np.conj(by_n[n])) <= 1e-12 * abs(by_n[n])


def test_pole_residuals_are_small(poles):
    assert max(pole.residual for pole in poles) < 1e-10
    for pole in poles[:5]:
        assert pole.residual == pytest.approx(scaled_residual(BarrierParams.cfg0(), pole.p))


def test_first_pole_confirmed_by_zero_count(cfg0, poles):
    p1 = poles[0].p
    box = (p1.real - 0.5, p1.real + 0.5, p1.imag - 0.5, p1.imag + 0.5)
    assert count_zeros(cfg0, box) == 1
    assert abs(reduced_denominator(cfg0, p1)) < 1e-12 * abs(p1) ** 2


def test_zero_count_of_first_ten(cfg0, poles):
    first = _positive(poles)[:10]
    box = (0.0, first[-1].p.real + 1.0, min(pole.p.imag for pole in first) - 1.0, -1e-3)
    assert count_poles(cfg0, box) == 10


def test_no_duplicate_poles(poles):
    p = np.array([pole.p for pole in _positive(poles)])
    gaps = np.abs(p[:, None] - p[None, :]) + np.eye(len(p)) * 1e9
    assert np.all(gaps > 1e-8 * np.abs(p)[:, None])


def test_flipped_branch_changes_sign(cfg0):
    rng = np.random.default_rng(1)
    p = rng.uniform(-8, 8, 20) + 1j * rng.uniform(-4, 4, 20)
    direct = denominator_D(cfg0, p)
    flipped = denominator_D(cfg0, p, branch=-1)
    assert np.all(np.abs(flipped + direct) <= 1e-13 * np.abs(direct))


def test_momentum_frame_flip(cfg0):
    frame = MomentumFrame.from_p(cfg0, 2.0 + 0.5j)
    flipped = frame.flipped()
    assert flipped.p_prime == -frame.p_prime
    assert flipped.plus == frame.minus


def test_norm_closed_form_matches_integral(cfg0, poles):
    for pole in _positive(poles)[:10]:
        closed = resonance_norm(cfg0, pole)
        assert closed == pytest.approx(-8.0 * cfg0.m * cfg0.V * (pole.p * cfg0.L + 2j), rel=1e-12)
        assert resonance_norm_definition(cfg0, pole) == pytest.approx(closed, rel=1e-9)


@pytest.mark.parametrize("index", [0, 1, 4])
def test_gamow_function_obeys_outgoing_conditions(cfg0, poles, index):
    pole = _positive(poles)[index]
    h = 1e-4 * cfg0.L
    L = cfg0.L
    start = np.array([resonant_u(cfg0, pole, j * h) for j in range(5)])
    end = np.array([resonant_u(cfg0, pole, L - j * h) for j in range(5)])
    stencil = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12.0 * h)
    slope_0 = np.dot(stencil, start)
    slope_L = -np.dot(stencil, end)
    assert abs(slope_0 + 1j * pole.p * start[0]) <= 1e-10 * abs(pole.p * start[0])
    assert abs(slope_L - 1j * pole.p * end[0]) <= 1e-10 * abs(pole.p * end[0])


def test_gamow_function_solves_the_barrier_equation(cfg0, poles):
    pole = _positive(poles)[0]
    h = 1e-3 * cfg0.L
    wave2 = pole.p ** 2 - cfg0.kappa2
    for x in (0.3 * cfg0.L, 0.7 * cfg0.L):
        u = [resonant_u(cfg0, pole, x + s * h) for s in (-1, 0, 1)]
        second = (u[0] - 2 * u[1] + u[2]) / h ** 2
        scale = abs(wave2) * max(abs(resonant_u(cfg0, pole, 0.0)), abs(resonant_u(cfg0, pole, cfg0.L)))
        assert abs(second + wave2 * u[1]) <= 1e-5 * scale


def test_pole_arrays_fill_and_truncate(poles):
    p_pos, p_neg = pole_arrays(poles, 5)
    assert p_pos.shape == p_neg.shape == (5,)
    assert np.allclose(p_neg, -np.conj(p_pos))
    only_positive = _positive(poles)
    _, filled = pole_arrays(only_positive, 3)
    assert np.allclose(filled, -np.conj(p_pos[:3]))
    with pytest.raises(DomainError):
        pole_arrays(poles, 41)


def test_count_must_be_positive(cfg0):
    with pytest.raises(DomainError):
        find_resonances(cfg0, 0)


def test_other_barrier_poles_stay_in_sector(quiet_logger):
    params = BarrierParams(m=1.0, V=3.0, L=2.0)
    found = find_resonances(params, 8, quiet_logger)
    assert len(found) == 16
    for pole in _positive(found):
        assert -np.pi / 4 < np.angle(pole.p) < 0
        assert pole.residual < 1e-10


def test_scaled_denominator_divides_out_the_growing_exponential(cfg0):
    rng = np.random.default_rng(11)
    p = rng.uniform(0.5, 20.0, 200) - 1j * rng.uniform(0.05, 4.0, 200)
    expected = reduced_denominator(cfg0, p) * np.exp(-1j * lower_p_prime(cfg0, p) * cfg0.L)
    assert np.allclose(scaled_denominator(cfg0, p), expected, rtol=1e-9, atol=0.0)


def test_plus_times_minus_is_the_barrier_strength(cfg0):
    rng = np.random.default_rng(5)
    p = np.concatenate([rng.uniform(0.5, 50.0, 50) - 1j * rng.uniform(0.0, 10.0, 50), [1e4 + 0j, 1e4 - 30j]])
    plus, minus = plus_minus(cfg0, p, lower_p_prime(cfg0, p))
    assert np.allclose(plus * minus, cfg0.kappa2, rtol=1e-12, atol=0.0)
    _, small = plus_minus(cfg0, 1e4 + 0j, lower_p_prime(cfg0, 1e4 + 0j))
    assert complex(small) == pytest.approx(cfg0.kappa2 / 2e4, rel=1e-6)


@pytest.mark.parametrize("index", [4, 19, 39])
def test_asymptotic_pole_converges_to_located_pole(cfg0, poles, index):
    located = _positive(poles)[index].p
    n = int(round((lower_p_prime(cfg0, located) * cfg0.L).real / np.pi))
    assert asymptotic_pole(cfg0, n, iterations=30) == pytest.approx(located, rel=1e-9)


def test_zero_counts_add_over_adjacent_boxes(cfg0, poles):
    p1, p2 = _positive(poles)[0].p, _positive(poles)[1].p
    mid = 0.5 * (p1.real + p2.real)
    low, high = 2.0 * p1.real - mid, 2.0 * p2.real - mid
    bottom = min(p1.imag, p2.imag) - 1.0
    left = count_zeros(cfg0, (low, mid, bottom, -1e-3))
    right = count_zeros(cfg0, (mid, high, bottom, -1e-3))
    assert (left, right) == (1, 1)
    assert count_zeros(cfg0, (low, high, bottom, -1e-3)) == 2


def test_no_zeros_in_upper_half_plane(cfg0):
    assert count_zeros(cfg0, (0.5, 20.0, 0.1, 3.0)) == 0


def test_zero_count_of_first_forty(cfg0, poles):
    found = _positive(poles)
    last, before = found[-1].p, found[-2].p
    box = (0.0, last.real + 0.5 * (last.real - before.real), min(pole.p.imag for pole in found) - 1.0, -1e-3)
    assert count_poles(cfg0, box) == 40


@pytest.mark.slow
def test_long_pole_table(cfg0, long_poles):
    found = _positive(long_poles)
    assert len(long_poles) == 3200
    assert len(found) == 1600
    assert max(pole.residual for pole in long_poles) < 1e-10
    reals = np.array([pole.p.real for pole in found])
    assert np.all(np.diff(reals) > 0)
    assert all(-np.pi / 4 < np.angle(pole.p) < 0 for pole in found)
    columns = (lower_p_prime(cfg0, np.array([pole.p for pole in found])) * cfg0.L).real / np.pi
    gaps = np.diff(columns)
    assert np.all((gaps > 0.5) & (gaps < 1.5))
