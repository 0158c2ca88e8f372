import numpy as np
import pytest

from gamow_barrier.evolution import (
    bracket_factors,
    free_wave_cancellation,
    kernel,
    kernel_I,
    kernel_I0,
    kernel_I1,
    kernel_J,
    erfc_bracket_factors,
    psi_t,
    psi_t_sample,
    stationary_limit,
    sum_rule_residual,
    tau_min_default,
    y_argument,
)
from gamow_barrier.barrier import pole_arrays
from gamow_barrier.exceptions import DomainError
from gamow_barrier.models import KernelKind, KernelRequest, RegionTag, SeriesControl, SumRule, TimePoint

K = 3.0


def _time(params, t):
    return TimePoint(t=t, m=params.m)


def test_linear_kernel_closed_form():
    a, tau = 0.5, 0.2
    expected = -(np.exp(0.25j * np.pi) / np.sqrt(np.pi * tau)) * (a / (2 * tau)) * np.exp(1j * a * a / (4 * tau))
    assert kernel_I(a, tau) == pytest.approx(expected, rel=1e-12)


def test_kernel_request_uses_offset_from_right_edge(cfg0):
    q = 3.0 - 0.1j
    request = KernelRequest(kind=KernelKind.I0, x=1.5, tau=0.2, q=q)
    assert kernel(request, cfg0) == pytest.approx(complex(kernel_I0(0.5, q, 0.2)), rel=1e-14)
    request = KernelRequest(kind=KernelKind.I1, x=1.5, tau=0.2, q=q)
    assert kernel(request, cfg0) == pytest.approx(complex(kernel_I1(0.5, q, 0.2)), rel=1e-14)


def test_kernel_request_validation():
    with pytest.raises(ValueError):
        KernelRequest(kind=KernelKind.I, x=1.5, tau=0.2, q=1.0)
    with pytest.raises(ValueError):
        KernelRequest(kind=KernelKind.I2, x=1.5, tau=0.2)


def test_kernels_need_positive_tau():
    with pytest.raises(DomainError):
        kernel_J(0.5, 0.0)
    with pytest.raises(DomainError):
        kernel_I0(0.5, 3.0, -1.0)


@pytest.mark.parametrize("region,x", [(RegionTag.II, 0.5), (RegionTag.III, 1.5)])
@pytest.mark.parametrize("tau", [0.1, 0.2, 0.5])
def test_erfc_form_factors_match_kernel_route(cfg0, poles, region, x, tau):
    time = TimePoint(t=2.0 * cfg0.m * tau, m=cfg0.m)
    factors = bracket_factors(cfg0, region, x, time, K, poles, pairs=3)
    erfc_form = erfc_bracket_factors(cfg0, region, x, time, K, np.stack(pole_arrays(poles, 3)))
    for name, value in erfc_form.items():
        np.testing.assert_allclose(factors[name], value, rtol=1e-9)


def test_bracket_factor_names(cfg0, poles):
    time = _time(cfg0, 0.2)
    region_i = bracket_factors(cfg0, RegionTag.I, -0.5, time, K, poles, pairs=4)
    assert set(region_i.names()) >= {"B", "S_0", "S_k", "C1", "C2", "C3", "C4", "A_n", "B_n", "S_n"}
    assert region_i["A_n"].shape == (2, 4)
    with pytest.raises(DomainError):
        erfc_bracket_factors(cfg0, RegionTag.I, -0.5, time, K, np.stack(pole_arrays(poles, 3)))


def test_free_wave_cancellation_decays(cfg0):
    x = 1.5 * cfg0.L
    values = [abs(free_wave_cancellation(cfg0, x, _time(cfg0, t), K)) for t in (10.0, 50.0)]
    assert values[1] < values[0]
    tau = cfg0.tau(50.0)
    assert values[1] <= 1.05 / (np.sqrt(np.pi) * np.sqrt(tau) * K)


def test_short_time_returns_initial_wave(cfg0, poles):
    control = SeriesControl(pairs=40, tau_min=1e-3)
    sample = psi_t_sample(cfg0, RegionTag.II, 0.5, _time(cfg0, 1e-4), K, poles, 40, control)
    assert sample.limit_value
    assert sample.psi == pytest.approx(np.exp(1j * K * 0.5))
    assert tau_min_default(cfg0) == pytest.approx(1e-5)


def test_position_must_lie_in_region(cfg0, poles):
    with pytest.raises(DomainError):
        psi_t(cfg0, RegionTag.I, 0.5, _time(cfg0, 0.2), K, poles, 40)
    with pytest.raises(DomainError):
        psi_t(cfg0, RegionTag.II, 0.5, _time(cfg0, -0.2), K, poles, 40)


def test_sample_reports_truncation(cfg0, poles):
    sample = psi_t_sample(cfg0, RegionTag.III, 1.5, _time(cfg0, 0.2), K, poles, 40)
    assert sample.region is RegionTag.III
    assert 1 <= sample.pairs_used <= 40
    assert np.isfinite(sample.psi)
    assert not sample.limit_value


def test_stationary_limit_in_region_iii_is_transmitted_wave(cfg0):
    time = _time(cfg0, 5.0)
    value = stationary_limit(cfg0, RegionTag.III, 2.0, time, K)
    assert abs(value) <= 1.0
    inside = stationary_limit(cfg0, RegionTag.II, cfg0.L, time, K)
    edge = stationary_limit(cfg0, RegionTag.III, cfg0.L, time, K)
    assert inside == pytest.approx(edge, rel=1e-10)


@pytest.mark.slow
def test_recovers_initial_wave_as_time_shrinks(cfg0, long_poles):
    x = 0.5 * cfg0.L
    deviations = [
        abs(psi_t(cfg0, RegionTag.II, x, _time(cfg0, t), K, long_poles, 800) - np.exp(1j * K * x))
        for t in (1e-1, 1e-2, 1e-3)
    ]
    assert deviations[0] > deviations[1] > deviations[2]


@pytest.mark.slow
@pytest.mark.parametrize("x", [-0.5, 0.25, 0.75, 1.5, 2.5])
def test_approaches_stationary_scattering(cfg0, long_poles, x):
    region = RegionTag.of(x, cfg0.L)

    def deviation(t):
        time = _time(cfg0, t)
        psi = psi_t(cfg0, region, x, time, K, long_poles, 800)
        limit = stationary_limit(cfg0, region, x, time, K)
        return abs(psi - limit) / abs(limit)

    late = deviation(50.0)
    assert late < deviation(10.0)
    assert late <= 1e-2


@pytest.mark.slow
@pytest.mark.parametrize("rule,bound", [(SumRule.S_RULE, 1e-2), (SumRule.B_RULE, 1e-2), (SumRule.DELTA_RULE, 5e-2)])
def test_sum_rules_converge(cfg0, long_poles, rule, bound):
    x = 0.5 * cfg0.L
    coarse = sum_rule_residual(cfg0, rule, x, long_poles, 400)
    fine = sum_rule_residual(cfg0, rule, x, long_poles, 800)
    assert fine <= bound
    assert fine < coarse


def test_sum_rules_need_interior_points(cfg0, poles):
    with pytest.raises(DomainError):
        sum_rule_residual(cfg0, SumRule.S_RULE, 1.5, poles, 10)


def test_kernel_arguments_turn_with_time(poles):
    p_n = np.array([pole.p for pole in poles if pole.n > 0])
    momenta = np.concatenate([[K, -K], p_n])
    early = np.angle(y_argument(0.5, momenta, 1e-8))
    assert early == pytest.approx(np.full(momenta.size, -np.pi / 4), abs=1e-4)
    late = np.angle(y_argument(0.5, momenta, 1e6))
    assert late[0] == pytest.approx(3 * np.pi / 4, abs=1e-6)
    assert late[1] == pytest.approx(-np.pi / 4, abs=1e-6)
    assert np.all((late[2:] > np.pi / 2) & (late[2:] < 3 * np.pi / 4))
