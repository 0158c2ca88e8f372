import warnings
from pathlib import Path

import numpy as np
import pytest

from gamow_barrier.exceptions import DomainError
from gamow_barrier.greenfn import scattering_from_green
from gamow_barrier.models import ScatteringKind
from gamow_barrier.stationary import (
    evaluate_solution,
    scattering_phi,
    scattering_solution,
    transmission,
    transmission_table,
)


@pytest.mark.parametrize("k", [1.0, 3.0, 5.0])
def test_flux_conservation(cfg0, k):
    solution = scattering_solution(ScatteringKind.IN_R, cfg0, k)
    assert abs(abs(solution.R) ** 2 + abs(solution.T) ** 2 - 1.0) <= 1e-12


@pytest.mark.parametrize("k", [1.0, 3.0, 5.0])
def test_transmission_routes_agree(cfg0, k):
    solution = scattering_solution(ScatteringKind.IN_R, cfg0, k)
    assert transmission(cfg0, k) == pytest.approx(solution.T, rel=1e-11)


def test_outgoing_condition_at_right_edge(cfg0):
    solution = scattering_solution(ScatteringKind.IN_R, cfg0, 3.0)
    value = evaluate_solution(cfg0, solution, cfg0.L)
    slope = evaluate_solution(cfg0, solution, cfg0.L, derivative=True)
    assert abs(slope - 3j * value) <= 1e-10 * abs(value)


def test_solution_is_continuous_at_both_edges(cfg0):
    solution = scattering_solution(ScatteringKind.IN_L, cfg0, 2.0)
    for edge in (0.0, cfg0.L):
        for derivative in (False, True):
            inner = evaluate_solution(cfg0, solution, edge, derivative)
            outer = evaluate_solution(cfg0, solution, edge + (-1e-14 if edge == 0.0 else 1e-14), derivative)
            assert inner == pytest.approx(outer, rel=1e-9, abs=1e-12)


def test_green_extraction_matches_matching_solve(cfg0):
    x = 0.5 * cfg0.L
    direct = scattering_phi(ScatteringKind.IN_R, cfg0, 3.0, x)
    assert scattering_from_green(cfg0, x, 3.0) == pytest.approx(direct, rel=1e-10)


def test_left_incidence_from_green(cfg0):
    x = 0.3 * cfg0.L
    direct = scattering_phi(ScatteringKind.IN_L, cfg0, 3.0, x)
    assert scattering_from_green(cfg0, x, 3.0, ScatteringKind.IN_L) == pytest.approx(direct, rel=1e-10)


def test_out_solutions_are_conjugate_in_solutions(cfg0):
    x = np.array([-0.7, 0.2, 0.9, 1.6])
    out_r = scattering_phi(ScatteringKind.OUT_R, cfg0, 2.5, x)
    in_l = scattering_phi(ScatteringKind.IN_L, cfg0, 2.5, x)
    np.testing.assert_allclose(out_r, np.conj(in_l), rtol=1e-12, atol=1e-14)


def test_green_extraction_rejects_out_solutions(cfg0):
    with pytest.raises(DomainError):
        scattering_from_green(cfg0, 0.5, 3.0, ScatteringKind.OUT_R)


def test_threshold_momentum_is_refused(cfg0):
    with pytest.raises(DomainError):
        scattering_solution(ScatteringKind.IN_R, cfg0, np.sqrt(10.0))


def test_non_positive_momentum_is_refused(cfg0):
    with pytest.raises(DomainError):
        transmission(cfg0, 0.0)


def test_tunnelling_grows_below_the_barrier(cfg0):
    rows = transmission_table(cfg0, [0.5, 1.0, 2.0, 3.0])
    probabilities = [row["abs_T2"] for row in rows]
    assert probabilities == sorted(probabilities)
    for row in rows:
        assert row["abs_T2"] + row["abs_R2"] == pytest.approx(1.0, abs=1e-12)
        assert set(row) == {"k", "re_T", "im_T", "abs_T2", "abs_R2"}


@pytest.mark.parametrize("k", [1.0, 3.0, 5.0])
def test_left_incidence_mirrors_right_incidence(cfg0, k):
    x = np.linspace(-1.0, 2.0, 13)
    from_left = np.abs(scattering_phi(ScatteringKind.IN_L, cfg0, k, x))
    from_right = np.abs(scattering_phi(ScatteringKind.IN_R, cfg0, k, cfg0.L - x))
    assert from_left == pytest.approx(from_right, rel=1e-10)


def test_sources_compile_without_escape_warnings():
    package = Path(scattering_solution.__code__.co_filename).parent
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for path in sorted(package.rglob("*.py")):
            compile(path.read_text(encoding="utf-8"), str(path), "exec")
    assert "e^{+/-ikx}" in scattering_solution.__doc__
