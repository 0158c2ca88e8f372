import pytest

from gamow_barrier.diagnostics import (
    check_brackets,
    check_green,
    check_poles,
    check_psibar,
    check_scattering,
    check_special_functions,
    run_validation,
)
from gamow_barrier.models import SeriesControl

K = 3.0


def _failures(results):
    return [(r.name, r.measured, r.threshold) for r in results if not r.passed]


def test_fast_check_groups_pass(cfg0, poles):
    results = (
        check_special_functions()
        + check_poles(cfg0, poles)
        + check_psibar(cfg0, K)
        + check_scattering(cfg0, (1.0, 3.0, 5.0))
        + check_brackets(cfg0, K, poles)
    )
    assert _failures(results) == []
    assert all(r.measured >= 0.0 for r in results)


@pytest.mark.slow
def test_green_check_reports_the_pair_count(cfg0, long_poles):
    results = check_green(cfg0, long_poles, 800)
    assert _failures(results) == []
    assert results[-1].detail == "800 pairs"


@pytest.mark.slow
def test_full_report_without_oracle(cfg0, long_poles, quiet_logger):
    results = run_validation(cfg0, K, long_poles, SeriesControl(), include_oracle=False, logger=quiet_logger)
    names = [r.name for r in results]
    assert len(names) == len(set(names))
    assert "causality at t < 0" not in names
    assert _failures(results) == []
