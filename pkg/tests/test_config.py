import json

import pytest

from gamow_barrier.config import RunConfiguration
from gamow_barrier.exceptions import ConfigurationError, OutputError
from gamow_barrier.models import BarrierParams, LogLevel, OutputFormat


def test_defaults_are_the_canonical_barrier():
    config = RunConfiguration()
    assert config.params == BarrierParams.cfg0()
    assert config.k == 3.0
    assert config.log_level is LogLevel.INFO
    assert config.tau_min == pytest.approx(1e-5)


def test_params_block_and_top_level_keys():
    nested = RunConfiguration.from_dict({"params": {"m": 1.0, "V": 3.0, "L": 2.0}, "k": 2.5})
    assert nested.params == BarrierParams(m=1.0, V=3.0, L=2.0)
    assert nested.k == 2.5

    flat = RunConfiguration.from_dict({"V": 4.0})
    assert flat.params == BarrierParams(m=0.5, V=4.0, L=1.0)


def test_sections_are_validated_with_field_paths():
    with pytest.raises(ConfigurationError) as info:
        RunConfiguration.from_dict({"params": {"m": -1.0, "V": 10.0, "L": 1.0}})
    assert info.value.field_path == "params.m"

    with pytest.raises(ConfigurationError) as info:
        RunConfiguration.from_dict({"grid": {"t": [0.1, -0.2]}})
    assert info.value.field_path.startswith("grid.t")

    with pytest.raises(ConfigurationError) as info:
        RunConfiguration.from_dict({"series": {"pairs": 0}})
    assert info.value.field_path == "series.pairs"


def test_rejects_bad_scalars():
    with pytest.raises(ConfigurationError):
        RunConfiguration.from_dict({"log_level": "loud"})
    with pytest.raises(ConfigurationError):
        RunConfiguration.from_dict({"k": -3.0})
    with pytest.raises(ConfigurationError):
        RunConfiguration.from_dict({"k": "fast"})
    with pytest.raises(ConfigurationError):
        RunConfiguration.from_dict([1, 2, 3])


def test_configuration_errors_exit_with_two():
    assert ConfigurationError("bad").exit_code == 2
    assert OutputError("bad").exit_code == 4


def test_json_file_sections(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"k": 4.0, "output": {"format": "json"}, "series": {"tau_min": 1e-4}}))
    config = RunConfiguration.from_json_file(str(path))
    assert config.k == 4.0
    assert config.output.format is OutputFormat.JSON
    assert config.tau_min == 1e-4


def test_json_file_errors(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{\"k\": ")
    with pytest.raises(ConfigurationError):
        RunConfiguration.from_json_file(str(broken))
    with pytest.raises(OutputError):
        RunConfiguration.from_json_file(str(tmp_path / "missing.json"))


def test_environment_selects_file_and_level(tmp_path, monkeypatch):
    path = tmp_path / "env.json"
    path.write_text(json.dumps({"count": 12}))
    monkeypatch.setenv("GAMOW_CONFIG", str(path))
    monkeypatch.setenv("GAMOW_LOG", "DEBUG")
    config = RunConfiguration.from_env()
    assert config.pole_count == 12
    assert config.log_level is LogLevel.DEBUG

    monkeypatch.setenv("GAMOW_LOG", "chatty")
    with pytest.raises(ConfigurationError):
        RunConfiguration.from_env()


def test_overrides_revalidate():
    config = RunConfiguration()
    assert config.with_overrides(k=5.0).k == 5.0
    assert config.k == 3.0
    with pytest.raises(ConfigurationError):
        config.with_overrides(pole_count=0)
