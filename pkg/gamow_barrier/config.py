import json
import os
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError

from .exceptions import ConfigurationError, OutputError
from .models import BarrierParams, ContourSpec, GridSpec, LogLevel, OutputSpec, SeriesControl


def _field_path(error: Dict[str, Any], prefix: str) -> str:
    loc = ".".join(str(part) for part in error.get("loc", ()))
    return f"{prefix}.{loc}" if loc else prefix


def _build(model: type, data: Any, prefix: str) -> BaseModel:
    try:
        return model.model_validate(data if data is not None else {})
    except ValidationError as exc:
        first = exc.errors()[0]
        raise ConfigurationError(first.get("msg", "invalid value"), _field_path(first, prefix)) from exc


@dataclass
class RunConfiguration:
    """Configuration for one gamow-barrier run"""
    params: BarrierParams = field(default_factory=BarrierParams.cfg0)
    k: float = field(default=3.0)
    series: SeriesControl = field(default_factory=SeriesControl)
    contour: ContourSpec = field(default_factory=ContourSpec)
    grid: GridSpec = field(default_factory=GridSpec)
    output: OutputSpec = field(default_factory=OutputSpec)
    log_level: LogLevel = field(default=LogLevel.INFO)
    pole_count: int = field(default=40)

    def __post_init__(self) -> None:
        if not self.k > 0:
            raise ConfigurationError("incident momentum must be positive", "k")
        if self.pole_count < 1:
            raise ConfigurationError("pole count must be at least 1", "count")

    @property
    def tau_min(self) -> float:
        if self.series.tau_min is not None:
            return self.series.tau_min
        return 1e-5 * 2.0 * self.params.m * self.params.L ** 2

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> "RunConfiguration":
        """Create configuration from a JSON-like dictionary"""
        if not isinstance(config_dict, dict):
            raise ConfigurationError("configuration must be a JSON object")
        params_raw = config_dict.get("params")
        if params_raw is None:
            params_raw = {key: config_dict[key] for key in ("m", "V", "L") if key in config_dict}
            params = _build(BarrierParams, {**BarrierParams.cfg0().model_dump(), **params_raw}, "params")
        else:
            params = _build(BarrierParams, params_raw, "params")

        level_raw = config_dict.get("log_level", LogLevel.INFO.value)
        try:
            log_level = LogLevel(level_raw)
        except ValueError as exc:
            raise ConfigurationError(f"unknown log level {level_raw!r}", "log_level") from exc

        try:
            k = float(config_dict.get("k", 3.0))
            pole_count = int(config_dict.get("count", 40))
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(str(exc), "k") from exc

        return cls(
            params=params,
            k=k,
            series=_build(SeriesControl, config_dict.get("series"), "series"),
            contour=_build(ContourSpec, config_dict.get("contour"), "contour"),
            grid=_build(GridSpec, config_dict.get("grid"), "grid"),
            output=_build(OutputSpec, config_dict.get("output"), "output"),
            log_level=log_level,
            pole_count=pole_count,
        )

    @classmethod
    def from_json_file(cls, path: str) -> "RunConfiguration":
        try:
            with open(path, "r", encoding="utf-8") as handle:
                data = json.load(handle)
        except OSError as exc:
            raise OutputError(f"cannot read configuration {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"invalid JSON at line {exc.lineno}: {exc.msg}", path) from exc
        return cls.from_dict(data)

    @classmethod
    def from_env(cls, path: Optional[str] = None) -> "RunConfiguration":
        """Create configuration from a JSON file named by the argument or GAMOW_CONFIG

        GAMOW_LOG overrides the log level of the file.
        """
        load_dotenv()
        path = path or os.getenv("GAMOW_CONFIG")
        config = cls.from_json_file(path) if path else cls()
        level = os.getenv("GAMOW_LOG")
        if level:
            try:
                config = config.with_overrides(log_level=LogLevel(level.strip().lower()))
            except ValueError as exc:
                raise ConfigurationError(f"unknown log level {level!r}", "GAMOW_LOG") from exc
        return config

    def with_overrides(self, **overrides) -> "RunConfiguration":
        """Create new config with overridden values"""
        return replace(self, **overrides)
