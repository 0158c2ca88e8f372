import json
import os
from abc import ABC, abstractmethod
from datetime import datetime
from typing import Any, Dict, Optional

from rich.console import Console
from rich.panel import Panel
from rich.theme import Theme

from gamow_barrier.models import LogLevel


theme = Theme({
    "info": "cyan",
    "warning": "yellow",
    "error": "red",
    "success": "green",
    "timestamp": "dim cyan",
    "command": "magenta",
    "pole": "blue",
})

# stdout carries only CSV/JSON rows
console = Console(theme=theme, stderr=True)

_LEVEL_RANK = {LogLevel.QUIET: 0, LogLevel.INFO: 1, LogLevel.DEBUG: 2}


class RunLogger(ABC):
    """Abstract base class for run logging"""

    def __init__(self, run_id: str, level: LogLevel = LogLevel.INFO):
        self.run_id = run_id
        self.level = level

    def enabled(self, level: LogLevel) -> bool:
        return _LEVEL_RANK[self.level] >= _LEVEL_RANK[level]

    @abstractmethod
    def info(self, message: str, **kwargs) -> None:
        """Log an informational message"""
        pass

    @abstractmethod
    def warning(self, message: str, **kwargs) -> None:
        pass

    @abstractmethod
    def error(self, message: str, **kwargs) -> None:
        pass

    @abstractmethod
    def debug(self, message: str, **kwargs) -> None:
        """Log a debug message"""
        pass

    @abstractmethod
    def on_command_start(self, command: str, options: Dict[str, Any]) -> None:
        pass

    @abstractmethod
    def on_command_done(self, command: str, summary: Dict[str, Any]) -> None:
        pass


class ConsoleRunLogger(RunLogger):
    """Console implementation of the run logger"""

    def _emit(self, tag: str, message: str, kwargs: Dict[str, Any]) -> None:
        timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        console.print(f"[timestamp]{timestamp}[/timestamp] {tag}: {message}")
        if kwargs:
            console.print(Panel(json.dumps(self._sanitize_for_json(kwargs), indent=2), title="Additional Info"))

    def info(self, message: str, **kwargs) -> None:
        if self.enabled(LogLevel.INFO):
            self._emit("[info]INFO[/info]", message, kwargs)

    def warning(self, message: str, **kwargs) -> None:
        self._emit("[warning]WARNING[/warning]", message, kwargs)

    def error(self, message: str, **kwargs) -> None:
        self._emit("[error]ERROR[/error]", message, kwargs)

    def debug(self, message: str, **kwargs) -> None:
        if self.enabled(LogLevel.DEBUG):
            self._emit("[dim]DEBUG[/dim]", message, kwargs)

    def _sanitize_for_json(self, obj: Any) -> Any:
        if isinstance(obj, (str, int, float, bool, type(None))):
            return obj
        if isinstance(obj, complex):
            return {"re": obj.real, "im": obj.imag}
        if isinstance(obj, (list, tuple)):
            return [self._sanitize_for_json(item) for item in obj]
        if isinstance(obj, dict):
            return {str(k): self._sanitize_for_json(v) for k, v in obj.items()}
        if hasattr(obj, "item"):
            return self._sanitize_for_json(obj.item())
        return str(obj)

    def on_command_start(self, command: str, options: Dict[str, Any]) -> None:
        self.info(f"Starting [command]{command}[/command]", **options)

    def on_command_done(self, command: str, summary: Dict[str, Any]) -> None:
        self.info(f"Finished [command]{command}[/command]", **summary)


def level_from_env(default: LogLevel = LogLevel.INFO) -> LogLevel:
    raw = os.getenv("GAMOW_LOG")
    if not raw:
        return default
    try:
        return LogLevel(raw.strip().lower())
    except ValueError:
        return default


def get_logger(run_id: str = "gamow", level: Optional[LogLevel] = None) -> ConsoleRunLogger:
    """Console logger honoring GAMOW_LOG when no level is given"""
    return ConsoleRunLogger(run_id, level if level is not None else level_from_env())
