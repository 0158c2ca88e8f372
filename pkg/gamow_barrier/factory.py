from typing import List, Optional

from .barrier import find_resonances
from .commands.base import CommandContext
from .commands.builtin import register_builtin_commands
from .commands.registry import CommandRegistry
from .config import RunConfiguration
from .models import ResonancePole
from .state import RunState
from .utils.logging import ConsoleRunLogger, get_logger


class SolverFactory:
    """Wires configuration, logger, pole cache and command registry"""

    def __init__(self, config: RunConfiguration):
        self.config = config
        self.state = RunState()
        self._logger: Optional[ConsoleRunLogger] = None
        self._registry: Optional[CommandRegistry] = None

    def get_logger(self) -> ConsoleRunLogger:
        if self._logger is None:
            self._logger = get_logger("gamow", self.config.log_level)
        return self._logger

    def get_registry(self) -> CommandRegistry:
        """Get or create the registry with the built-in commands"""
        if self._registry is None:
            self._registry = CommandRegistry()
            register_builtin_commands(self._registry)
        return self._registry

    def get_poles(self, count: Optional[int] = None) -> List[ResonancePole]:
        """Pole table for ``count`` pairs, located once per run"""
        count = count or self.config.pole_count
        cached = self.state.get_poles(count)
        if cached is not None:
            return cached
        poles = find_resonances(self.config.params, count, self.get_logger())
        self.state.set_poles(count, poles)
        return poles

    def create_context(self) -> CommandContext:
        return CommandContext(config=self.config, logger=self.get_logger(), state=self.state, factory=self)
