from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .models import ResonancePole


@dataclass
class RunState:
    """Container for run state shared between commands"""

    # Pole tables keyed by the number of located pairs
    pole_tables: Dict[int, List[ResonancePole]] = field(default_factory=dict)

    # Command execution state
    command_results: Dict[str, Any] = field(default_factory=dict)
    last_command: Optional[str] = None

    def get_poles(self, count: int) -> Optional[List[ResonancePole]]:
        """Smallest cached table holding at least ``count`` pairs, truncated to it"""
        sizes = sorted(size for size in self.pole_tables if size >= count)
        if not sizes:
            return None
        table = self.pole_tables[sizes[0]]
        return [pole for pole in table if abs(pole.n) <= count]

    def set_poles(self, count: int, poles: List[ResonancePole]) -> None:
        self.pole_tables[count] = poles

    def set_command_result(self, command: str, result: Any) -> None:
        """Store a command result"""
        self.command_results[command] = result
        self.last_command = command

    def get_command_result(self, command: str, default: Any = None) -> Any:
        return self.command_results.get(command, default)

    def clear(self) -> None:
        """Clear all state"""
        self.pole_tables.clear()
        self.command_results.clear()
        self.last_command = None
