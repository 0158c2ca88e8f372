from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, ClassVar, Dict, List, Optional

from ..config import RunConfiguration
from ..models import BarrierParams, CheckResult, CommandMetadata, ResonancePole, WaveSample
from ..state import RunState
from ..utils.logging import RunLogger

if TYPE_CHECKING:
    from ..factory import SolverFactory


@dataclass
class CommandContext:
    """Everything a command needs from the run"""
    config: RunConfiguration
    logger: RunLogger
    state: RunState
    factory: "SolverFactory"

    @property
    def params(self) -> BarrierParams:
        return self.config.params

    @property
    def k(self) -> float:
        return self.config.k

    def poles(self, count: Optional[int] = None) -> List[ResonancePole]:
        return self.factory.get_poles(count)


@dataclass
class CommandOutcome:
    """Rows for the writer plus anything the console summary shows"""
    rows: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    samples: List[WaveSample] = field(default_factory=list)
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class BaseCommand(ABC):
    """Base class for all commands"""

    metadata: ClassVar[CommandMetadata]

    @classmethod
    def get_metadata(cls) -> CommandMetadata:
        return cls.metadata

    @abstractmethod
    def execute(self, context: CommandContext, **options: Any) -> CommandOutcome:
        """Run the command against the configured barrier"""
