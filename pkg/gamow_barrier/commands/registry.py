from typing import Dict, List, Optional, Type

from ..models import CommandMetadata
from .base import BaseCommand


class CommandRegistry:
    """Central registry for command management"""

    def __init__(self):
        self.commands: Dict[str, CommandMetadata] = {}
        self._implementations: Dict[str, Type[BaseCommand]] = {}

    def register(self, *, metadata: CommandMetadata, implementation: Type[BaseCommand]) -> None:
        """Register a command and its implementation"""
        if metadata.name in self.commands:
            raise ValueError(f"Command {metadata.name} is already registered")
        self.commands[metadata.name] = metadata
        self._implementations[metadata.name] = implementation

    def get_command(self, name: str) -> Optional[CommandMetadata]:
        return self.commands.get(name)

    def get_implementation(self, name: str) -> Optional[Type[BaseCommand]]:
        """Get command implementation by name"""
        return self._implementations.get(name)

    def list_commands(self) -> List[CommandMetadata]:
        return list(self.commands.values())

    def get_commands_by_tags(self, tags: List[str]) -> List[CommandMetadata]:
        """Get commands that have all specified tags"""
        return [
            command for command in self.commands.values()
            if all(tag in command.tags for tag in tags)
        ]
