from .base import BaseCommand, CommandContext, CommandOutcome
from .registry import CommandRegistry
from .builtin import BUILTIN_COMMANDS, register_builtin_commands

__all__ = [
    "BaseCommand",
    "CommandContext",
    "CommandOutcome",
    "CommandRegistry",
    "BUILTIN_COMMANDS",
    "register_builtin_commands",
]
