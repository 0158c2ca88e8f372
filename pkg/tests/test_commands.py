import pytest

from gamow_barrier.commands import BUILTIN_COMMANDS, CommandRegistry, register_builtin_commands
from gamow_barrier.commands.builtin import PolesCommand, TransmissionCommand
from gamow_barrier.config import RunConfiguration
from gamow_barrier.factory import SolverFactory
from gamow_barrier.models import LogLevel
from gamow_barrier.state import RunState


@pytest.fixture
def factory():
    return SolverFactory(RunConfiguration(log_level=LogLevel.QUIET, pole_count=6))


def test_registry_rejects_duplicates():
    registry = CommandRegistry()
    registry.register(metadata=PolesCommand.get_metadata(), implementation=PolesCommand)
    with pytest.raises(ValueError):
        registry.register(metadata=PolesCommand.get_metadata(), implementation=PolesCommand)


def test_builtin_commands_are_registered():
    registry = CommandRegistry()
    register_builtin_commands(registry)
    names = [command.name for command in registry.list_commands()]
    assert names == ["poles", "green", "psibar", "evolve", "oracle", "limits", "transmission", "validate"]
    assert len(BUILTIN_COMMANDS) == len(names)
    assert registry.get_implementation("oracle").metadata.name == "oracle"
    assert registry.get_implementation("missing") is None


def test_tag_lookup_needs_every_tag():
    registry = CommandRegistry()
    register_builtin_commands(registry)
    time_domain = {command.name for command in registry.get_commands_by_tags(["time-domain"])}
    assert time_domain == {"evolve", "oracle", "limits"}
    assert [c.name for c in registry.get_commands_by_tags(["time-domain", "oracle"])] == ["oracle"]


def test_subset_registration():
    registry = CommandRegistry()
    register_builtin_commands(registry, [TransmissionCommand])
    assert [command.name for command in registry.list_commands()] == ["transmission"]


def test_pole_tables_are_cached_and_truncated(factory):
    first = factory.get_poles(6)
    assert len(first) == 12
    assert factory.get_poles(3) == [pole for pole in first if abs(pole.n) <= 3]
    assert factory.get_poles(6) == first
    assert list(factory.state.pole_tables) == [6]
    assert factory.state.get_poles(7) is None


def test_run_state_bookkeeping():
    state = RunState()
    state.set_command_result("poles", 1)
    state.set_command_result("transmission", 2)
    assert state.last_command == "transmission"
    assert state.get_command_result("poles") == 1
    assert state.get_command_result("green", "none") == "none"
    state.clear()
    assert state.command_results == {} and state.last_command is None


def test_poles_command_rows(factory):
    outcome = PolesCommand().execute(factory.create_context(), count=4)
    assert len(outcome.rows) == 8
    assert list(outcome.rows[0]) == ["n", "re_p", "im_p", "re_norm", "im_norm", "residual"]
    assert outcome.summary["poles"] == 8
    assert outcome.summary["max_residual"] < 1e-10
    assert outcome.passed


def test_transmission_command_rows(factory):
    outcome = TransmissionCommand().execute(factory.create_context())
    assert [row["k"] for row in outcome.rows] == [1.0, 3.0, 5.0]
    for row in outcome.rows:
        assert row["abs_T2"] + row["abs_R2"] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.filterwarnings("ignore::gamow_barrier.exceptions.InsufficientPolesWarning")
def test_green_command_compares_routes(factory):
    registry = factory.get_registry()
    outcome = registry.get_implementation("green")().execute(factory.create_context(), pairs=20)
    # x in [0, L] times one y times two p
    assert len(outcome.rows) == 6
    assert all(row["deviation"] >= 0.0 for row in outcome.rows)
