"""Command-line entry point ``gamow-barrier``"""
import argparse
import sys
from typing import List, Optional

from .config import RunConfiguration
from .exceptions import ConfigurationError, GamowError
from .factory import SolverFactory
from .models import LogLevel, OutputFormat
from .commands.builtin import BUILTIN_COMMANDS
from .utils.formatting import display_checks, display_error, display_pole_table, display_run_header, display_rows, display_summary
from .utils.output import ResultWriter


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="gamow-barrier",
        description="Exact time evolution of a plane wave on a square barrier via resonance expansions.",
    )
    parser.add_argument("command", choices=[command.metadata.name for command in BUILTIN_COMMANDS])
    parser.add_argument("--config", help="JSON configuration file (defaults: GAMOW_CONFIG, then built-in values)")
    parser.add_argument("--output", help="Write rows to this file instead of stdout")
    parser.add_argument("--format", choices=[fmt.value for fmt in OutputFormat], help="Output format")
    parser.add_argument("--count", type=int, help="Number of (n, -n) pole pairs to locate")
    parser.add_argument("--pairs", type=int, help="Pole pairs kept in series")
    parser.add_argument("--plot-data", dest="plot_data", help="Directory for per-t profile files (evolve)")
    parser.add_argument("--no-oracle", dest="oracle", action="store_false", help="Skip quadrature checks in validate")
    parser.add_argument("--quiet", action="store_true", help="Only print warnings and errors")
    return parser.parse_args(argv)


def load_configuration(args: argparse.Namespace) -> RunConfiguration:
    config = RunConfiguration.from_env(args.config)
    output = config.output.model_copy(update={
        key: value
        for key, value in (
            ("path", args.output),
            ("format", OutputFormat(args.format) if args.format else None),
            ("plot_data", args.plot_data),
        )
        if value is not None
    })
    overrides = {"output": output}
    if args.count is not None:
        overrides["pole_count"] = args.count
    if args.quiet:
        overrides["log_level"] = LogLevel.QUIET
    return config.with_overrides(**overrides)


def run(args: argparse.Namespace) -> int:
    config = load_configuration(args)
    factory = SolverFactory(config)
    logger = factory.get_logger()
    registry = factory.get_registry()
    implementation = registry.get_implementation(args.command)
    options = {"count": args.count, "pairs": args.pairs, "oracle": args.oracle}
    if args.pairs is not None and args.pairs < 1:
        raise ConfigurationError("pair count must be at least 1", "pairs")

    logger.on_command_start(args.command, options)
    if config.log_level is not LogLevel.QUIET:
        display_run_header(args.command, config.params, config.k)
    outcome = implementation().execute(factory.create_context(), **options)
    factory.state.set_command_result(args.command, outcome)

    writer = ResultWriter(config.output)
    writer.write(outcome.rows)
    profiles = writer.write_profiles(outcome.samples)

    if config.log_level is not LogLevel.QUIET:
        if args.command == "poles":
            display_pole_table(factory.get_poles(args.count))
        elif outcome.checks:
            display_checks(outcome.checks)
        elif config.output.path is not None:
            display_rows(args.command, outcome.rows)
        display_summary(outcome.summary)
    logger.on_command_done(args.command, {**outcome.summary, "profiles": [str(path) for path in profiles]})
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    try:
        return run(args)
    except GamowError as e:
        display_error(str(e))
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
