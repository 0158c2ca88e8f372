"""Built-in commands: one per physical quantity the package computes"""
from typing import Any, Dict, List, Optional, Type

import numpy as np

from ..diagnostics import run_validation
from ..evolution import psi_t_sample, stationary_limit, sum_rule_residual
from ..greenfn import is_corner, green_closed, green_pole_series, green_subtracted_series
from ..laplace import p_psi_bar_series, psi_bar_direct, psi_bar_green
from ..models import CommandMetadata, GreenQuery, RegionTag, SumRule, TimePoint
from ..oracle import oracle_psi
from ..stationary import transmission_table
from .base import BaseCommand, CommandContext, CommandOutcome
from .registry import CommandRegistry

_PAIRS_OPTION = {"pairs": {"type": "integer", "description": "Pole pairs kept in the series"}}


def _pairs(context: CommandContext, options: Dict[str, Any]) -> int:
    return int(options.get("pairs") or context.config.series.pairs)


def _relative(a: complex, b: complex) -> float:
    return float(abs(a - b) / max(abs(b), 1e-300))


class PolesCommand(BaseCommand):
    metadata = CommandMetadata(
        name="poles",
        description="Locate the resonance poles p_n and their norms",
        tags=["poles", "spectrum"],
        options_schema={"count": {"type": "integer", "description": "Number of (n, -n) pairs"}},
    )

    def execute(self, context: CommandContext, **options: Any) -> CommandOutcome:
        poles = context.poles(options.get("count"))
        rows = [
            {
                "n": pole.n,
                "re_p": pole.p.real,
                "im_p": pole.p.imag,
                "re_norm": pole.norm.real,
                "im_norm": pole.norm.imag,
                "residual": pole.residual,
            }
            for pole in poles
        ]
        summary = {"poles": len(poles), "max_residual": max(pole.residual for pole in poles)}
        return CommandOutcome(rows=rows, summary=summary)


class GreenCommand(BaseCommand):
    metadata = CommandMetadata(
        name="green",
        description="Outgoing Green function in closed form against its pole expansion",
        tags=["green", "p-domain"],
        options_schema=_PAIRS_OPTION,
    )

    def execute(self, context: CommandContext, **options: Any) -> CommandOutcome:
        params, grid = context.params, context.config.grid
        pairs = _pairs(context, options)
        poles = context.poles(pairs)
        inside = [x for x in grid.x if 0.0 <= x <= params.L]
        rows = []
        for x in inside:
            for y in grid.y:
                for p in grid.p:
                    query = GreenQuery(x, y, complex(p))
                    closed = green_closed(params, query)
                    if is_corner(params, x, y):
                        series = green_subtracted_series(params, query, poles, pairs)
                    else:
                        series = green_pole_series(params, query, poles, pairs)
                    rows.append({
                        "x": x,
                        "y": y,
                        "re_p": query.p.real,
                        "im_p": query.p.imag,
                        "re_G": closed.real,
                        "im_G": closed.imag,
                        "re_series": series.real,
                        "im_series": series.imag,
                        "deviation": _relative(series, closed),
                    })
        summary = {"points": len(rows), "pairs": pairs, "max_deviation": max((r["deviation"] for r in rows), default=0.0)}
        return CommandOutcome(rows=rows, summary=summary)


class PsibarCommand(BaseCommand):
    metadata = CommandMetadata(
        name="psibar",
        description="Laplace-domain solution by the matching and Green routes and by the pole series",
        tags=["laplace", "p-domain"],
        options_schema=_PAIRS_OPTION,
    )

    def execute(self, context: CommandContext, **options: Any) -> CommandOutcome:
        params, k, grid = context.params, context.k, context.config.grid
        pairs = _pairs(context, options)
        poles = context.poles(pairs)
        rows = []
        for x in grid.x:
            region = RegionTag.of(x, params.L)
            for p in grid.p:
                p = complex(p)
                direct = psi_bar_direct(params, k, x, p)
                green = psi_bar_green(params, k, region, x, p)
                series = p_psi_bar_series(params, k, region, x, p, poles, pairs) / p
                rows.append({
                    "region": region.value,
                    "x": x,
                    "re_p": p.real,
                    "im_p": p.imag,
                    "re_direct": direct.real,
                    "im_direct": direct.imag,
                    "re_green": green.real,
                    "im_green": green.imag,
                    "route_deviation": _relative(green, direct),
                    "re_series": series.real,
                    "im_series": series.imag,
                    "series_deviation": _relative(series, direct),
                })
        summary = {
            "points": len(rows),
            "max_route_deviation": max((r["route_deviation"] for r in rows), default=0.0),
            "max_series_deviation": max((r["series_deviation"] for r in rows), default=0.0),
        }
        return CommandOutcome(rows=rows, summary=summary)


class EvolveCommand(BaseCommand):
    metadata = CommandMetadata(
        name="evolve",
        description="Time-dependent wave function from the resonance expansion",
        tags=["time-domain"],
        options_schema=_PAIRS_OPTION,
    )

    def execute(self, context: CommandContext, **options: Any) -> CommandOutcome:
        params, k, config = context.params, context.k, context.config
        pairs = _pairs(context, options)
        poles = context.poles(pairs)
        control = config.series.model_copy(update={"pairs": pairs, "tau_min": config.tau_min})
        rows, samples = [], []
        for t in config.grid.t:
            time = TimePoint(t=t, m=params.m)
            for x in config.grid.x:
                region = RegionTag.of(x, params.L)
                sample = psi_t_sample(params, region, x, time, k, poles, pairs, control, context.logger)
                samples.append(sample)
                rows.append({
                    "region": region.value,
                    "x": x,
                    "t": t,
                    "re_psi": sample.psi.real,
                    "im_psi": sample.psi.imag,
                    "abs2": abs(sample.psi) ** 2,
                    "tail_estimate": sample.tail_estimate,
                })
        summary = {
            "samples": len(samples),
            "max_tail": max(sample.tail_estimate for sample in samples),
            "max_pairs_used": max(sample.pairs_used for sample in samples),
        }
        return CommandOutcome(rows=rows, summary=summary, samples=samples)


class OracleCommand(BaseCommand):
    metadata = CommandMetadata(
        name="oracle",
        description="Inverse-Laplace quadrature of the wave function along a pole-avoiding path",
        tags=["time-domain", "oracle"],
        options_schema={},
    )

    def execute(self, context: CommandContext, **options: Any) -> CommandOutcome:
        params, k, config = context.params, context.k, context.config
        poles = context.poles()
        rows = []
        for t in config.grid.t:
            for x in config.grid.x:
                result = oracle_psi(params, k, x, t, config.contour, poles, context.logger)
                rows.append({
                    "region": RegionTag.of(x, params.L).value,
                    "x": x,
                    "t": t,
                    "re_psi": result.value.real,
                    "im_psi": result.value.imag,
                    "abs2": abs(result.value) ** 2,
                    "error_estimate": result.error_estimate,
                })
        summary = {"samples": len(rows), "max_error": max((r["error_estimate"] for r in rows), default=0.0)}
        return CommandOutcome(rows=rows, summary=summary)


class LimitsCommand(BaseCommand):
    metadata = CommandMetadata(
        name="limits",
        description="Short- and long-time limits and the Gamow-function sum rules",
        tags=["time-domain", "diagnostics"],
        options_schema=_PAIRS_OPTION,
    )

    SHORT_TIMES = (1e-1, 1e-2, 1e-3)
    LONG_TIMES = (10.0, 50.0)

    def execute(self, context: CommandContext, **options: Any) -> CommandOutcome:
        params, k, config = context.params, context.k, context.config
        pairs = _pairs(context, options)
        poles = context.poles(pairs)
        control = config.series.model_copy(update={"pairs": pairs, "tau_min": config.tau_min})
        rows: List[Dict[str, Any]] = []
        for x in config.grid.x:
            region = RegionTag.of(x, params.L)
            for t in self.SHORT_TIMES + self.LONG_TIMES:
                time = TimePoint(t=t, m=params.m)
                psi = psi_t_sample(params, region, x, time, k, poles, pairs, control, context.logger).psi
                if t in self.SHORT_TIMES:
                    name, residual = "initial", abs(psi - np.exp(1j * k * x))
                else:
                    name, residual = "stationary", _relative(psi, stationary_limit(params, region, x, time, k))
                rows.append({"diagnostic": name, "x": x, "t": t, "residual": float(residual)})
            if 0.0 < x < params.L:
                for rule in SumRule:
                    value = sum_rule_residual(params, rule, x, poles, pairs)
                    rows.append({"diagnostic": rule.value, "x": x, "t": 0.0, "residual": value})
        return CommandOutcome(rows=rows, summary={"rows": len(rows), "pairs": pairs})


class TransmissionCommand(BaseCommand):
    metadata = CommandMetadata(
        name="transmission",
        description="Stationary transmission and reflection probabilities",
        tags=["stationary"],
        options_schema={},
    )

    def execute(self, context: CommandContext, **options: Any) -> CommandOutcome:
        rows = transmission_table(context.params, list(context.config.grid.k))
        return CommandOutcome(rows=rows, summary={"momenta": len(rows)})


class ValidateCommand(BaseCommand):
    metadata = CommandMetadata(
        name="validate",
        description="Run the invariant suite and report measured residuals",
        tags=["diagnostics"],
        options_schema={
            **_PAIRS_OPTION,
            "oracle": {"type": "boolean", "description": "Include the quadrature comparisons"},
        },
    )

    def execute(self, context: CommandContext, **options: Any) -> CommandOutcome:
        pairs = _pairs(context, options)
        control = context.config.series.model_copy(update={"pairs": pairs})
        checks = run_validation(
            context.params,
            context.k,
            context.poles(pairs),
            control,
            include_oracle=bool(options.get("oracle", True)),
            logger=context.logger,
        )
        rows = [
            {"check": c.name, "measured": c.measured, "threshold": c.threshold, "passed": c.passed} for c in checks
        ]
        summary = {"checks": len(checks), "failed": sum(1 for c in checks if not c.passed)}
        return CommandOutcome(rows=rows, summary=summary, checks=checks)


BUILTIN_COMMANDS: List[Type[BaseCommand]] = [
    PolesCommand,
    GreenCommand,
    PsibarCommand,
    EvolveCommand,
    OracleCommand,
    LimitsCommand,
    TransmissionCommand,
    ValidateCommand,
]


def register_builtin_commands(registry: CommandRegistry, commands: Optional[List[Type[BaseCommand]]] = None) -> None:
    for command in commands or BUILTIN_COMMANDS:
        registry.register(metadata=command.get_metadata(), implementation=command)
