from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class RegionTag(str, Enum):
    """Spatial region relative to the barrier [0, L]"""
    I = "I"      # x < 0
    II = "II"    # 0 <= x <= L
    III = "III"  # x > L

    @classmethod
    def of(cls, x: float, width: float) -> "RegionTag":
        if x < 0.0:
            return cls.I
        if x > width:
            return cls.III
        return cls.II


class ScatteringKind(str, Enum):
    """Stationary scattering solutions; r/l follow the right(left)-moving character"""
    IN_R = "in_r"
    IN_L = "in_l"
    OUT_R = "out_r"
    OUT_L = "out_l"


class KernelKind(str, Enum):
    I = "I"
    I0 = "I0"
    I1 = "I1"
    I2 = "I2"


class SumRule(str, Enum):
    B_RULE = "B-rule"
    S_RULE = "S-rule"
    DELTA_RULE = "delta-rule"


class LogLevel(str, Enum):
    """Controls how much the console logger prints"""
    QUIET = "quiet"  # warnings and errors only
    INFO = "info"
    DEBUG = "debug"  # pole search progress and quadrature statistics


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class BarrierParams(BaseModel):
    """Physical configuration of the square barrier (hbar = 1)"""
    model_config = ConfigDict(frozen=True)

    m: float = Field(gt=0, description="Particle mass")
    V: float = Field(gt=0, description="Barrier height")
    L: float = Field(gt=0, description="Barrier width")

    @property
    def alpha(self) -> float:
        """alpha = 2m"""
        return 2.0 * self.m

    @property
    def kappa2(self) -> float:
        """kappa^2 = 2mV"""
        return 2.0 * self.m * self.V

    @property
    def kappa(self) -> float:
        return float(np.sqrt(self.kappa2))

    def tau(self, t: float) -> float:
        return t / (2.0 * self.m)

    @classmethod
    def cfg0(cls) -> "BarrierParams":
        """Canonical desk-scale configuration m=0.5, V=10, L=1"""
        return cls(m=0.5, V=10.0, L=1.0)


class SeriesControl(BaseModel):
    """Truncation policy for pole sums"""
    pairs: int = Field(default=800, gt=0, description="Maximum number of (n, -n) pole pairs")
    tail_tolerance: float = Field(default=1e-6, gt=0, description="Relative size of the last pairs that ends summation")
    stall_window: int = Field(default=3, gt=0, description="Consecutive small pairs required to stop early")
    tau_min: Optional[float] = Field(
        default=None,
        gt=0,
        description="Reduced time below which the exact t->0 limit replaces the series; defaults to 1e-5*2mL^2",
    )


class ContourSpec(BaseModel):
    """Integration path for the inverse-Laplace oracle"""
    epsilon: float = Field(default=1e-3, gt=0, description="Upward shift of the real-p path")
    p_max: Optional[float] = Field(default=None, gt=0, description="Cutoff of the straight middle segment")
    panels: int = Field(default=16, ge=4, description="Gauss-Legendre nodes per panel")
    panel_width: float = Field(default=1.0, gt=0, description="Initial panel length in units of the local oscillation scale")
    rotation: Optional[float] = Field(
        default=None,
        description="Angle of the tail rays; None lets the oracle follow the pole table",
    )
    tolerance: float = Field(default=1e-9, gt=0, description="Requested absolute error")
    max_depth: int = Field(default=40, gt=0, description="Maximum adaptive bisection depth")


class GridSpec(BaseModel):
    x: List[float] = Field(default_factory=lambda: [-0.5, 0.25, 0.5, 0.75, 1.5], description="Positions")
    t: List[float] = Field(default_factory=lambda: [0.05, 0.2, 1.0], description="Times")
    p: List[complex] = Field(default_factory=lambda: [1.7 + 0.4j, 2.0 + 0j], description="Laplace momenta")
    y: List[float] = Field(default_factory=lambda: [0.7], description="Second Green-function coordinate")
    k: List[float] = Field(default_factory=lambda: [1.0, 3.0, 5.0], description="Momenta for transmission tables")

    @field_validator("x", "t", "p", "y", "k")
    @classmethod
    def _non_empty(cls, value: List[Any]) -> List[Any]:
        if not value:
            raise ValueError("grid must not be empty")
        return value

    @field_validator("t")
    @classmethod
    def _positive_times(cls, value: List[float]) -> List[float]:
        if any(t <= 0 for t in value):
            raise ValueError("times must be positive")
        return value


class OutputSpec(BaseModel):
    format: OutputFormat = Field(default=OutputFormat.CSV, description="Machine-readable output format")
    path: Optional[str] = Field(default=None, description="Output file; stdout when omitted")
    plot_data: Optional[str] = Field(default=None, description="Directory for per-t columnar profiles")


class CommandMetadata(BaseModel):
    """Base schema for command metadata"""
    name: str = Field(description="Unique identifier for the command")
    description: str = Field(description="Human-readable description of what the command does")
    tags: List[str] = Field(default_factory=list, description="Categories of the command")
    options_schema: Dict[str, Any] = Field(default_factory=dict, description="Accepted keyword options")


@dataclass(frozen=True)
class MomentumFrame:
    """Complex momentum p with p' = sqrt(p^2 - 2mV), plus = p + p', minus = p - p'"""
    p: complex
    p_prime: complex
    plus: complex
    minus: complex

    @classmethod
    def from_p(cls, params: BarrierParams, p: complex) -> "MomentumFrame":
        p = complex(p)
        pp = complex(np.sqrt(complex(p * p - params.kappa2) + 0j))
        plus, minus = p + pp, p - pp
        if abs(plus) >= abs(minus):
            minus = params.kappa2 / plus
        else:
            plus = params.kappa2 / minus
        return cls(p=p, p_prime=pp, plus=plus, minus=minus)

    def flipped(self) -> "MomentumFrame":
        return MomentumFrame(p=self.p, p_prime=-self.p_prime, plus=self.minus, minus=self.plus)


@dataclass(frozen=True)
class ResonancePole:
    n: int
    p: complex
    norm: complex
    residual: float

    @property
    def frame_sign(self) -> int:
        return 1 if self.n > 0 else -1


@dataclass(frozen=True)
class GreenQuery:
    x: float
    y: float
    p: complex


@dataclass(frozen=True)
class TimePoint:
    t: float
    m: float

    @property
    def tau(self) -> float:
        return self.t / (2.0 * self.m)


@dataclass(frozen=True)
class KernelRequest:
    kind: KernelKind
    x: float
    tau: float
    q: Optional[complex] = None

    def __post_init__(self) -> None:
        if self.kind is KernelKind.I and self.q is not None:
            raise ValueError("kernel I takes no momentum")
        if self.kind is not KernelKind.I and self.q is None:
            raise ValueError(f"kernel {self.kind.value} requires a momentum q")


@dataclass
class BracketFactors:
    """Time-dependent bracket factors of one region, keyed by name"""
    region: RegionTag
    x: float
    tau: float
    scalars: Dict[str, complex] = field(default_factory=dict)
    per_pole: Dict[str, np.ndarray] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Any:
        if name in self.scalars:
            return self.scalars[name]
        return self.per_pole[name]

    def names(self) -> List[str]:
        return list(self.scalars) + list(self.per_pole)


@dataclass(frozen=True)
class AmplitudeSet:
    """Amplitudes of the matched p-domain solution: B e^{-ipx} left, M e^{ip'x} + N e^{-ip'x} inside, A e^{ip(x-L)} right"""
    A: complex
    B: complex
    M: complex
    N: complex
    k: float
    p: complex


@dataclass(frozen=True)
class ScatteringSolution:
    """phi(x) = norm * piecewise {L1 e^{ikx} + L2 e^{-ikx}; P e^{ik'x} + Q e^{-ik'x}; R1 e^{ik(x-L)} + R2 e^{-ik(x-L)}}"""
    kind: ScatteringKind
    k: float
    R: complex
    P: complex
    Q: complex
    T: complex
    coefficients: Tuple[complex, ...]
    normalization: float


@dataclass(frozen=True)
class WaveSample:
    region: RegionTag
    x: float
    t: float
    psi: complex
    tail_estimate: float = 0.0
    pairs_used: int = 0
    limit_value: bool = False


@dataclass(frozen=True)
class SeriesOutcome:
    value: complex
    tail_estimate: float
    pairs_used: int


@dataclass(frozen=True)
class OracleResult:
    value: complex
    error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    threshold: float
    passed: bool
    detail: str = ""
