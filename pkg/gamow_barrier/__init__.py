"""gamow-barrier - exact time evolution of a plane wave on a square barrier"""

from .barrier import find_resonances
from .config import RunConfiguration
from .evolution import psi_t, psi_t_sample
from .exceptions import ConfigurationError, DomainError, GamowError, NumericalError
from .factory import SolverFactory
from .models import BarrierParams, RegionTag, TimePoint

__version__ = "0.1.0"

__all__ = [
    "find_resonances",
    "RunConfiguration",
    "psi_t",
    "psi_t_sample",
    "ConfigurationError",
    "DomainError",
    "GamowError",
    "NumericalError",
    "SolverFactory",
    "BarrierParams",
    "RegionTag",
    "TimePoint",
]
