from typing import Optional, Tuple


class GamowError(Exception):
    """Base class for gamow_barrier exceptions"""
    exit_code: int = 3


class ConfigurationError(GamowError):
    """Raised when a run configuration is invalid"""
    exit_code = 2

    def __init__(self, message: str, field_path: Optional[str] = None):
        self.field_path = field_path
        prefix = f"{field_path}: " if field_path else ""
        super().__init__(f"{prefix}{message}")


class OutputError(GamowError):
    """Raised when results cannot be written"""
    exit_code = 4


class NumericalError(GamowError):
    """Base class for numerical failures"""
    pass


class DomainError(NumericalError, ValueError):
    """Raised when an argument lies outside an operation's domain"""
    pass


class FaddeevaOverflowError(NumericalError, OverflowError):
    """Raised when an error-function evaluation would overflow"""
    def __init__(self, argument: complex, detail: str = "result is not representable"):
        self.argument = argument
        super().__init__(f"Faddeeva evaluation at z={argument!r} overflows: {detail}")


class PoleProximityError(NumericalError):
    """Raised when p sits on (or numerically at) a resonance pole"""
    def __init__(self, p: complex, denominator: complex, threshold: float):
        self.p = p
        self.denominator = denominator
        self.threshold = threshold
        super().__init__(
            f"p={p!r} is too close to a resonance pole: |D|={abs(denominator):.3e} < {threshold:.3e}; "
            "use the residue/series route instead"
        )


class ConvergenceError(NumericalError):
    """Raised when a pole search box cannot be resolved"""
    def __init__(self, message: str, box: Optional[Tuple[float, float, float, float]] = None):
        self.box = box
        suffix = f" (box re=[{box[0]:.6g}, {box[1]:.6g}], im=[{box[2]:.6g}, {box[3]:.6g}])" if box else ""
        super().__init__(f"{message}{suffix}")


class BoundaryTooCloseError(ConvergenceError):
    """Raised when a zero lies too close to a counting contour"""
    pass


class ToleranceNotMetError(NumericalError):
    """Raised when quadrature cannot reach the requested tolerance"""
    def __init__(self, achieved: float, requested: float):
        self.achieved = achieved
        self.requested = requested
        super().__init__(
            f"quadrature tolerance not met: estimate {achieved:.3e} > requested {requested:.3e}"
        )


class PoleSweepError(NumericalError):
    """Raised when a deformed contour would cross a resonance pole"""
    def __init__(self, pole: complex, message: str = "contour deformation sweeps across a resonance"):
        self.pole = pole
        super().__init__(f"{message}: p_n={pole!r}")


class InsufficientPolesWarning(UserWarning):
    """Emitted when a truncated pole sum still has a sizeable tail"""
    pass
