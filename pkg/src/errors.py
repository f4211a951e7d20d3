"""
Exception hierarchy shared by the library, the CLI and the HTTP surface.

Every class carries the process exit code the CLI maps it to.
"""
from typing import Optional, Tuple


class SturmError(Exception):
    """Base class for all library errors"""
    exit_code = 1


class ProblemDefinitionError(SturmError, ValueError):
    """Invalid coefficients, interval or input file"""
    exit_code = 2


class DomainError(SturmError, ValueError):
    """Evaluation point outside the problem interval"""
    exit_code = 2


class IntegrationError(SturmError):
    """ODE integration failed (step-size underflow or solver failure)"""
    exit_code = 3

    def __init__(self, message: str, x: Optional[float] = None, lam: Optional[complex] = None):
        super().__init__(message)
        self.x = x
        self.lam = lam


class IntegrityError(SturmError):
    """y and py' vanish together at a detected zero"""
    exit_code = 3

    def __init__(self, message: str, x: float, ratio: float):
        super().__init__(message)
        self.x = x
        self.ratio = ratio


class AuxiliaryEigenvalueError(SturmError):
    """Smallest eigenvalue of the weight-1 problem could not be bracketed"""
    exit_code = 3

    def __init__(self, message: str, window: Tuple[float, float]):
        super().__init__(message)
        self.window = window


class ContourError(SturmError):
    """A zero of D sits on a contour side after all perturbation retries"""
    exit_code = 3

    def __init__(self, message: str, side: str):
        super().__init__(message)
        self.side = side


class QRConvergenceError(SturmError):
    """Shifted QR iteration did not converge"""
    exit_code = 3

    def __init__(self, message: str, active_block: int, iterations: int):
        super().__init__(message)
        self.active_block = active_block
        self.iterations = iterations


class CertificateError(SturmError):
    """Argument-principle count differs from the refined eigenvalues"""
    exit_code = 4


class UncertifiedInventoryError(SturmError):
    """Operation requires an inventory whose certificate matched"""
    exit_code = 4


class WindowTooSmallError(SturmError):
    """Fewer than the required stabilized oscillation counts were observed"""
    exit_code = 5


class CheckFailedError(SturmError):
    """A verification check failed"""
    exit_code = 6

    def __init__(self, message: str, check_names: Tuple[str, ...] = ()):
        super().__init__(message)
        self.check_names = check_names


class NotSupportedError(SturmError):
    """Input outside the supported scope of an operation"""
    exit_code = 2


class MeshAlignmentError(NotSupportedError):
    """Coefficient breakpoints do not fall on the finite-difference mesh"""
