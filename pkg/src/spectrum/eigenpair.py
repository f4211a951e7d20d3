"""
Eigenvalue / eigenfunction pairs.
"""
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from ..coefficients.problem import Problem
from ..shooting.propagator import char_fn
from ..shooting.shoot import DEFAULT_TOL, ShotSolution, eigenfunction_shot

if TYPE_CHECKING:
    from ..classification.forms import FormValues
    from ..classification.ghosts import GhostClass


@dataclass(frozen=True, eq=False)
class Eigenpair:
    """
    A zero of D with its eigenfunction.

    Attributes:
        lam: Eigenvalue
        multiplicity: Order of the zero of D
        eigenfunction: Shot at lam normalized so that max|y| = 1
        residual: |D(lam)| relative to |D_prime|·max(1, |lam|) plus the peak of
            the raw outward shot, a backward error that stays meaningful
            when D grows exponentially with lam
        osc_count: Interior zeros of the eigenfunction (real lam only)
        ghost_class: Filled by classification
        forms: Quadratic form values, filled by classification
    """
    lam: complex
    multiplicity: int
    eigenfunction: ShotSolution
    residual: float
    osc_count: Optional[int] = None
    ghost_class: Optional["GhostClass"] = None
    forms: Optional["FormValues"] = None

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError(f"multiplicity must be >= 1, got {self.multiplicity}")
        if self.osc_count is not None and not self.is_real:
            raise ValueError("osc_count is only defined for real eigenvalues")

    @property
    def is_real(self) -> bool:
        return complex(self.lam).imag == 0.0

    @property
    def problem(self) -> Problem:
        return self.eigenfunction.problem

    @property
    def is_classified(self) -> bool:
        return self.ghost_class is not None


def relative_residual(D: complex, D_prime: complex, lam: complex, peak: float) -> float:
    """|D| against the local scale of D, so roots of steep and flat D compare alike"""
    scale = abs(D_prime) * max(1.0, abs(lam)) + peak
    return abs(D) / scale if scale > 0 else abs(D)


def make_eigenpair(prob: Problem, lam: complex, multiplicity: int = 1, tol: float = DEFAULT_TOL) -> Eigenpair:
    """Shoot at lam from both ends, normalize the eigenfunction and record the relative residual"""
    lam = complex(lam)
    if lam.imag == 0.0:
        lam = complex(lam.real, 0.0)
    D, D_prime = char_fn(prob, lam)
    shot = eigenfunction_shot(prob, lam, tol=tol)
    head = shot.grid <= shot.match
    peak = float(np.max(np.abs(shot.y[head]))) if np.any(head) else 0.0
    residual = relative_residual(D, D_prime, lam, peak)
    return Eigenpair(lam=lam, multiplicity=multiplicity, eigenfunction=shot.normalized(), residual=residual)
