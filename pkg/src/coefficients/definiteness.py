"""
Definiteness type of a problem.

The weight form ∫ w|y|² is indefinite iff w takes both signs on sets of
positive measure. The Dirichlet form ∫ (p|y'|² + q|y|²) is indefinite iff the
smallest eigenvalue μ0 of -(py')' + qy = μy, y(a) = 0 = y(b) is negative.
"""
from dataclasses import dataclass
from enum import Enum
import logging
import math
from typing import Tuple

import numpy as np
from scipy.optimize import brentq

from ..errors import AuxiliaryEigenvalueError
from ..shooting.propagator import real_characteristic
from .piecewise import PiecewiseCoefficient, Sign
from .problem import Problem

logger = logging.getLogger(__name__)

AUXILIARY_GRID = 256


class DefinitenessClass(Enum):
    """
    RIGHT_DEFINITE: weight form definite (whatever the Dirichlet form does)
    LEFT_DEFINITE: weight form indefinite, Dirichlet form definite
    NON_DEFINITE: both forms indefinite
    """
    RIGHT_DEFINITE = "right_definite"
    LEFT_DEFINITE = "left_definite"
    NON_DEFINITE = "non_definite"


@dataclass(frozen=True)
class DefinitenessReport:
    """Ingredients of the definiteness decision"""
    weight_positive: float  # ∫ w+
    weight_negative: float  # ∫ w-
    auxiliary_eigenvalue: float  # μ0
    weight_indefinite: bool
    form_indefinite: bool
    definiteness: DefinitenessClass

    @property
    def definite_both(self) -> bool:
        """Both forms definite: right definite and left definite at once"""
        return not self.weight_indefinite and not self.form_indefinite


def auxiliary_search_window(prob: Problem) -> Tuple[float, float]:
    """
    Window that must contain μ0.

    μ0 <= max q + max p · π²/(b-a)² (Rayleigh quotient of the first sine mode),
    and D > 0 below min q.
    """
    q_min, q_max = prob.q.bounds()
    _, p_max = prob.p.bounds()
    lo = q_min - 1.0
    hi = q_max + 1.25 * p_max * math.pi ** 2 / prob.interval.length ** 2 + 1.0
    return lo, hi


def auxiliary_ground_eigenvalue(prob: Problem, samples: int = AUXILIARY_GRID) -> float:
    """
    Smallest eigenvalue μ0 of the weight-1 problem with the same p and q.

    Raises:
        AuxiliaryEigenvalueError: No sign change of D found in the search window
    """
    aux = prob.with_weight(PiecewiseCoefficient.constant(prob.interval, 1.0), name=f"{prob.name} (auxiliary)")
    window = auxiliary_search_window(prob)
    grid = np.linspace(window[0], window[1], samples)
    D = real_characteristic(aux, grid)

    if D[0] <= 0.0:
        raise AuxiliaryEigenvalueError(
            f"D({grid[0]}) = {D[0]} is not positive below the auxiliary spectrum", window
        )
    changes = np.nonzero((D[:-1] > 0.0) & (D[1:] <= 0.0))[0]
    if len(changes) == 0:
        raise AuxiliaryEigenvalueError(
            f"No auxiliary eigenvalue in [{window[0]}, {window[1]}]", window
        )
    i = int(changes[0])
    if D[i + 1] == 0.0:
        return float(grid[i + 1])
    mu0 = brentq(lambda mu: float(real_characteristic(aux, [mu])[0]), grid[i], grid[i + 1], xtol=1e-13, rtol=4 * np.finfo(float).eps)
    logger.debug(f"Auxiliary ground eigenvalue of {prob.name}: {mu0}")
    return float(mu0)


def definiteness_report(prob: Problem) -> DefinitenessReport:
    w_pos = prob.w.integrate_part(Sign.POSITIVE)
    w_neg = prob.w.integrate_part(Sign.NEGATIVE)
    weight_indefinite = w_pos > 0.0 and w_neg > 0.0
    mu0 = auxiliary_ground_eigenvalue(prob)
    form_indefinite = mu0 < 0.0

    if not weight_indefinite:
        cls = DefinitenessClass.RIGHT_DEFINITE
    elif form_indefinite:
        cls = DefinitenessClass.NON_DEFINITE
    else:
        cls = DefinitenessClass.LEFT_DEFINITE

    return DefinitenessReport(
        weight_positive=w_pos,
        weight_negative=w_neg,
        auxiliary_eigenvalue=mu0,
        weight_indefinite=weight_indefinite,
        form_indefinite=form_indefinite,
        definiteness=cls,
    )


def definiteness_class(prob: Problem) -> DefinitenessClass:
    """Classify prob as right-, left- or non-definite"""
    return definiteness_report(prob).definiteness
