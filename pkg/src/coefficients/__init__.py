"""
Problem definition: interval, piecewise coefficients and definiteness.
"""

from .interval import Interval
from .piecewise import (
    Constant,
    PiecewiseCoefficient,
    Polynomial,
    Segment,
    Sign,
    eval_coefficient,
    integrate_part,
)
from .problem import Cell, Problem
from .fixtures import classical_problem, fixture, sign_weight_problem, two_turning_point_problem
from .definiteness import (
    DefinitenessClass,
    DefinitenessReport,
    auxiliary_ground_eigenvalue,
    definiteness_class,
    definiteness_report,
)

__all__ = [
    "Interval",
    "Constant",
    "PiecewiseCoefficient",
    "Polynomial",
    "Segment",
    "Sign",
    "eval_coefficient",
    "integrate_part",
    "Cell",
    "Problem",
    "classical_problem",
    "fixture",
    "sign_weight_problem",
    "two_turning_point_problem",
    "DefinitenessClass",
    "DefinitenessReport",
    "auxiliary_ground_eigenvalue",
    "definiteness_class",
    "definiteness_report",
]
