"""
sturmghost - spectra, ghost classification and index checks for
non-definite Sturm-Liouville problems.
"""

__version__ = "1.0.0"
__author__ = "sturmghost"

from .coefficients.problem import Problem
from .coefficients.fixtures import classical_problem, sign_weight_problem, two_turning_point_problem, fixture
from .shooting.propagator import char_fn
from .shooting.shoot import shoot
from .spectrum.inventory import SpectralInventory, build_inventory
from .classification.classify import classify, annotate_inventory
from .analysis.profile import profile
from .analysis.report import index_report, check_suite

__all__ = [
    "Problem",
    "classical_problem",
    "sign_weight_problem",
    "two_turning_point_problem",
    "fixture",
    "char_fn",
    "shoot",
    "SpectralInventory",
    "build_inventory",
    "classify",
    "annotate_inventory",
    "profile",
    "index_report",
    "check_suite",
]
