"""
Shooting: characteristic function, its λ-derivative and full trajectories.
"""

from .propagator import characteristic, char_fn, real_characteristic, transfer_kernels
from .shoot import ShotSolution, eigenfunction_shot, matching_point, phase_grid, shoot
from .trajectory import trajectory_frame, write_trajectory_csv

__all__ = [
    "characteristic",
    "char_fn",
    "real_characteristic",
    "transfer_kernels",
    "ShotSolution",
    "shoot",
    "eigenfunction_shot",
    "matching_point",
    "phase_grid",
    "trajectory_frame",
    "write_trajectory_csv",
]
