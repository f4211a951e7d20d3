"""
Trajectory dump for a single shot.
"""
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from .shoot import ShotSolution

TRAJECTORY_COLUMNS = ["x", "re_y", "im_y", "re_py_prime", "im_py_prime"]


def trajectory_frame(shot: ShotSolution, xs: Optional[np.ndarray] = None) -> pd.DataFrame:
    """
    Tabulate (x, y, py') for a shot.

    Args:
        shot: Shot to tabulate
        xs: Sample points (defaults to the integrator's accepted steps)
    """
    if xs is None:
        xs, y, py = shot.grid, shot.y, shot.py_prime
    else:
        y, py = shot.sample(xs)
    return pd.DataFrame({
        "x": np.asarray(xs, dtype=float),
        "re_y": np.real(y),
        "im_y": np.imag(y),
        "re_py_prime": np.real(py),
        "im_py_prime": np.imag(py),
    }, columns=TRAJECTORY_COLUMNS)


def write_trajectory_csv(
    shot: ShotSolution, filepath: Union[str, Path], xs: Optional[np.ndarray] = None
) -> Path:
    """Write the trajectory CSV with columns x, re_y, im_y, re_py_prime, im_py_prime"""
    path = Path(filepath)
    path.parent.mkdir(parents=True, exist_ok=True)
    trajectory_frame(shot, xs).to_csv(path, index=False, float_format="%.17g")
    return path
