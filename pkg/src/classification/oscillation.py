"""
Interior zeros of real eigenfunctions.
"""
import logging
import math

import numpy as np

from ..errors import IntegrityError
from ..shooting.shoot import ShotSolution, phase_grid
from ..spectrum.eigenpair import Eigenpair

logger = logging.getLogger(__name__)

COUNT_PHASE_STEP = math.pi / 4
# (y, py') may not shrink below this fraction of its nearby maximum at a zero of y
INTEGRITY_RATIO = 1e-13
# neighbours on each side of a zero that set the nearby maximum
INTEGRITY_WINDOW = 8


def count_sign_changes(shot: ShotSolution, max_phase_step: float = COUNT_PHASE_STEP) -> int:
    """
    Sign changes of y strictly inside (a, b).

    Samples are spaced so the Prüfer angle advances less than max_phase_step
    between neighbours, so no zero is skipped. Endpoint samples are dropped.

    Raises:
        IntegrityError: y and py' both (nearly) vanish at a detected zero
    """
    xs = phase_grid(shot.problem, shot.lam, max_phase_step)
    y, py = shot.sample(xs)
    y, py = y.real[1:-1], py.real[1:-1]
    xs = xs[1:-1]
    radius = np.hypot(y, py)

    def local_max(k: int) -> float:
        return float(radius[max(0, k - INTEGRITY_WINDOW): k + INTEGRITY_WINDOW + 2].max())

    crossings = np.nonzero(y[:-1] * y[1:] < 0.0)[0]
    exact = np.nonzero(y == 0.0)[0]
    for k in crossings:
        r_cross = float(min(radius[k], radius[k + 1]))
        r_max = local_max(k)
        if r_max > 0 and r_cross / r_max < INTEGRITY_RATIO:
            raise IntegrityError(
                f"y and py' vanish together near x={xs[k]} (ratio {r_cross / r_max:.2e})",
                x=float(xs[k]), ratio=r_cross / r_max,
            )
    for k in exact:
        r_max = local_max(k)
        ratio = abs(py[k]) / r_max if r_max > 0 else 0.0
        if ratio < INTEGRITY_RATIO:
            raise IntegrityError(f"y and py' vanish together at x={xs[k]}", x=float(xs[k]), ratio=ratio)
    return int(len(crossings) + len(exact))


def oscillation_count(e: Eigenpair, max_phase_step: float = COUNT_PHASE_STEP) -> int:
    """
    Number of zeros of a real eigenfunction in (a, b).

    Raises:
        ValueError: e is not real
        IntegrityError: See count_sign_changes
    """
    if not e.is_real:
        raise ValueError(f"Oscillation count needs a real eigenvalue, got {e.lam}")
    n = count_sign_changes(e.eigenfunction, max_phase_step)
    logger.debug(f"lambda={e.lam.real}: {n} interior zeros")
    return n
