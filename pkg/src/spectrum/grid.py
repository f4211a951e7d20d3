"""
Real-axis sampling grids scaled by the local eigenvalue density.
"""
import math

import numpy as np

from ..coefficients.piecewise import Sign
from ..coefficients.problem import Problem

GRID_FRACTION = 1.0 / 64.0
MIN_GRID_POINTS = 256


def spacing_estimate(prob: Problem, lam: float) -> float:
    """
    Asymptotic distance between consecutive eigenvalues near lam.

    From λ_n ~ (nπ / I)² with I = ∫ sqrt(w±/p): dλ/dn ~ 2π sqrt(|λ|) / I.
    The side without weight falls back to the other side's integral.
    """
    i_pos = prob.oscillation_integral(Sign.POSITIVE)
    i_neg = prob.oscillation_integral(Sign.NEGATIVE)
    density = i_pos if lam >= 0 else i_neg
    if density <= 0.0:
        density = max(i_pos, i_neg)
    return 2.0 * math.pi * math.sqrt(abs(lam) + 1.0) / density


def real_grid(prob: Problem, lo: float, hi: float, fraction: float = GRID_FRACTION) -> np.ndarray:
    """
    Grid on [lo, hi] with step fraction * spacing_estimate, never coarser
    than (hi - lo) / MIN_GRID_POINTS. Always contains lo, hi and 0 when 0 is inside.
    """
    cap = (hi - lo) / MIN_GRID_POINTS
    i_pos = prob.oscillation_integral(Sign.POSITIVE)
    i_neg = prob.oscillation_integral(Sign.NEGATIVE)
    fallback = max(i_pos, i_neg)

    points = [lo]
    x = lo
    while x < hi:
        density = i_pos if x >= 0 else i_neg
        density = density if density > 0.0 else fallback
        step = min(cap, fraction * 2.0 * math.pi * math.sqrt(abs(x) + 1.0) / density)
        if x < 0.0 < min(hi, x + step):
            x = 0.0
        else:
            x = min(hi, x + step)
        points.append(x)
    return np.asarray(points, dtype=float)
