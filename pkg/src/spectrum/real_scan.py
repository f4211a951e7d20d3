"""
Real eigenvalues: bracketing sign changes of D and resolving tangencies.
"""
from dataclasses import dataclass, field
import logging
from typing import Iterator, List, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ..coefficients.interval import Interval
from ..coefficients.problem import Problem
from ..errors import ContourError
from ..shooting.propagator import DEFAULT_RTOL, char_fn, real_characteristic
from ..shooting.shoot import DEFAULT_TOL, shoot
from .contour import count_rect
from .eigenpair import Eigenpair, make_eigenpair
from .grid import real_grid
from .window import Rectangle

logger = logging.getLogger(__name__)

DEFAULT_REFINE_TOL = 1e-10
# |D| below this fraction of the neighbouring |D| at a sign-preserving minimum is a tangency
TANGENCY_THRESHOLD = 1e-6
# roots closer than this (relative to 1 + |λ|) are one double eigenvalue
MERGE_DISTANCE = 1e-7
# roots within this multiple of tol from 0 are reported as λ = 0 exactly
ZERO_SNAP = 10.0
# |D| within this many rounding units of the trajectory size is a zero of D
ROUNDING_FACTOR = 64.0


@dataclass(frozen=True)
class TangencyCandidate:
    """A near-zero minimum of |D| on the real axis that could not be resolved"""
    lam: float
    D: float
    zeros_nearby: int
    note: str


@dataclass
class RealScan:
    """Result of scan_real: eigenpairs sorted by λ plus unresolved candidates"""
    pairs: List[Eigenpair] = field(default_factory=list)
    flagged: List[TangencyCandidate] = field(default_factory=list)

    def __iter__(self) -> Iterator[Eigenpair]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __getitem__(self, index: int) -> Eigenpair:
        return self.pairs[index]

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([e.lam.real for e in self.pairs])


def _refine_sign_change(prob: Problem, lo: float, hi: float, tol: float) -> float:
    return float(brentq(
        lambda lam: float(real_characteristic(prob, [lam])[0]),
        lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=200,
    ))


def _second_derivative(prob: Problem, lam: float) -> float:
    h = 1e-4 * (1.0 + abs(lam))
    _, dp_plus = char_fn(prob, lam + h)
    _, dp_minus = char_fn(prob, lam - h)
    return (dp_plus.real - dp_minus.real) / (2.0 * h)


def _rounding_floor(prob: Problem, lam: float) -> float:
    """
    Size of D that cannot be told apart from 0 at λ: rounding on constant
    cells, the integrator tolerance elsewhere, times the size of the trajectory.
    """
    shot = shoot(prob, lam)
    size = float(np.max(np.abs(shot.y)) + prob.interval.length * np.max(np.abs(shot.py_prime)))
    eps = np.finfo(float).eps if all(cell.is_constant for cell in prob.cells) else DEFAULT_RTOL
    return ROUNDING_FACTOR * eps * size


def _refine_double(prob: Problem, lo: float, hi: float, lam_min: float, tol: float) -> float:
    """A double zero of D is a simple zero of ∂D/∂λ; keep lam_min when ∂D/∂λ has no sign change on [lo, hi]"""
    def derivative(lam: float) -> float:
        return char_fn(prob, lam)[1].real

    d_lo, d_hi = derivative(lo), derivative(hi)
    if d_lo * d_hi >= 0.0:
        return lam_min
    return float(brentq(derivative, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=200))


def _resolve_tangency(
    prob: Problem, lo: float, hi: float, lam_min: float, tol: float
) -> Tuple[List[Tuple[float, int]], List[TangencyCandidate]]:
    """
    Count zeros of D on a square around a near-zero minimum and decide
    between a double real root and a near-real conjugate pair.
    """
    D0 = float(real_characteristic(prob, [lam_min])[0])
    half = 0.5 * (hi - lo)
    try:
        n = count_rect(prob, Rectangle.around(complex(lam_min, 0.0), half))
    except ContourError as exc:
        logger.warning(f"Tangency near {lam_min} unresolved: {exc}")
        return [], [TangencyCandidate(lam_min, D0, -1, f"contour failure on the {exc.side} side")]

    if n == 0:
        return [], []
    if n == 2:
        curvature = _second_derivative(prob, lam_min)
        split = np.sqrt(2.0 * abs(D0 / curvature)) if curvature != 0.0 else np.inf
        at_rounding = abs(D0) <= _rounding_floor(prob, lam_min)
        if at_rounding or split <= max(tol, MERGE_DISTANCE * (1.0 + abs(lam_min))):
            lam_double = _refine_double(prob, lo, hi, lam_min, tol)
            logger.info(f"Double real eigenvalue at {lam_double}")
            return [(lam_double, 2)], []
        note = f"near-real non-real pair, imaginary part about {split:.3e}"
    else:
        note = f"{n} zeros near a sign-preserving minimum"
    logger.warning(f"Tangency candidate at {lam_min}: {note}")
    return [], [TangencyCandidate(lam_min, D0, n, note)]


def _merge_close(roots: List[Tuple[float, int]]) -> List[Tuple[float, int]]:
    merged: List[Tuple[float, int]] = []
    for lam, mult in sorted(roots):
        if merged and lam - merged[-1][0] <= MERGE_DISTANCE * (1.0 + abs(lam)):
            prev, prev_mult = merged[-1]
            merged[-1] = (0.5 * (prev + lam), prev_mult + mult)
        else:
            merged.append((lam, mult))
    return merged


def real_roots(prob: Problem, lo: float, hi: float, tol: float = DEFAULT_REFINE_TOL):
    """
    Real zeros of D on [lo, hi] with multiplicities, without eigenfunctions.

    Returns:
        (list of (λ, multiplicity), list of TangencyCandidate)
    """
    grid = real_grid(prob, lo, hi)
    D = real_characteristic(prob, grid)
    roots: List[Tuple[float, int]] = []
    flagged: List[TangencyCandidate] = []

    for i in np.nonzero(D == 0.0)[0]:
        roots.append((float(grid[i]), 1))

    for i in np.nonzero(D[:-1] * D[1:] < 0.0)[0]:
        roots.append((_refine_sign_change(prob, grid[i], grid[i + 1], tol), 1))

    absD = np.abs(D)
    for i in range(1, len(grid) - 1):
        if not (absD[i] < absD[i - 1] and absD[i] <= absD[i + 1]):
            continue
        if D[i - 1] * D[i] <= 0.0 or D[i] * D[i + 1] <= 0.0:
            continue
        sign = np.sign(D[i])
        lo_i, hi_i = float(grid[i - 1]), float(grid[i + 1])
        res = minimize_scalar(
            lambda lam: sign * float(real_characteristic(prob, [lam])[0]),
            bounds=(lo_i, hi_i), method="bounded", options={"xatol": tol},
        )
        lam_min, value = float(res.x), float(res.fun)
        if value < 0.0 and -value > _rounding_floor(prob, lam_min):
            # two sign changes hidden between grid points
            roots.append((_refine_sign_change(prob, lo_i, lam_min, tol), 1))
            roots.append((_refine_sign_change(prob, lam_min, hi_i, tol), 1))
            logger.debug(f"Close pair split at {lam_min}")
            continue
        scale = max(absD[i - 1], absD[i + 1])
        if value >= TANGENCY_THRESHOLD * scale:
            continue
        found, flags = _resolve_tangency(prob, lo_i, hi_i, lam_min, tol)
        roots.extend(found)
        flagged.extend(flags)

    merged = [(0.0 if abs(lam) <= ZERO_SNAP * tol else lam, mult) for lam, mult in _merge_close(roots)]
    return merged, flagged


def scan_real(
    prob: Problem,
    range: Interval,
    tol: float = DEFAULT_REFINE_TOL,
    shot_tol: float = DEFAULT_TOL,
) -> RealScan:
    """
    All real eigenvalues in range.

    D is sampled on a grid whose step is 1/64 of the local eigenvalue
    spacing; sign changes are refined by Brent's method to |λ interval| < tol,
    sign-preserving near-zero minima of |D| are resolved with a contour count
    on a small square around them.

    Args:
        prob: Problem
        range: Real search interval
        tol: Refinement tolerance in λ, > 0
        shot_tol: Integration tolerance of the eigenfunction shots

    Returns:
        RealScan with eigenpairs strictly increasing in λ

    Raises:
        ValueError: tol not positive
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    roots, flagged = real_roots(prob, range.a, range.b, tol)
    pairs = [make_eigenpair(prob, lam, multiplicity=mult, tol=shot_tol) for lam, mult in roots]
    logger.info(f"{prob.name}: {len(pairs)} real eigenvalues in [{range.a}, {range.b}], {len(flagged)} flagged")
    return RealScan(pairs=pairs, flagged=flagged)
