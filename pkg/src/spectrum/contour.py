"""
Argument-principle zero counting for the entire function D.

    N = (1 / 2πi) ∮ D'(λ)/D(λ) dλ

evaluated side by side with adaptive vector quadrature on [Re, Im] of the
integrand. Zeros of D on the contour are detected before integrating.
"""
import logging
import math
from typing import Optional

import numpy as np
from scipy.integrate import quad_vec

from ..coefficients.problem import Problem
from ..errors import ContourError
from ..shooting.propagator import char_fn, characteristic
from .window import Rectangle

logger = logging.getLogger(__name__)

DEFAULT_QUAD_TOL = 1e-6
# a zero closer than this (relative to 1 + |λ|) counts as lying on the contour
CONTOUR_ZERO_TOL = 1e-8
PERTURB_FACTOR = 1.05
MAX_PERTURBATIONS = 4
MAX_SUBDIVISIONS = 4
INTEGER_SLACK = 0.25
SIDE_SAMPLES = 257
QUAD_LIMIT = 20000


def _side_zero(prob: Problem, z0: complex, z1: complex) -> Optional[complex]:
    """
    A zero of D within CONTOUR_ZERO_TOL of the segment [z0, z1], if any.

    Samples D/D' along the side; wherever the Newton step is shorter than the
    sample spacing a few Newton iterations locate the nearby zero.
    """
    t = np.linspace(0.0, 1.0, SIDE_SAMPLES)
    dz = z1 - z0
    lams = z0 + t * dz
    D, Dp = characteristic(prob, lams)
    with np.errstate(divide="ignore", invalid="ignore"):
        steps = np.abs(D / Dp)
    spacing = abs(dz) / (SIDE_SAMPLES - 1)
    for k in np.nonzero(~(steps > 2.0 * spacing))[0]:
        z = complex(lams[k])
        for _ in range(8):
            Dz, Dpz = char_fn(prob, z)
            if Dz == 0 or Dpz == 0:
                break
            z -= Dz / Dpz
        s = ((z - z0) * dz.conjugate()).real / abs(dz) ** 2
        if not 0.0 <= s <= 1.0:
            continue
        if abs(z - (z0 + s * dz)) <= CONTOUR_ZERO_TOL * (1.0 + abs(z)):
            return z
    return None


def side_integral(prob: Problem, z0: complex, z1: complex, quad_tol: float = DEFAULT_QUAD_TOL) -> complex:
    """∫ D'/D dλ along the segment from z0 to z1"""
    dz = z1 - z0

    def integrand(t):
        D, Dp = char_fn(prob, z0 + t * dz)
        g = Dp / D * dz
        return np.array([g.real, g.imag])

    value, err = quad_vec(integrand, 0.0, 1.0, epsabs=quad_tol, epsrel=quad_tol, limit=QUAD_LIMIT)
    logger.debug(f"Side {z0} -> {z1}: {value[0]:+.6e}{value[1]:+.6e}j (err {err:.1e})")
    return complex(value[0], value[1])


def winding_number(prob: Problem, rect: Rectangle, quad_tol: float = DEFAULT_QUAD_TOL) -> float:
    """Unrounded (1/2πi)∮ D'/D over the boundary of rect"""
    total = sum(side_integral(prob, z0, z1, quad_tol) for _, z0, z1 in rect.sides())
    return total.imag / (2.0 * math.pi)


def contour_zero(prob: Problem, rect: Rectangle) -> Optional[str]:
    """Name of the first side that passes through a zero of D, or None"""
    for name, z0, z1 in rect.sides():
        z = _side_zero(prob, z0, z1)
        if z is not None:
            logger.debug(f"Zero {z} on the {name} side of {rect.as_tuple()}")
            return name
    return None


def _count_clean(prob: Problem, rect: Rectangle, quad_tol: float, depth: int) -> int:
    value = winding_number(prob, rect, quad_tol)
    n = int(round(value))
    if abs(value - n) <= INTEGER_SLACK:
        return n
    if depth >= MAX_SUBDIVISIONS:
        raise ContourError(
            f"Winding number {value:.4f} over {rect.as_tuple()} is not near an integer", side="interior"
        )
    logger.debug(f"Winding number {value:.4f} not near an integer, subdividing {rect.as_tuple()}")
    total = 0
    for child in rect.split(0.4615):
        side = contour_zero(prob, child)
        if side is not None:
            raise ContourError(f"Zero of D on the {side} side of subrectangle {child.as_tuple()}", side=side)
        total += _count_clean(prob, child, quad_tol, depth + 1)
    return total


def count_rect(
    prob: Problem,
    rect: Rectangle,
    quad_tol: float = DEFAULT_QUAD_TOL,
    perturb: bool = True,
) -> int:
    """
    Number of zeros of D inside rect, counted with multiplicity.

    Args:
        prob: Problem
        rect: Counting region
        quad_tol: Absolute and relative tolerance of each side integral
        perturb: Enlarge rect by PERTURB_FACTOR when a zero sits on its boundary

    Raises:
        ContourError: A zero stays on the contour after MAX_PERTURBATIONS
            enlargements (or at once with perturb=False)
    """
    current = rect
    for attempt in range(MAX_PERTURBATIONS + 1):
        side = contour_zero(prob, current)
        if side is None:
            return _count_clean(prob, current, quad_tol, depth=0)
        if not perturb or attempt == MAX_PERTURBATIONS:
            raise ContourError(f"Zero of D on the {side} side of {current.as_tuple()}", side=side)
        current = current.perturbed(PERTURB_FACTOR)
        logger.info(f"Contour through a zero on the {side} side, retrying with {current.as_tuple()}")
    raise ContourError(f"Zero of D on the contour of {rect.as_tuple()}", side="unknown")
