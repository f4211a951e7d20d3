"""
Search regions: rectangles in the complex λ-plane and the spectral window.
"""
from dataclasses import dataclass
import logging
import math
from typing import Iterator, Optional, Tuple

import numpy as np

from ..coefficients.interval import Interval
from ..coefficients.piecewise import Sign
from ..coefficients.problem import Problem
from ..errors import ProblemDefinitionError
from ..shooting.propagator import real_characteristic
from .grid import real_grid

logger = logging.getLogger(__name__)

DEFAULT_IM_MIN = 1e-3
DEFAULT_MIN_POSITIVE = 12
WINDOW_GROWTH = 1.5
MAX_WINDOW_GROWTH_STEPS = 30

SIDE_NAMES = ("bottom", "right", "top", "left")


@dataclass(frozen=True)
class Rectangle:
    """Closed axis-parallel rectangle [re_min, re_max] x [im_min, im_max] in the λ-plane"""
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        values = (self.re_min, self.re_max, self.im_min, self.im_max)
        if not all(math.isfinite(v) for v in values):
            raise ProblemDefinitionError(f"Rectangle bounds must be finite, got {values}")
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ProblemDefinitionError(f"Rectangle needs positive area, got {values}")

    @classmethod
    def around(cls, center: complex, half_width: float, half_height: Optional[float] = None) -> "Rectangle":
        half_height = half_width if half_height is None else half_height
        return cls(center.real - half_width, center.real + half_width, center.imag - half_height, center.imag + half_height)

    @property
    def width(self) -> float:
        return self.re_max - self.re_min

    @property
    def height(self) -> float:
        return self.im_max - self.im_min

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def is_upper(self) -> bool:
        return self.im_min > 0.0

    @property
    def diameter(self) -> float:
        return math.hypot(self.width, self.height)

    def contains(self, lam: complex, slack: float = 0.0) -> bool:
        return (
            self.re_min - slack <= lam.real <= self.re_max + slack
            and self.im_min - slack <= lam.imag <= self.im_max + slack
        )

    def sides(self) -> Iterator[Tuple[str, complex, complex]]:
        """The four sides, counter-clockwise, as (name, start, end)"""
        corners = (
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        )
        for k, name in enumerate(SIDE_NAMES):
            yield name, corners[k], corners[(k + 1) % 4]

    def split(self, ratio: float) -> Tuple["Rectangle", "Rectangle"]:
        """Cut across the longer side at the given fraction of its length"""
        if self.width >= self.height:
            cut = self.re_min + ratio * self.width
            return (
                Rectangle(self.re_min, cut, self.im_min, self.im_max),
                Rectangle(cut, self.re_max, self.im_min, self.im_max),
            )
        cut = self.im_min + ratio * self.height
        return (
            Rectangle(self.re_min, self.re_max, self.im_min, cut),
            Rectangle(self.re_min, self.re_max, cut, self.im_max),
        )

    def perturbed(self, factor: float) -> "Rectangle":
        """
        Enlarge outward by factor.

        Upper-half rectangles stay in the upper half-plane: im_min is divided
        and im_max multiplied by factor.
        """
        mid = 0.5 * (self.re_min + self.re_max)
        half = 0.5 * self.width * factor
        if self.is_upper:
            return Rectangle(mid - half, mid + half, self.im_min / factor, self.im_max * factor)
        mid_im = 0.5 * (self.im_min + self.im_max)
        half_im = 0.5 * self.height * factor
        return Rectangle(mid - half, mid + half, mid_im - half_im, mid_im + half_im)

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.re_min, self.re_max, self.im_min, self.im_max)


@dataclass(frozen=True)
class SpectralWindow:
    """
    Region searched for eigenvalues.

    Attributes:
        real_range: Real eigenvalues are searched on this interval
        complex_rect: Upper-half rectangle for non-real eigenvalues; the lower
            half follows by conjugation
    """
    real_range: Interval
    complex_rect: Rectangle

    def __post_init__(self):
        if not self.complex_rect.is_upper:
            raise ProblemDefinitionError(
                f"complex_rect must lie in the open upper half-plane, got im_min={self.complex_rect.im_min}"
            )


def count_real_zeros(prob: Problem, lo: float, hi: float) -> int:
    """Sign changes of D on the scan grid of [lo, hi]"""
    grid = real_grid(prob, lo, hi)
    D = real_characteristic(prob, grid)
    signs = np.sign(D)
    return int(np.count_nonzero(signs[:-1] * signs[1:] < 0) + np.count_nonzero(signs[1:-1] == 0))


def complex_half_size(prob: Problem) -> float:
    """
    Half-size R of the default rectangle [-R, R] x [im_min, R].

    Grows with ∫|q| and the lowest Dirichlet mode of p, and inversely with the
    smaller of ∫w+ and ∫w-.
    """
    w_pos = prob.w.integrate_part(Sign.POSITIVE)
    w_neg = prob.w.integrate_part(Sign.NEGATIVE)
    if min(w_pos, w_neg) <= 0.0:
        return 10.0
    q_abs = prob.q.integrate_part(Sign.POSITIVE) + prob.q.integrate_part(Sign.NEGATIVE)
    _, p_max = prob.p.bounds()
    base = q_abs + math.pi ** 2 * p_max / prob.interval.length
    return 2.0 * base / min(w_pos, w_neg) + 10.0


def default_window(
    prob: Problem,
    min_positive: int = DEFAULT_MIN_POSITIVE,
    im_min: float = DEFAULT_IM_MIN,
) -> SpectralWindow:
    """
    Window [-Λ, Λ] x rectangle with Λ large enough to hold min_positive
    eigenvalues on the positive side (or the negative side when w <= 0).

    Λ starts from the asymptotic estimate λ_n ~ (nπ / ∫sqrt(w+/p))² and is
    multiplied by 1.5 until the count is reached.
    """
    positive = prob.oscillation_integral(Sign.POSITIVE) > 0.0
    density = prob.oscillation_integral(Sign.POSITIVE if positive else Sign.NEGATIVE)
    lam_top = max(10.0, ((min_positive + 1) * math.pi / density) ** 2)

    for _ in range(MAX_WINDOW_GROWTH_STEPS):
        lo, hi = (0.0, lam_top) if positive else (-lam_top, 0.0)
        found = count_real_zeros(prob, lo, hi)
        if found >= min_positive:
            break
        lam_top *= WINDOW_GROWTH
    else:
        logger.warning(f"Default window for {prob.name} stopped at Λ={lam_top} with {found} eigenvalues")

    R = complex_half_size(prob)
    logger.info(f"Default window for {prob.name}: Λ={lam_top:.6g}, R={R:.6g}")
    return SpectralWindow(Interval(-lam_top, lam_top), Rectangle(-R, R, im_min, R))
