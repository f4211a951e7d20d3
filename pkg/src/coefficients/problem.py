"""
Dirichlet problem -(p y')' + q y = λ w y on [a, b], y(a) = 0 = y(b).
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Tuple

import numpy as np

from ..errors import ProblemDefinitionError
from .interval import Interval
from .piecewise import PiecewiseCoefficient, Segment, Sign, merge_breakpoints


CHEBYSHEV_SAMPLES = 9


@dataclass(frozen=True)
class Cell:
    """Sub-interval between consecutive merged breakpoints of p, q and w"""
    lo: float
    hi: float
    p: Segment
    q: Segment
    w: Segment

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def is_constant(self) -> bool:
        return self.p.is_constant and self.q.is_constant and self.w.is_constant


def _chebyshev_points(lo: float, hi: float, n: int = CHEBYSHEV_SAMPLES) -> np.ndarray:
    k = np.arange(n)
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos(np.pi * k / (n - 1))


@dataclass(frozen=True)
class Problem:
    """
    Non-definite Sturm-Liouville problem with Dirichlet ends.

    Attributes:
        interval: [a, b]
        p: Leading coefficient, positive on [a, b]
        q: Potential
        w: Weight, may change sign, not identically zero
        name: Label used in reports
    """
    interval: Interval
    p: PiecewiseCoefficient
    q: PiecewiseCoefficient
    w: PiecewiseCoefficient
    name: str = field(default="problem", compare=False)

    def __post_init__(self):
        """Validate coefficient intervals, p > 0 and w not identically zero"""
        for label, coeff in (("p", self.p), ("q", self.q), ("w", self.w)):
            if coeff.interval != self.interval:
                raise ProblemDefinitionError(
                    f"Coefficient {label} is defined on [{coeff.interval.a}, {coeff.interval.b}], "
                    f"expected [{self.interval.a}, {self.interval.b}]"
                )
        self._validate_p()
        if self.w.integrate_part(Sign.POSITIVE) + self.w.integrate_part(Sign.NEGATIVE) <= 0.0:
            raise ProblemDefinitionError("Weight w vanishes identically on the interval")

    def _validate_p(self) -> None:
        for x0, x1, seg in zip(self.p.breakpoints[:-1], self.p.breakpoints[1:], self.p.segments):
            samples = np.asarray(seg.evaluate(_chebyshev_points(x0, x1)), dtype=float)
            if np.any(samples <= 0.0):
                raise ProblemDefinitionError(f"p must be positive, found p <= 0 on [{x0}, {x1}]")
            low, _ = seg.bounds(x0, x1)
            if low <= 0.0:
                raise ProblemDefinitionError(f"p must be positive, minimum {low} on [{x0}, {x1}]")

    @property
    def a(self) -> float:
        return self.interval.a

    @property
    def b(self) -> float:
        return self.interval.b

    @cached_property
    def breakpoints(self) -> Tuple[float, ...]:
        """Merged breakpoints of p, q and w, including a and b"""
        return merge_breakpoints(self.p.breakpoints, self.q.breakpoints, self.w.breakpoints)

    @cached_property
    def cells(self) -> Tuple[Cell, ...]:
        cells: List[Cell] = []
        for lo, hi in zip(self.breakpoints[:-1], self.breakpoints[1:]):
            mid = 0.5 * (lo + hi)
            cells.append(Cell(
                lo=lo,
                hi=hi,
                p=self.p.segments[self.p.segment_index(mid)],
                q=self.q.segments[self.q.segment_index(mid)],
                w=self.w.segments[self.w.segment_index(mid)],
            ))
        return tuple(cells)

    @property
    def is_piecewise_constant(self) -> bool:
        return all(cell.is_constant for cell in self.cells)

    def reflected(self) -> "Problem":
        """Problem with w -> -w; its eigenvalues are the negatives of this one's"""
        return Problem(self.interval, self.p, self.q, -self.w, name=f"{self.name} (reflected)")

    def refined(self, points) -> "Problem":
        """Same problem with extra breakpoints inserted in every coefficient"""
        return Problem(
            self.interval, self.p.refine(points), self.q.refine(points), self.w.refine(points), name=self.name
        )

    def with_weight(self, w: PiecewiseCoefficient, name: str) -> "Problem":
        return Problem(self.interval, self.p, self.q, w, name=name)

    def effective_potential(self, lam: float) -> PiecewiseCoefficient:
        """q_eff = λ w - q"""
        return PiecewiseCoefficient.linear_combination([(lam, self.w), (-1.0, self.q)])

    def p_bounds(self) -> Tuple[float, float]:
        return self.p.bounds()

    def oscillation_integral(self, sign: Sign, samples: int = 64) -> float:
        """
        ∫ sqrt(w±/p) dx by Gauss-Legendre on each cell.

        Sets the eigenvalue density on the corresponding side of the real axis.
        """
        nodes, weights = np.polynomial.legendre.leggauss(samples)
        total = 0.0
        for cell in self.cells:
            x = 0.5 * (cell.lo + cell.hi) + 0.5 * cell.length * nodes
            w = np.asarray(cell.w.evaluate(x), dtype=float)
            part = np.maximum(w, 0.0) if sign is Sign.POSITIVE else np.maximum(-w, 0.0)
            p = np.asarray(cell.p.evaluate(x), dtype=float)
            total += 0.5 * cell.length * float(np.dot(weights, np.sqrt(part / p)))
        return total

    def __repr__(self) -> str:
        return f"Problem(name={self.name!r}, interval=[{self.a}, {self.b}], cells={len(self.cells)})"
