"""
Piecewise coefficient functions with constant or cubic-or-lower polynomial segments.

Evaluation is right-continuous: at an interior breakpoint the segment to the
right supplies the value, and at the right endpoint b the last segment does.
Integration never samples isolated points, so the convention only matters
for point evaluation.
"""
from abc import ABC, abstractmethod
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple, Union
import math

import numpy as np
from numpy.polynomial import polynomial as npoly

from ..errors import DomainError, ProblemDefinitionError
from .interval import Interval


MAX_DEGREE = 3


class Sign(Enum):
    """Which part of a coefficient to integrate"""
    POSITIVE = "positive"
    NEGATIVE = "negative"


class Segment(ABC):
    """One piece of a piecewise coefficient, defined in the global variable x"""

    @abstractmethod
    def coefficients(self) -> np.ndarray:
        """Ascending power coefficients in x"""

    @property
    def is_constant(self) -> bool:
        return False

    def evaluate(self, x):
        return npoly.polyval(x, self.coefficients())

    def integral(self, lo: float, hi: float) -> float:
        antiderivative = npoly.polyint(self.coefficients())
        return float(npoly.polyval(hi, antiderivative) - npoly.polyval(lo, antiderivative))

    def sign_changes(self, lo: float, hi: float) -> List[float]:
        """Real roots strictly inside (lo, hi), sorted"""
        coef = npoly.polytrim(self.coefficients())
        if len(coef) <= 1:
            return []
        scale = max(1.0, abs(lo), abs(hi))
        roots = npoly.polyroots(coef)
        real = sorted(float(r.real) for r in roots if abs(r.imag) <= 1e-12 * scale)
        return [r for r in real if lo < r < hi]

    def signed_pieces(self, lo: float, hi: float) -> List[Tuple[float, float, float]]:
        """
        Split [lo, hi] at sign changes.

        Returns:
            List of (lo, hi, integral) with the segment of one sign on each piece
        """
        points = [lo] + self.sign_changes(lo, hi) + [hi]
        return [(x0, x1, self.integral(x0, x1)) for x0, x1 in zip(points[:-1], points[1:]) if x1 > x0]

    def bounds(self, lo: float, hi: float) -> Tuple[float, float]:
        """Exact (min, max) over [lo, hi]"""
        candidates = [lo, hi]
        derivative = npoly.polyder(self.coefficients())
        if len(npoly.polytrim(derivative)) > 1:
            for r in npoly.polyroots(npoly.polytrim(derivative)):
                if abs(r.imag) <= 1e-12 and lo < r.real < hi:
                    candidates.append(float(r.real))
        values = np.asarray(self.evaluate(np.asarray(candidates, dtype=float)), dtype=float)
        return float(values.min()), float(values.max())

    def is_zero(self) -> bool:
        return not np.any(self.coefficients())


@dataclass(frozen=True)
class Constant(Segment):
    """Constant segment c"""
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ProblemDefinitionError(f"Constant segment must be finite, got {self.value}")

    @property
    def is_constant(self) -> bool:
        return True

    def coefficients(self) -> np.ndarray:
        return np.array([self.value], dtype=float)

    def evaluate(self, x):
        if np.ndim(x) == 0:
            return float(self.value)
        return np.full(np.shape(x), float(self.value))

    def integral(self, lo: float, hi: float) -> float:
        return self.value * (hi - lo)

    def sign_changes(self, lo: float, hi: float) -> List[float]:
        return []

    def bounds(self, lo: float, hi: float) -> Tuple[float, float]:
        return float(self.value), float(self.value)


@dataclass(frozen=True)
class Polynomial(Segment):
    """Polynomial segment sum(c_k x^k), degree at most 3"""
    coefficients_: Tuple[float, ...]

    def __post_init__(self):
        coef = tuple(float(c) for c in self.coefficients_)
        if not coef:
            raise ProblemDefinitionError("Polynomial segment needs at least one coefficient")
        if len(coef) - 1 > MAX_DEGREE:
            raise ProblemDefinitionError(
                f"Polynomial segments are limited to degree {MAX_DEGREE}, got degree {len(coef) - 1}"
            )
        if not all(math.isfinite(c) for c in coef):
            raise ProblemDefinitionError(f"Polynomial coefficients must be finite, got {coef}")
        object.__setattr__(self, "coefficients_", coef)

    def coefficients(self) -> np.ndarray:
        return np.array(self.coefficients_, dtype=float)


def as_segment(coef: Sequence[float]) -> Segment:
    """Constant for a single coefficient, Polynomial otherwise"""
    coef = list(coef)
    while len(coef) > 1 and coef[-1] == 0.0:
        coef.pop()
    if len(coef) == 1:
        return Constant(float(coef[0]))
    return Polynomial(tuple(coef))


def merge_breakpoints(*breakpoint_lists: Iterable[float]) -> Tuple[float, ...]:
    """Sorted union of breakpoint lists, merging points closer than a relative 1e-14"""
    points = sorted(float(x) for bps in breakpoint_lists for x in bps)
    if not points:
        return ()
    scale = max(1.0, abs(points[0]), abs(points[-1]))
    merged = [points[0]]
    for x in points[1:]:
        if x - merged[-1] > 1e-14 * scale:
            merged.append(x)
    return tuple(merged)


@dataclass(frozen=True)
class PiecewiseCoefficient:
    """
    A coefficient function on [x_0, x_k] given segment by segment.

    Attributes:
        breakpoints: a = x_0 < x_1 < ... < x_k = b
        segments: segments[i] is valid on [x_i, x_{i+1}]
    """
    breakpoints: Tuple[float, ...]
    segments: Tuple[Segment, ...]

    def __post_init__(self):
        """Validate breakpoints and segment count"""
        bps = tuple(float(x) for x in self.breakpoints)
        segs = tuple(self.segments)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "segments", segs)

        if len(bps) < 2:
            raise ProblemDefinitionError("A coefficient needs at least two breakpoints")
        if len(segs) != len(bps) - 1:
            raise ProblemDefinitionError(
                f"Expected {len(bps) - 1} segments for {len(bps)} breakpoints, got {len(segs)}"
            )
        if any(not math.isfinite(x) for x in bps):
            raise ProblemDefinitionError(f"Breakpoints must be finite, got {bps}")
        if any(x1 <= x0 for x0, x1 in zip(bps[:-1], bps[1:])):
            raise ProblemDefinitionError(f"Breakpoints must be strictly increasing, got {bps}")
        if not all(isinstance(s, Segment) for s in segs):
            raise ProblemDefinitionError("Segments must be Constant or Polynomial")

    @classmethod
    def constant(cls, interval: Interval, value: float) -> "PiecewiseCoefficient":
        return cls((interval.a, interval.b), (Constant(value),))

    @classmethod
    def from_pieces(cls, a: float, pieces: Sequence[Tuple[float, Segment]]) -> "PiecewiseCoefficient":
        """
        Build from (upto, segment) pairs.

        Args:
            a: Left endpoint
            pieces: Each segment applies from the previous breakpoint up to `upto`
        """
        breakpoints = [a] + [upto for upto, _ in pieces]
        return cls(tuple(breakpoints), tuple(seg for _, seg in pieces))

    @property
    def interval(self) -> Interval:
        return Interval(self.breakpoints[0], self.breakpoints[-1])

    @property
    def is_piecewise_constant(self) -> bool:
        return all(s.is_constant for s in self.segments)

    def segment_index(self, x: float) -> int:
        """Index of the segment containing x (right-continuous)"""
        if not self.breakpoints[0] <= x <= self.breakpoints[-1]:
            raise DomainError(
                f"x={x} outside [{self.breakpoints[0]}, {self.breakpoints[-1]}]"
            )
        return min(bisect_right(self.breakpoints, x) - 1, len(self.segments) - 1)

    def evaluate(self, x: float) -> float:
        """Value at x, taking the right segment at interior breakpoints"""
        return float(self.segments[self.segment_index(x)].evaluate(float(x)))

    def __call__(self, xs) -> np.ndarray:
        """Vectorized evaluation with the same one-sided convention as evaluate"""
        xs = np.asarray(xs, dtype=float)
        if xs.size and (xs.min() < self.breakpoints[0] or xs.max() > self.breakpoints[-1]):
            raise DomainError(
                f"Sample points outside [{self.breakpoints[0]}, {self.breakpoints[-1]}]"
            )
        idx = np.clip(
            np.searchsorted(self.breakpoints, xs, side="right") - 1, 0, len(self.segments) - 1
        )
        out = np.empty(xs.shape, dtype=float)
        for i, seg in enumerate(self.segments):
            mask = idx == i
            if np.any(mask):
                out[mask] = seg.evaluate(xs[mask])
        return out

    def _overlaps(self, lo: float, hi: float):
        for x0, x1, seg in zip(self.breakpoints[:-1], self.breakpoints[1:], self.segments):
            left, right = max(lo, x0), min(hi, x1)
            if right > left:
                yield left, right, seg

    def _check_range(self, lo: float, hi: float) -> None:
        a, b = self.breakpoints[0], self.breakpoints[-1]
        slack = 1e-12 * (b - a)
        if lo < a - slack or hi > b + slack or hi < lo:
            raise DomainError(f"Range [{lo}, {hi}] not inside [{a}, {b}]")

    def integrate(self, lo: Optional[float] = None, hi: Optional[float] = None) -> float:
        """Plain integral over [lo, hi] (defaults to the whole interval)"""
        lo = self.breakpoints[0] if lo is None else lo
        hi = self.breakpoints[-1] if hi is None else hi
        self._check_range(lo, hi)
        return float(sum(seg.integral(x0, x1) for x0, x1, seg in self._overlaps(lo, hi)))

    def integrate_part(self, sign: Sign, lo: Optional[float] = None, hi: Optional[float] = None) -> float:
        """
        Integral of the positive part c+ = (c+|c|)/2 or negative part c- = (|c|-c)/2.

        Constant segments are integrated exactly; polynomial segments are split
        at their real roots and integrated exactly on each signed piece.
        """
        lo = self.breakpoints[0] if lo is None else lo
        hi = self.breakpoints[-1] if hi is None else hi
        self._check_range(lo, hi)
        total = 0.0
        for x0, x1, seg in self._overlaps(lo, hi):
            for p0, p1, value in seg.signed_pieces(x0, x1):
                mid = float(seg.evaluate(0.5 * (p0 + p1)))
                if sign is Sign.POSITIVE and mid > 0:
                    total += max(value, 0.0)
                elif sign is Sign.NEGATIVE and mid < 0:
                    total += max(-value, 0.0)
        return total

    def bounds(self) -> Tuple[float, float]:
        """(min, max) over [a, b]"""
        pairs = [seg.bounds(x0, x1) for x0, x1, seg in self._overlaps(self.breakpoints[0], self.breakpoints[-1])]
        return min(p[0] for p in pairs), max(p[1] for p in pairs)

    def vanishes_on_interval(self) -> bool:
        """True if some segment is identically zero"""
        return any(seg.is_zero() for seg in self.segments)

    def refine(self, points: Iterable[float]) -> "PiecewiseCoefficient":
        """Insert breakpoints without changing any value"""
        a, b = self.breakpoints[0], self.breakpoints[-1]
        extra = [x for x in points if a < x < b]
        new_bps = merge_breakpoints(self.breakpoints, extra)
        segments = [self.segments[self.segment_index(0.5 * (x0 + x1))] for x0, x1 in zip(new_bps[:-1], new_bps[1:])]
        return PiecewiseCoefficient(new_bps, tuple(segments))

    @classmethod
    def linear_combination(
        cls, terms: Sequence[Tuple[float, "PiecewiseCoefficient"]]
    ) -> "PiecewiseCoefficient":
        """
        sum(factor * coefficient) on the merged breakpoints.

        All coefficients must share the same interval.
        """
        first = terms[0][1]
        for _, coeff in terms[1:]:
            if coeff.interval != first.interval:
                raise ProblemDefinitionError("Linear combination needs coefficients on the same interval")
        bps = merge_breakpoints(*(c.breakpoints for _, c in terms))
        segments: List[Segment] = []
        for x0, x1 in zip(bps[:-1], bps[1:]):
            mid = 0.5 * (x0 + x1)
            total = np.zeros(MAX_DEGREE + 1)
            for factor, coeff in terms:
                coef = coeff.segments[coeff.segment_index(mid)].coefficients()
                total[: len(coef)] += factor * coef
            segments.append(as_segment(total))
        return cls(bps, tuple(segments))

    def scaled(self, factor: float) -> "PiecewiseCoefficient":
        return PiecewiseCoefficient.linear_combination([(factor, self)])

    def __neg__(self) -> "PiecewiseCoefficient":
        return self.scaled(-1.0)


Number = Union[int, float]


def eval_coefficient(c: PiecewiseCoefficient, x: Number) -> float:
    """Value of c at x (right segment at interior breakpoints)"""
    return c.evaluate(float(x))


def integrate_part(c: PiecewiseCoefficient, sign: Sign, range: Optional[Interval] = None) -> float:
    """
    Integral of the positive or negative part of c over range.

    Args:
        c: Coefficient
        sign: Sign.POSITIVE for c+, Sign.NEGATIVE for c-
        range: Sub-interval of c's interval (whole interval if omitted)

    Returns:
        Nonnegative integral
    """
    if range is None:
        return c.integrate_part(sign)
    return c.integrate_part(sign, range.a, range.b)
