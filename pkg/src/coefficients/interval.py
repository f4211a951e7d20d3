"""
Closed bounded intervals on the real line.
"""
from dataclasses import dataclass
import math

from ..errors import ProblemDefinitionError


@dataclass(frozen=True)
class Interval:
    """
    Closed interval [a, b] with finite endpoints and a < b.

    Attributes:
        a: Left endpoint
        b: Right endpoint
    """
    a: float
    b: float

    def __post_init__(self):
        """Validate endpoints on creation"""
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ProblemDefinitionError(f"Interval endpoints must be finite, got [{self.a}, {self.b}]")
        if not self.a < self.b:
            raise ProblemDefinitionError(f"Interval requires a < b, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    def contains(self, x: float) -> bool:
        return self.a <= x <= self.b

    def contains_interval(self, other: "Interval", slack: float = 0.0) -> bool:
        """True if other lies inside this interval (with optional absolute slack)"""
        return self.a - slack <= other.a and other.b <= self.b + slack
