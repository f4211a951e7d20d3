"""
Hard-coded reference problems.

    P0      p=1, q=0, w=1 on [0, π]
    P1(q)   p=1, q constant, w = sgn x on [-1, 1]
    P2      p=1, q=-9π²/4 on [0, 4], w=1 on [0, 1), w=-1 on [1, 4]

P2 with shift s uses q = s·w - 9π²/4 instead; its spectrum is that of P2
moved up by s.
"""
from typing import Optional
import math

from ..errors import ProblemDefinitionError
from .interval import Interval
from .piecewise import Constant, PiecewiseCoefficient
from .problem import Problem


FIXTURE_IDS = ("P0", "P1", "P2")


def classical_problem() -> Problem:
    interval = Interval(0.0, math.pi)
    return Problem(
        interval,
        p=PiecewiseCoefficient.constant(interval, 1.0),
        q=PiecewiseCoefficient.constant(interval, 0.0),
        w=PiecewiseCoefficient.constant(interval, 1.0),
        name="P0",
    )


def sign_weight_problem(q: float) -> Problem:
    interval = Interval(-1.0, 1.0)
    return Problem(
        interval,
        p=PiecewiseCoefficient.constant(interval, 1.0),
        q=PiecewiseCoefficient.constant(interval, float(q)),
        w=PiecewiseCoefficient((-1.0, 0.0, 1.0), (Constant(-1.0), Constant(1.0))),
        name=f"P1({q!r})",
    )


def two_turning_point_problem(shift: float = 0.0) -> Problem:
    interval = Interval(0.0, 4.0)
    well = -9.0 * math.pi ** 2 / 4.0
    if shift == 0.0:
        q = PiecewiseCoefficient.constant(interval, well)
    else:
        q = PiecewiseCoefficient((0.0, 1.0, 4.0), (Constant(well + shift), Constant(well - shift)))
    return Problem(
        interval,
        p=PiecewiseCoefficient.constant(interval, 1.0),
        q=q,
        w=PiecewiseCoefficient((0.0, 1.0, 4.0), (Constant(1.0), Constant(-1.0))),
        name="P2" if shift == 0.0 else f"P2(shift={shift!r})",
    )


def fixture(fixture_id: str, q: Optional[float] = None) -> Problem:
    """
    Look up a fixture by id.

    Args:
        fixture_id: "P0", "P1" or "P2"
        q: Constant potential, required for P1 only

    Raises:
        ProblemDefinitionError: Unknown id or missing/unexpected q
    """
    if fixture_id == "P0":
        return classical_problem()
    if fixture_id == "P1":
        if q is None:
            raise ProblemDefinitionError("Fixture P1 needs a value for q")
        return sign_weight_problem(q)
    if fixture_id == "P2":
        return two_turning_point_problem()
    raise ProblemDefinitionError(f"Unknown fixture {fixture_id!r}, expected one of {FIXTURE_IDS}")
