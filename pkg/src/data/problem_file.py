"""
Problem definition files.

A problem file is JSON:

    {
      "name": "P1(-22)",
      "interval": {"a": -1.0, "b": 1.0},
      "p": [{"upto": 1.0, "kind": "const", "values": [1.0]}],
      "q": [{"upto": 1.0, "kind": "const", "values": [-22.0]}],
      "w": [{"upto": 0.0, "kind": "const", "values": [-1.0]},
            {"upto": 1.0, "kind": "const", "values": [1.0]}]
    }

Each coefficient is a list of segments. A segment applies from the previous
breakpoint (a for the first one) up to `upto`; the last `upto` must be b.
`const` segments carry one value, `poly` segments carry ascending power
coefficients in x (at most four, degree <= 3).
"""
import json
from pathlib import Path
from typing import List, Literal, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from ..coefficients.interval import Interval
from ..coefficients.piecewise import MAX_DEGREE, Constant, PiecewiseCoefficient, Polynomial, Segment
from ..coefficients.problem import Problem
from ..errors import ProblemDefinitionError


class IntervalModel(BaseModel):
    a: float
    b: float

    @model_validator(mode="after")
    def check_order(self) -> "IntervalModel":
        if not self.a < self.b:
            raise ValueError(f"interval requires a < b, got [{self.a}, {self.b}]")
        return self


class SegmentModel(BaseModel):
    upto: float
    kind: Literal["const", "poly"]
    values: List[float] = Field(min_length=1)

    @model_validator(mode="after")
    def check_values(self) -> "SegmentModel":
        if self.kind == "const" and len(self.values) != 1:
            raise ValueError(f"const segment takes one value, got {len(self.values)}")
        if self.kind == "poly" and len(self.values) > MAX_DEGREE + 1:
            raise ValueError(f"poly segment takes at most {MAX_DEGREE + 1} coefficients, got {len(self.values)}")
        return self

    def to_segment(self) -> Segment:
        if self.kind == "const":
            return Constant(self.values[0])
        return Polynomial(tuple(self.values))

    @classmethod
    def from_segment(cls, upto: float, segment: Segment) -> "SegmentModel":
        if isinstance(segment, Constant):
            return cls(upto=upto, kind="const", values=[segment.value])
        return cls(upto=upto, kind="poly", values=[float(c) for c in segment.coefficients()])


class ProblemFile(BaseModel):
    """Validated contents of a problem file"""
    name: str = "problem"
    interval: IntervalModel
    p: List[SegmentModel] = Field(min_length=1)
    q: List[SegmentModel] = Field(min_length=1)
    w: List[SegmentModel] = Field(min_length=1)

    @field_validator("p", "q", "w")
    @classmethod
    def check_increasing(cls, segments: List[SegmentModel]) -> List[SegmentModel]:
        uptos = [s.upto for s in segments]
        if any(x1 <= x0 for x0, x1 in zip(uptos[:-1], uptos[1:])):
            raise ValueError(f"segment breakpoints must be strictly increasing, got {uptos}")
        return segments

    def to_problem(self) -> Problem:
        interval = Interval(self.interval.a, self.interval.b)
        coefficients = {}
        for label in ("p", "q", "w"):
            segments = getattr(self, label)
            if segments[-1].upto != interval.b:
                raise ProblemDefinitionError(
                    f"Coefficient {label} ends at {segments[-1].upto}, expected b={interval.b}"
                )
            if segments[0].upto <= interval.a:
                raise ProblemDefinitionError(
                    f"Coefficient {label} has a segment ending at {segments[0].upto} <= a={interval.a}"
                )
            coefficients[label] = PiecewiseCoefficient.from_pieces(
                interval.a, [(s.upto, s.to_segment()) for s in segments]
            )
        return Problem(interval, name=self.name, **coefficients)

    @classmethod
    def from_problem(cls, prob: Problem) -> "ProblemFile":
        def segments(coeff: PiecewiseCoefficient) -> List[SegmentModel]:
            return [SegmentModel.from_segment(upto, seg) for upto, seg in zip(coeff.breakpoints[1:], coeff.segments)]

        return cls(
            name=prob.name,
            interval=IntervalModel(a=prob.a, b=prob.b),
            p=segments(prob.p),
            q=segments(prob.q),
            w=segments(prob.w),
        )


def parse_problem(source: Union[str, bytes, dict]) -> Problem:
    """
    Build a Problem from JSON text or an already decoded mapping.

    Raises:
        ProblemDefinitionError: Malformed file or invalid coefficients
    """
    try:
        if isinstance(source, dict):
            model = ProblemFile.model_validate(source)
        else:
            model = ProblemFile.model_validate_json(source)
    except ValidationError as exc:
        raise ProblemDefinitionError(f"Invalid problem file: {exc}") from exc
    return model.to_problem()


def load_problem(filepath: Union[str, Path]) -> Problem:
    path = Path(filepath)
    if not path.exists():
        raise ProblemDefinitionError(f"Problem file not found: {path}")
    return parse_problem(path.read_text())


def problem_to_json(prob: Problem) -> str:
    return json.dumps(ProblemFile.from_problem(prob).model_dump(), indent=2, sort_keys=True)


def dump_problem(prob: Problem, filepath: Union[str, Path]) -> Path:
    """Write prob as a problem file; load_problem reads it back unchanged"""
    path = Path(filepath)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(problem_to_json(prob) + "\n")
    return path
