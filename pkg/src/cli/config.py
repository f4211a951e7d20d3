"""
Run configuration shared by the CLI commands and the HTTP surface.

Precedence, lowest first: built-in defaults, the STURMGHOST_OUTPUT_DIR
environment variable, command-line flags, then the keys of a --config JSON
file.
"""
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator

from ..classification.classify import DEFAULT_TOL_DEG
from ..coefficients.fixtures import fixture
from ..coefficients.interval import Interval
from ..coefficients.piecewise import Sign
from ..coefficients.problem import Problem
from ..data.problem_file import load_problem
from ..errors import ProblemDefinitionError
from ..shooting.shoot import DEFAULT_TOL
from ..spectrum.contour import DEFAULT_QUAD_TOL
from ..spectrum.real_scan import DEFAULT_REFINE_TOL
from ..spectrum.window import DEFAULT_IM_MIN, DEFAULT_MIN_POSITIVE, Rectangle, SpectralWindow, default_window

logger = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "STURMGHOST_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "sturmghost_output"
RECT_FIELDS = ("re_min", "re_max", "im_min", "im_max")
WINDOW_FIELDS = ("lmin", "lmax") + RECT_FIELDS


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_DIR_ENV, DEFAULT_OUTPUT_DIR))


class RunConfig(BaseModel):
    """Problem source, window overrides, tolerances and output settings"""

    fixture: Optional[Literal["P0", "P1", "P2"]] = None
    q: Optional[float] = None
    problem_file: Optional[Path] = None

    lmin: Optional[float] = None
    lmax: Optional[float] = None
    re_min: Optional[float] = None
    re_max: Optional[float] = None
    im_min: Optional[float] = None
    im_max: Optional[float] = None
    min_positive: int = Field(default=DEFAULT_MIN_POSITIVE, ge=1)

    tol: float = Field(default=DEFAULT_TOL, gt=0)
    refine_tol: float = Field(default=DEFAULT_REFINE_TOL, gt=0)
    tol_deg: float = Field(default=DEFAULT_TOL_DEG, gt=0)
    quad_tol: float = Field(default=DEFAULT_QUAD_TOL, gt=0)

    output_dir: Path = Field(default_factory=default_output_dir)
    formats: List[Literal["json", "csv", "parquet"]] = Field(default_factory=lambda: ["json", "csv"])
    workers: int = Field(default=1, ge=1)
    allow_unstable: bool = False
    side: Literal["positive", "negative"] = "positive"
    oracle_n: Optional[int] = Field(default=None, ge=3)

    @model_validator(mode="after")
    def check_source(self) -> "RunConfig":
        if (self.fixture is None) == (self.problem_file is None):
            raise ValueError("exactly one of fixture and problem_file is required")
        if self.fixture == "P1" and self.q is None:
            raise ValueError("fixture P1 needs q")
        if self.fixture not in (None, "P1") and self.q is not None:
            raise ValueError(f"q applies to fixture P1 only, got fixture {self.fixture}")
        if self.lmin is not None and self.lmax is not None and not self.lmin < self.lmax:
            raise ValueError(f"lmin must be below lmax, got {self.lmin} >= {self.lmax}")
        if self.im_min is not None and self.im_min <= 0:
            raise ValueError(f"im_min must be positive, got {self.im_min}")
        return self

    @property
    def sign(self) -> Sign:
        return Sign(self.side)

    def build_problem(self) -> Problem:
        if self.problem_file is not None:
            return load_problem(self.problem_file)
        return fixture(self.fixture, self.q)

    def build_window(self, prob: Problem) -> SpectralWindow:
        """Default window of the problem with any overridden bounds replaced"""
        return resolve_window(prob, {name: getattr(self, name) for name in WINDOW_FIELDS}, self.min_positive)


def resolve_window(prob: Problem, bounds: Dict[str, Optional[float]], min_positive: int = DEFAULT_MIN_POSITIVE) -> SpectralWindow:
    """
    Window from partial bounds (keys lmin, lmax, re_min, re_max, im_min,
    im_max; None means unset). The default window is only computed when some
    bound is missing.
    """
    given = {name: bounds[name] for name in WINDOW_FIELDS if bounds.get(name) is not None}
    if len(given) == len(WINDOW_FIELDS):
        return SpectralWindow(Interval(given["lmin"], given["lmax"]), Rectangle(*(given[n] for n in RECT_FIELDS)))
    base = default_window(prob, min_positive=min_positive, im_min=given.get("im_min", DEFAULT_IM_MIN))
    if not given:
        return base
    lo = given.get("lmin", base.real_range.a)
    hi = given.get("lmax", base.real_range.b)
    rect = base.complex_rect
    return SpectralWindow(Interval(lo, hi), Rectangle(*(given.get(name, getattr(rect, name)) for name in RECT_FIELDS)))


def load_config(flags: Dict[str, Any], config_path: Optional[Path] = None) -> RunConfig:
    """
    Merge flags (None means unset) with an optional JSON config file.

    Raises:
        ProblemDefinitionError: Unreadable file or invalid settings
    """
    values = {k: v for k, v in flags.items() if v is not None}
    if config_path is not None:
        try:
            overrides = json.loads(Path(config_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ProblemDefinitionError(f"Cannot read config {config_path}: {exc}") from exc
        if not isinstance(overrides, dict):
            raise ProblemDefinitionError(f"Config {config_path} must hold a JSON object")
        values.update(overrides)
    try:
        return RunConfig(**values)
    except ValidationError as exc:
        raise ProblemDefinitionError(f"Invalid configuration: {exc}") from exc
