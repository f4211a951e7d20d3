"""
Non-real eigenvalues in an upper-half rectangle.

The rectangle is cut off-centre until every piece holds a single zero of D
(counted by the argument principle); each zero is then polished by Newton's
method on D with the exact derivative, falling back to Muller's method.
"""
import cmath
from dataclasses import dataclass, field
import logging
from typing import Callable, Iterator, List, Optional, Tuple

from ..coefficients.problem import Problem
from ..errors import ContourError, ProblemDefinitionError
from ..shooting.propagator import char_fn
from ..shooting.shoot import DEFAULT_TOL
from .contour import DEFAULT_QUAD_TOL, count_rect
from .eigenpair import Eigenpair, make_eigenpair
from .window import Rectangle

logger = logging.getLogger(__name__)

DEFAULT_ROOT_TOL = 1e-10
# cut ratios; never 1/2 so zeros on symmetry lines stay off the cuts
SPLIT_RATIOS = (0.4615, 0.5731, 0.3819, 0.6180)
MAX_DEPTH = 60
NEWTON_MAX_ITER = 60
MULLER_MAX_ITER = 200


@dataclass(frozen=True)
class FlaggedRect:
    rect: Rectangle
    count: int
    reason: str


@dataclass
class ComplexSearch:
    """Result of find_complex"""
    pairs: List[Eigenpair] = field(default_factory=list)
    rect_count: int = 0
    flagged: List[FlaggedRect] = field(default_factory=list)

    def __iter__(self) -> Iterator[Eigenpair]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __getitem__(self, index: int) -> Eigenpair:
        return self.pairs[index]

    @property
    def found_count(self) -> int:
        return sum(e.multiplicity for e in self.pairs)


def newton(
    prob: Problem, z: complex, tol: float = DEFAULT_ROOT_TOL, multiplicity: int = 1
) -> Optional[complex]:
    """
    (Modified) Newton iteration z <- z - m D/D'.

    Returns:
        The converged zero, or None on divergence
    """
    for _ in range(NEWTON_MAX_ITER):
        D, Dp = char_fn(prob, z)
        if D == 0:
            return z
        if Dp == 0 or not cmath.isfinite(Dp):
            return None
        step = multiplicity * D / Dp
        z -= step
        if not cmath.isfinite(z):
            return None
        if abs(step) <= tol * max(1.0, abs(z)):
            return z
    return None


def muller(
    f: Callable[[complex], complex],
    x1: complex,
    x2: complex,
    x3: complex,
    max_iter: int = MULLER_MAX_ITER,
    tol: float = DEFAULT_ROOT_TOL,
) -> Tuple[complex, bool]:
    """
    Muller's method from three starting points.

    Returns:
        (estimate, converged)
    """
    if x1 == x2 or x2 == x3 or x1 == x3:
        raise ValueError("Muller needs three distinct starting points")
    f1, f2, f3 = f(x1), f(x2), f(x3)
    x = x3
    for _ in range(max_iter):
        q = (x3 - x2) / (x2 - x1)
        A = q * f3 - q * (1.0 + q) * f2 + q ** 2 * f1
        B = (2.0 * q + 1.0) * f3 - (1.0 + q) ** 2 * f2 + q ** 2 * f1
        C = (1.0 + q) * f3
        root = cmath.sqrt(B * B - 4.0 * A * C)
        denom = B + root if abs(B + root) >= abs(B - root) else B - root
        if denom == 0:
            break
        x = x3 - (x3 - x2) * 2.0 * C / denom
        if not cmath.isfinite(x):
            return x3, False
        if abs(x - x3) <= tol * max(1.0, abs(x)):
            return x, True
        x1, x2, x3 = x2, x3, x
        f1, f2, f3 = f2, f3, f(x)
        if f3 == 0:
            return x, True
    return x, False


def _polish(prob: Problem, rect: Rectangle, count: int, tol: float) -> Optional[complex]:
    """Zero of D inside rect by Newton from the centre, then Muller"""
    slack = 1e-9 * (1.0 + abs(rect.center))
    z = newton(prob, rect.center, tol, multiplicity=count)
    if z is not None and rect.contains(z, slack):
        return z
    h = 0.1 * min(rect.width, rect.height)
    try:
        z, ok = muller(
            lambda lam: char_fn(prob, lam)[0],
            rect.center - h, rect.center + h, rect.center + 1j * h, tol=tol,
        )
    except ValueError:
        return None
    if ok and rect.contains(z, slack):
        if count == 1:
            polished = newton(prob, z, tol)
            if polished is not None and rect.contains(polished, slack):
                z = polished
        return z
    return None


def _split_counted(prob: Problem, rect: Rectangle, depth: int, quad_tol: float):
    """Cut rect at the first ratio whose cut avoids zeros of D and count both halves"""
    for k in range(len(SPLIT_RATIOS)):
        ratio = SPLIT_RATIOS[(depth + k) % len(SPLIT_RATIOS)]
        children = rect.split(ratio)
        try:
            counts = [count_rect(prob, child, quad_tol, perturb=False) for child in children]
        except ContourError as exc:
            logger.debug(f"Cut at ratio {ratio} of {rect.as_tuple()} hits a zero ({exc.side})")
            continue
        return list(zip(children, counts))
    return None


def find_complex(
    prob: Problem,
    rect: Rectangle,
    tol: float = DEFAULT_ROOT_TOL,
    quad_tol: float = DEFAULT_QUAD_TOL,
    shot_tol: float = DEFAULT_TOL,
) -> ComplexSearch:
    """
    All zeros of D inside an upper-half rectangle.

    Args:
        prob: Problem
        rect: Rectangle with im_min > 0
        tol: Newton step tolerance (relative to max(1, |λ|))
        quad_tol: Contour quadrature tolerance
        shot_tol: Integration tolerance of the eigenfunction shots

    Returns:
        ComplexSearch with eigenpairs sorted by (Re λ, Im λ), the contour
        count of rect and any flagged subrectangles

    Raises:
        ProblemDefinitionError: rect not in the open upper half-plane
    """
    if not rect.is_upper:
        raise ProblemDefinitionError(f"find_complex needs im_min > 0, got {rect.as_tuple()}")
    total = count_rect(prob, rect, quad_tol)
    search = ComplexSearch(rect_count=total)
    roots: List[Tuple[complex, int]] = []

    stack = [(rect, total, 0)]
    while stack:
        current, n, depth = stack.pop()
        if n == 0:
            continue
        tiny = current.diameter <= 1e-7 * (1.0 + abs(current.center))
        if n == 1 or tiny:
            z = _polish(prob, current, n, tol)
            if z is not None:
                roots.append((z, n))
                continue
            if tiny:
                search.flagged.append(FlaggedRect(current, n, "refinement failed"))
                logger.warning(f"Refinement failed in {current.as_tuple()} holding {n} zeros")
                continue
        if depth >= MAX_DEPTH:
            search.flagged.append(FlaggedRect(current, n, "maximum subdivision depth"))
            logger.warning(f"Subdivision depth exhausted in {current.as_tuple()}")
            continue
        halves = _split_counted(prob, current, depth, quad_tol)
        if halves is None:
            search.flagged.append(FlaggedRect(current, n, "every cut passes through a zero"))
            continue
        if sum(c for _, c in halves) != n:
            logger.warning(
                f"Child counts {[c for _, c in halves]} do not add up to {n} in {current.as_tuple()}"
            )
        for child, count in halves:
            stack.append((child, count, depth + 1))

    roots.sort(key=lambda r: (r[0].real, r[0].imag))
    search.pairs = [make_eigenpair(prob, z, multiplicity=m, tol=shot_tol) for z, m in roots]
    if search.found_count != total:
        logger.warning(f"{prob.name}: contour count {total}, refined {search.found_count}")
    logger.info(f"{prob.name}: {len(search.pairs)} non-real eigenvalues in {rect.as_tuple()}")
    return search
