"""
Spectral inventory: every eigenpair in a window plus a completeness certificate.
"""
from dataclasses import dataclass, field, replace
import logging
from typing import List, Optional, Tuple

import numpy as np

from ..coefficients.problem import Problem
from ..errors import CertificateError
from ..shooting.propagator import characteristic
from ..shooting.shoot import DEFAULT_TOL
from .complex_roots import FlaggedRect, find_complex
from .contour import DEFAULT_QUAD_TOL
from .eigenpair import Eigenpair
from .real_scan import DEFAULT_REFINE_TOL, TangencyCandidate, scan_real
from .window import SpectralWindow, default_window

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Certificate:
    """
    Argument-principle completeness certificate for the complex rectangle.

    Attributes:
        rect_count: Zeros of D in the rectangle by the argument principle
        found_count: Refined non-real eigenvalues, with multiplicity
        match: rect_count == found_count and nothing was flagged
        conjugate_residuals: |D(conj λ)| for every non-real eigenvalue found
        flagged_rects: Subrectangles where refinement failed
        tangencies: Unresolved real-axis tangency candidates
    """
    rect_count: int
    found_count: int
    match: bool
    conjugate_residuals: Tuple[float, ...] = ()
    flagged_rects: Tuple[FlaggedRect, ...] = ()
    tangencies: Tuple[TangencyCandidate, ...] = ()


@dataclass(frozen=True, eq=False)
class SpectralInventory:
    """
    Attributes:
        problem: Problem analysed
        window: Search window
        real_pairs: Real eigenpairs, strictly increasing in λ
        complex_pairs: Eigenpairs with Im λ > 0; conjugates are implicit
        certificate: Completeness certificate
        tol: Refinement tolerance used
    """
    problem: Problem
    window: SpectralWindow
    real_pairs: Tuple[Eigenpair, ...]
    complex_pairs: Tuple[Eigenpair, ...]
    certificate: Certificate
    tol: float = DEFAULT_REFINE_TOL
    tol_deg: Optional[float] = field(default=None, compare=False)

    @property
    def pairs(self) -> Tuple[Eigenpair, ...]:
        """Real pairs then complex pairs, sorted by (Re λ, Im λ)"""
        return tuple(sorted(self.real_pairs + self.complex_pairs, key=lambda e: (e.lam.real, e.lam.imag)))

    @property
    def real_eigenvalues(self) -> np.ndarray:
        return np.array([e.lam.real for e in self.real_pairs])

    @property
    def complex_eigenvalues(self) -> np.ndarray:
        return np.array([e.lam for e in self.complex_pairs], dtype=complex)

    def full_nonreal_spectrum(self) -> np.ndarray:
        """Found non-real eigenvalues together with their conjugates"""
        lams = self.complex_eigenvalues
        return np.concatenate([lams, lams.conj()])

    @property
    def is_certified(self) -> bool:
        return self.certificate.match

    @property
    def is_classified(self) -> bool:
        return all(e.is_classified for e in self.real_pairs + self.complex_pairs)

    def with_pairs(self, real_pairs, complex_pairs, tol_deg: Optional[float] = None) -> "SpectralInventory":
        return replace(self, real_pairs=tuple(real_pairs), complex_pairs=tuple(complex_pairs), tol_deg=tol_deg)

    def require_certified(self) -> None:
        if not self.is_certified:
            raise CertificateError(
                f"Certificate mismatch for {self.problem.name}: contour count "
                f"{self.certificate.rect_count}, refined {self.certificate.found_count}"
            )


def conjugate_residuals(prob: Problem, pairs: List[Eigenpair]) -> Tuple[float, ...]:
    """|D(conj λ)| for each pair"""
    if not pairs:
        return ()
    D, _ = characteristic(prob, np.array([e.lam for e in pairs], dtype=complex).conj())
    return tuple(float(abs(d)) for d in D)


def build_inventory(
    prob: Problem,
    window: Optional[SpectralWindow] = None,
    tol: float = DEFAULT_REFINE_TOL,
    quad_tol: float = DEFAULT_QUAD_TOL,
    shot_tol: float = DEFAULT_TOL,
    classify: bool = True,
    tol_deg: Optional[float] = None,
) -> SpectralInventory:
    """
    Real scan, complex search and certificate assembly in one call.

    Args:
        prob: Problem
        window: Search window (default_window(prob) when omitted)
        tol: Refinement tolerance for real and non-real eigenvalues
        quad_tol: Contour quadrature tolerance
        shot_tol: Integration tolerance of eigenfunction shots
        classify: Fill oscillation counts, form values and ghost classes
        tol_deg: Degeneracy tolerance passed to the classifier

    Returns:
        SpectralInventory; a certificate mismatch is reported, not raised
    """
    window = default_window(prob) if window is None else window
    real = scan_real(prob, window.real_range, tol=tol, shot_tol=shot_tol)
    search = find_complex(prob, window.complex_rect, tol=tol, quad_tol=quad_tol, shot_tol=shot_tol)

    match = search.rect_count == search.found_count and not search.flagged
    certificate = Certificate(
        rect_count=search.rect_count,
        found_count=search.found_count,
        match=match,
        conjugate_residuals=conjugate_residuals(prob, search.pairs),
        flagged_rects=tuple(search.flagged),
        tangencies=tuple(real.flagged),
    )
    if not match:
        logger.warning(
            f"{prob.name}: certificate mismatch, contour count {search.rect_count}, "
            f"refined {search.found_count}, {len(search.flagged)} flagged"
        )
    inventory = SpectralInventory(
        problem=prob,
        window=window,
        real_pairs=tuple(real.pairs),
        complex_pairs=tuple(search.pairs),
        certificate=certificate,
        tol=tol,
    )
    if classify:
        from ..classification.classify import annotate_inventory

        kwargs = {} if tol_deg is None else {"tol_deg": tol_deg}
        inventory = annotate_inventory(inventory, **kwargs)
    return inventory
