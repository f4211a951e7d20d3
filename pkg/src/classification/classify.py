"""
Ghost classification of eigenpairs and inventory annotation.
"""
from dataclasses import replace
import logging
from typing import Optional

from ..coefficients.problem import Problem
from ..spectrum.eigenpair import Eigenpair
from ..spectrum.inventory import SpectralInventory
from .forms import FormValues, form_values
from .ghosts import GhostClass, GhostTag
from .oscillation import oscillation_count

logger = logging.getLogger(__name__)

DEFAULT_TOL_DEG = 1e-4
# inside the band, |∫u²w| above this fraction of it leaves the sign of λ∫u²w ambiguous
BORDERLINE_FRACTION = 0.1


def classify(
    prob: Problem,
    e: Eigenpair,
    tol_deg: float = DEFAULT_TOL_DEG,
    forms: Optional[FormValues] = None,
    osc_count: Optional[int] = None,
) -> GhostClass:
    """
    Ghost class of an eigenpair, relative to scale = ∫|φ|²|w|.

    Real λ: |∫u²w| <= tol_deg·scale is degenerate; λ∫u²w < -tol_deg·scale is a
    non-degenerate ghost and λ∫u²w > tol_deg·scale ordinary. In between
    (possible only for |λ| < 1) the sign decides and the class is borderline.
    λ = 0 with a nonzero weighted integral is ordinary with the
    zero_eigenvalue flag.
    Non-real λ: degenerate iff |∫φ²w| <= tol_deg·scale.

    Args:
        prob: Problem
        e: Eigenpair
        tol_deg: Relative degeneracy tolerance
        forms: Precomputed form values (computed when omitted)
        osc_count: Interior zeros, sets the ground-state flag (real λ only)
    """
    if not tol_deg > 0:
        raise ValueError(f"tol_deg must be positive, got {tol_deg}")
    forms = form_values(prob, e) if forms is None else forms
    band = tol_deg * forms.scale

    if not e.is_real:
        degenerate = abs(forms.weighted_sq) <= band
        return GhostClass(GhostTag.COMPLEX_DEGENERATE if degenerate else GhostTag.COMPLEX_NONDEGENERATE)

    if osc_count is None:
        osc_count = e.osc_count if e.osc_count is not None else oscillation_count(e)
    ground_state = osc_count == 0
    lam = e.lam.real
    ws = forms.weighted_sq.real

    if abs(ws) <= band:
        borderline = abs(ws) > BORDERLINE_FRACTION * band
        if borderline:
            logger.warning(f"Borderline degeneracy at lambda={lam}: |∫u²w|/scale = {abs(ws) / forms.scale:.3e}")
        return GhostClass(GhostTag.DEGENERATE_REAL, ground_state, borderline, lam == 0.0)
    if lam == 0.0:
        return GhostClass(GhostTag.ORDINARY, ground_state, zero_eigenvalue=True)
    signed = lam * ws
    if signed < -band:
        return GhostClass(GhostTag.NONDEGENERATE_REAL, ground_state)
    if signed > band:
        return GhostClass(GhostTag.ORDINARY, ground_state)
    # |λ| < 1 can pull λ∫u²w into the band although ∫u²w is clearly nonzero
    logger.warning(f"Borderline sign at lambda={lam}: |λ∫u²w|/scale = {abs(signed) / forms.scale:.3e}")
    tag = GhostTag.NONDEGENERATE_REAL if signed < 0.0 else GhostTag.ORDINARY
    return GhostClass(tag, ground_state, borderline=True)


def annotate_pair(prob: Problem, e: Eigenpair, tol_deg: float = DEFAULT_TOL_DEG) -> Eigenpair:
    """Copy of e with osc_count (real only), form values and ghost class filled"""
    forms = form_values(prob, e)
    osc = oscillation_count(e) if e.is_real else None
    ghost = classify(prob, e, tol_deg, forms=forms, osc_count=osc)
    return replace(e, osc_count=osc, forms=forms, ghost_class=ghost)


def annotate_inventory(inv: SpectralInventory, tol_deg: float = DEFAULT_TOL_DEG) -> SpectralInventory:
    """Classify every eigenpair of an inventory"""
    prob = inv.problem
    real = [annotate_pair(prob, e, tol_deg) for e in inv.real_pairs]
    complex_ = [annotate_pair(prob, e, tol_deg) for e in inv.complex_pairs]
    ghosts = sum(1 for e in real + complex_ if e.ghost_class.tag.is_ghost)
    logger.info(f"{prob.name}: classified {len(real) + len(complex_)} eigenpairs, {ghosts} ghosts")
    return inv.with_pairs(real, complex_, tol_deg=tol_deg)
