"""
Mesh-refinement extrapolation of pencil eigenvalues and cross-validation
against the shooting inventory.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import logging
from typing import List, Optional, Sequence

import numpy as np

from ..analysis.checks import CheckRecord, CheckStatus
from ..coefficients.problem import Problem
from ..spectrum.inventory import SpectralInventory
from ..spectrum.window import Rectangle
from .discretize import discretize
from .eigensolver import pencil_eigenvalues

logger = logging.getLogger(__name__)

AGREEMENT_REL_TOL = 1e-4
# fraction of the window kept as "interior" for the oracle-to-shooting direction
INTERIOR_FRACTION = 0.9


@dataclass(frozen=True)
class ExtrapolatedEigenvalue:
    """
    Attributes:
        lam: (4 λ_fine - λ_coarse) / 3
        error: |λ_fine - λ_coarse| / 3
        coarse: Eigenvalue on the n-node mesh
        fine: Matched eigenvalue on the refined mesh
        flagged: Another candidate lies within the error estimate
    """
    lam: complex
    error: float
    coarse: complex
    fine: complex
    flagged: bool = False


def refined_size(n_interior: int) -> int:
    """Interior nodes of the mesh with half the width"""
    return 2 * (n_interior + 1) - 1


def _match(coarse: np.ndarray, fine: np.ndarray) -> List[ExtrapolatedEigenvalue]:
    """Nearest-neighbour matching, coarse values taken closest-first so the map stays injective"""
    distances = np.abs(coarse[:, None] - fine[None, :])
    order = np.argsort(distances.min(axis=1), kind="stable")
    taken = set()
    out: List[Optional[ExtrapolatedEigenvalue]] = [None] * len(coarse)
    for i in order:
        candidates = [j for j in np.argsort(distances[i], kind="stable") if j not in taken]
        if not candidates:
            continue
        j = candidates[0]
        taken.add(j)
        lam_c, lam_f = complex(coarse[i]), complex(fine[j])
        error = abs(lam_f - lam_c) / 3.0
        others = np.abs(coarse - lam_c)
        others[i] = np.inf
        flagged = bool(np.min(others, initial=np.inf) <= 2.0 * error)
        out[i] = ExtrapolatedEigenvalue((4.0 * lam_f - lam_c) / 3.0, error, lam_c, lam_f, flagged)
    return [e for e in out if e is not None]


def extrapolate(prob: Problem, n: int, workers: int = 2) -> List[ExtrapolatedEigenvalue]:
    """
    Richardson extrapolation from the n-node and refined meshes, assuming
    second-order convergence. Results are sorted by (Re, Im).
    """
    sizes = (n, refined_size(n))
    operators = [discretize(prob, size) for size in sizes]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        coarse, fine = pool.map(pencil_eigenvalues, operators)
    result = _match(coarse, fine)
    flagged = sum(1 for e in result if e.flagged)
    if flagged:
        logger.warning(f"{prob.name}: {flagged} ambiguous oracle clusters")
    logger.info(f"{prob.name}: extrapolated {len(result)} eigenvalues from meshes {sizes}")
    return sorted(result, key=lambda e: (e.lam.real, e.lam.imag))


def _tolerance(lam: complex, error: float) -> float:
    return max(error, AGREEMENT_REL_TOL * (1.0 + abs(lam)))


def _shrunk(rect: Rectangle, real_lo: float, real_hi: float):
    cr, half = 0.5 * (real_lo + real_hi), 0.5 * INTERIOR_FRACTION * (real_hi - real_lo)
    return (
        (cr - half, cr + half),
        Rectangle.around(rect.center, 0.5 * INTERIOR_FRACTION * rect.width, 0.5 * INTERIOR_FRACTION * rect.height),
    )


def agreement_check(inv: SpectralInventory, oracle: Sequence[ExtrapolatedEigenvalue]) -> CheckRecord:
    """
    Every inventory eigenvalue has an oracle partner within its tolerance,
    and every unflagged oracle eigenvalue inside the window interior has an
    inventory partner. lhs is the largest distance relative to tolerance.
    """
    if not oracle:
        return CheckRecord("oracle_agreement", float("nan"), 1.0, False, CheckStatus.NOT_APPLICABLE, "no oracle values")
    lams = np.array([e.lam for e in oracle])
    worst = 0.0
    missing = []
    for e in inv.pairs:
        k = int(np.argmin(np.abs(lams - e.lam)))
        ratio = abs(lams[k] - e.lam) / _tolerance(e.lam, oracle[k].error)
        worst = max(worst, ratio)
        if ratio > 1.0:
            missing.append(complex(e.lam))

    window = inv.window
    (lo, hi), rect = _shrunk(window.complex_rect, window.real_range.a, window.real_range.b)
    found = np.array([e.lam for e in inv.pairs], dtype=complex)
    for o in oracle:
        lam = o.lam
        inside_real = abs(lam.imag) <= _tolerance(lam, o.error) and lo <= lam.real <= hi
        inside_rect = rect.contains(lam)
        if o.flagged or not (inside_real or inside_rect):
            continue
        if len(found) == 0:
            missing.append(lam)
            continue
        k = int(np.argmin(np.abs(found - lam)))
        ratio = abs(found[k] - lam) / _tolerance(lam, o.error)
        worst = max(worst, ratio)
        if ratio > 1.0:
            missing.append(lam)

    passed = not missing
    note = "" if passed else f"unmatched {missing[:5]}"
    if not passed:
        logger.warning(f"{inv.problem.name}: oracle disagreement, {note}")
    return CheckRecord("oracle_agreement", worst, 1.0, passed, CheckStatus.PASSED if passed else CheckStatus.FAILED, note)
