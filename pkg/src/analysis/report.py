"""
Index reports and the full check suite for a certified inventory.
"""
from dataclasses import replace
import logging
from typing import List

from ..classification.classify import DEFAULT_TOL_DEG, annotate_inventory
from ..coefficients.piecewise import Sign
from ..spectrum.inventory import SpectralInventory
from .checks import (
    MIN_PRINCIPLE_PAIRS,
    MIN_PRINCIPLE_TRIALS,
    CheckRecord,
    certificate_check,
    comparison_lower_bound,
    degenerate_count_check,
    ghost_count_check,
    ghost_lower_bound_check,
    index_upper_bounds,
    lyapunov_check,
    m_pairs,
    minimum_principle_check,
    n_degenerate,
    no_ground_state_check,
    orthogonality_check,
    rapoport_check,
)
from .indices import IndexReport, indices
from .profile import profile

logger = logging.getLogger(__name__)


def index_report(
    inv: SpectralInventory,
    side: Sign = Sign.POSITIVE,
    tol_deg: float = DEFAULT_TOL_DEG,
    with_checks: bool = True,
    properties: bool = False,
) -> IndexReport:
    """
    Indices of one side of the real axis with the inequality checks attached.

    Args:
        inv: Certified inventory
        side: Which half of the real axis
        tol_deg: Degeneracy tolerance used when the inventory is unclassified
        with_checks: Run the check suite
        properties: Also run the orthogonality and minimum-principle suites

    Raises:
        UncertifiedInventoryError: Certificate did not match
        WindowTooSmallError: No eigenvalue on that side
    """
    if not inv.is_classified:
        inv = annotate_inventory(inv, tol_deg)
    prof = profile(inv, side)
    idx = indices(prof)
    rep = IndexReport(
        n_R=idx.n_R,
        n_H=idx.n_H,
        Lambda_R=idx.Lambda_R,
        Lambda_H=idx.Lambda_H,
        m_pairs=m_pairs(inv),
        n_deg=n_degenerate(inv),
        stability_margin=idx.stability_margin,
        profile=prof,
    )
    if with_checks:
        rep = replace(rep, checks=tuple(check_suite(inv, rep, properties=properties)))
    logger.info(
        f"{inv.problem.name} ({side.value}): n_R={rep.n_R} n_H={rep.n_H} "
        f"Lambda_H={rep.Lambda_H:.10g} Lambda_R={rep.Lambda_R:.10g} margin={rep.stability_margin}"
    )
    return rep


def check_suite(
    inv: SpectralInventory,
    rep: IndexReport,
    properties: bool = True,
    trials: int = MIN_PRINCIPLE_TRIALS,
) -> List[CheckRecord]:
    """
    Every applicable check, in a fixed order.

    Index and comparison bounds of the negative side are evaluated on the
    reflected problem.
    """
    prob = inv.problem
    side_prob = prob if rep.side is Sign.POSITIVE else prob.reflected()

    records: List[CheckRecord] = [certificate_check(inv), ghost_lower_bound_check(inv, rep)]
    records.extend(index_upper_bounds(side_prob, rep))
    records.extend(comparison_lower_bound(side_prob, rep))
    records.extend([no_ground_state_check(inv), degenerate_count_check(inv), ghost_count_check(inv)])

    on_side = [
        e for e in inv.real_pairs
        if (e.lam.real >= 0.0) == (rep.side is Sign.POSITIVE)
    ]
    for e in on_side:
        records.append(rapoport_check(prob, e))
        if e.osc_count == 0:
            records.append(lyapunov_check(prob, e))

    if properties:
        records.append(orthogonality_check(inv))
        for e in sorted(on_side, key=lambda e: abs(e.lam.real))[:MIN_PRINCIPLE_PAIRS]:
            records.append(minimum_principle_check(prob, e, trials=trials))

    failed = [r.name for r in records if r.is_failure]
    if failed:
        logger.warning(f"{prob.name}: {len(failed)} checks failed: {', '.join(failed)}")
    return records
