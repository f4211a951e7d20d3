"""
Inequality and consistency checks on computed spectra.

Each check returns a CheckRecord with the two sides of the inequality it
tests. Zero-counting bounds use the length ∫ dx/p of the interval in the
metric of p, which is b - a when p = 1.
"""
from dataclasses import dataclass
from enum import Enum
import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from ..classification.forms import quadratic_form_gap
from ..classification.ghosts import GhostTag
from ..classification.orthogonality import orthogonality_residuals
from ..coefficients.piecewise import Sign
from ..coefficients.problem import Problem
from ..spectrum.eigenpair import Eigenpair
from ..spectrum.inventory import SpectralInventory
from .indices import IndexReport

logger = logging.getLogger(__name__)

EQUALITY_TOL = 1e-8
ORTHOGONALITY_TOL = 1e-5
MIN_PRINCIPLE_TRIALS = 100
MIN_PRINCIPLE_PAIRS = 3
MULTIPLIER_DEGREE = 4
COMPARISON_SAMPLES = 64
# |w| below this on a cell makes inf q/|w| meaningless
WEIGHT_FLOOR = 1e-12
# neighbouring degenerate eigenvalues closer than this (relative to 1 + |λ|) may be one collision
CLUSTER_DISTANCE = 1e-2


class CheckStatus(Enum):
    PASSED = "passed"
    FAILED = "failed"
    FLAGGED = "flagged"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class CheckRecord:
    """
    Attributes:
        name: Stable machine-readable check name
        lhs: Left-hand side as computed
        rhs: Right-hand side as computed
        passed: Inequality holds (False for not_applicable)
        status: Outcome, FLAGGED for equality cases worth a look
        note: Free-form detail
    """
    name: str
    lhs: float
    rhs: float
    passed: bool
    status: CheckStatus
    note: str = ""

    @property
    def is_failure(self) -> bool:
        return self.status is CheckStatus.FAILED


def _record(name: str, lhs: float, rhs: float, passed: bool, note: str = "") -> CheckRecord:
    status = CheckStatus.PASSED if passed else CheckStatus.FAILED
    if not passed:
        logger.warning(f"Check {name} failed: {lhs} vs {rhs} {note}".rstrip())
    return CheckRecord(name, float(lhs), float(rhs), passed, status, note)


def _not_applicable(name: str, note: str) -> CheckRecord:
    return CheckRecord(name, math.nan, math.nan, False, CheckStatus.NOT_APPLICABLE, note)


def _label(lam: complex) -> str:
    lam = complex(lam)
    if lam.imag == 0.0:
        return f"{lam.real:.10g}"
    return f"{lam.real:.10g}{lam.imag:+.10g}i"


def inverse_p_length(prob: Problem) -> float:
    """∫ dx/p by Gauss-Legendre on each cell (exact for constant p)"""
    nodes, weights = np.polynomial.legendre.leggauss(COMPARISON_SAMPLES)
    total = 0.0
    for cell in prob.cells:
        if cell.p.is_constant:
            total += cell.length / float(cell.p.evaluate(cell.lo))
            continue
        x = 0.5 * (cell.lo + cell.hi) + 0.5 * cell.length * nodes
        total += 0.5 * cell.length * float(np.dot(weights, 1.0 / np.asarray(cell.p.evaluate(x), dtype=float)))
    return total


def effective_potential_mass(prob: Problem, lam: float) -> float:
    """∫ (λw - q)+ over [a, b]"""
    return prob.effective_potential(lam).integrate_part(Sign.POSITIVE)


def m_pairs(inv: SpectralInventory) -> int:
    """Distinct non-real eigenvalues in the upper half-plane"""
    return len(inv.complex_pairs)


def degenerate_clusters(inv: SpectralInventory) -> List[Tuple[Eigenpair, ...]]:
    """
    Degenerate real ghosts grouped into distinct degenerate eigenvalues.

    Two neighbouring real eigenvalues, both degenerate, within
    CLUSTER_DISTANCE·(1 + |λ|) of each other and with ∫u²w of opposite signs
    are the halves of a near collision: they stand for one double eigenvalue
    of a nearby problem and count once.
    """
    clusters: List[List[Eigenpair]] = []
    previous: Optional[Eigenpair] = None
    for e in inv.real_pairs:
        if e.ghost_class is None or e.ghost_class.tag is not GhostTag.DEGENERATE_REAL:
            previous = None
            continue
        if previous is not None and len(clusters[-1]) == 1 and _collision_halves(previous, e):
            clusters[-1].append(e)
        else:
            clusters.append([e])
        previous = e
    return [tuple(c) for c in clusters]


def _collision_halves(left: Eigenpair, right: Eigenpair) -> bool:
    lam_l, lam_r = left.lam.real, right.lam.real
    if abs(lam_r - lam_l) > CLUSTER_DISTANCE * (1.0 + max(abs(lam_l), abs(lam_r))):
        return False
    if left.forms is None or right.forms is None:
        return False
    return left.forms.weighted_sq.real * right.forms.weighted_sq.real < 0.0


def n_degenerate(inv: SpectralInventory) -> int:
    """Distinct degenerate real eigenvalues, a near-collision pair counting once"""
    return len(degenerate_clusters(inv))


def ghost_lower_bound_check(inv: SpectralInventory, rep: IndexReport) -> CheckRecord:
    """n_R >= m + n_deg"""
    m, n, n_R = m_pairs(inv), n_degenerate(inv), rep.n_R
    return _record("ghost_lower_bound", n_R, m + n, n_R >= m + n, note=f"m_pairs={m} n_deg={n} n_R={n_R}")


def rapoport_check(prob: Problem, e: Eigenpair) -> CheckRecord:
    """
    ∫ (λw - q)+ >= 4(n+1)² / ∫dx/p for a real eigenpair with n zeros.

    The eigenfunction solves (p u')' + (λw - q) u = 0 with n + 1 nodal
    intervals, on each of which the Lyapunov inequality applies.
    """
    if not e.is_real or e.osc_count is None:
        return _not_applicable(f"rapoport[{_label(e.lam)}]", "needs a real eigenpair with an oscillation count")
    n = e.osc_count
    lhs = effective_potential_mass(prob, e.lam.real)
    rhs = 4.0 * (n + 1) ** 2 / inverse_p_length(prob)
    return _record(f"rapoport[{_label(e.lam)}]", lhs, rhs, lhs >= rhs, note=f"n={n}")


def lyapunov_check(prob: Problem, e: Eigenpair) -> CheckRecord:
    """∫ (λw - q)+ >= 4 / ∫dx/p for a real eigenpair without interior zeros"""
    name = f"lyapunov[{_label(e.lam)}]"
    if not e.is_real or e.osc_count != 0:
        return _not_applicable(name, "needs a real eigenfunction without interior zeros")
    lhs = effective_potential_mass(prob, e.lam.real)
    rhs = 4.0 / inverse_p_length(prob)
    return _record(name, lhs, rhs, lhs >= rhs)


def index_bound(prob: Problem, number: float) -> float:
    """sqrt(∫dx/p / 4 · (Λ ∫w+ + ∫q-)), the ceiling on index + 1"""
    mass = number * prob.w.integrate_part(Sign.POSITIVE) + prob.q.integrate_part(Sign.NEGATIVE)
    return math.sqrt(max(inverse_p_length(prob) / 4.0 * mass, 0.0))


def index_upper_bounds(prob: Problem, rep: IndexReport) -> List[CheckRecord]:
    """
    Index ceilings for n_R (with Λ_H) and n_H (with Λ_R), the identities
    λ_{n_R} = Λ_H and λ_{n_H} = Λ_R against the smallest eigenvalue of each
    count, and the ordering λ_{n_R} <= Λ_R.
    """
    lowest = rep.lowest_by_count()
    records = []
    rhs_R = index_bound(prob, rep.Lambda_H)
    records.append(_record("richardson_index_bound", rep.n_R + 1, rhs_R, rep.n_R + 1 <= rhs_R))
    if math.isfinite(rep.Lambda_R):
        rhs_H = index_bound(prob, rep.Lambda_R)
        records.append(_record("haupt_index_bound", rep.n_H + 1, rhs_H, rep.n_H + 1 <= rhs_H))
    else:
        records.append(_not_applicable("haupt_index_bound", "no stabilized count in the window"))

    identities = (
        ("haupt_number_identity", rep.n_R, rep.Lambda_H),
        ("richardson_number_identity", rep.n_H, rep.Lambda_R),
    )
    for name, count, number in identities:
        if count in lowest and math.isfinite(number):
            lam = lowest[count]
            records.append(_record(name, lam, number, abs(lam - number) <= EQUALITY_TOL * (1.0 + abs(number))))
        else:
            records.append(_not_applicable(name, f"no eigenvalue with {count} zeros in the window"))

    if math.isfinite(rep.Lambda_R) and rep.n_R in lowest:
        records.append(_record("number_ordering", lowest[rep.n_R], rep.Lambda_R, lowest[rep.n_R] <= rep.Lambda_R))
    else:
        records.append(_not_applicable("number_ordering", "Richardson number not observed"))
    return records


def _cell_samples(lo: float, hi: float) -> np.ndarray:
    t = np.cos(np.pi * np.arange(COMPARISON_SAMPLES) / (COMPARISON_SAMPLES - 1))
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * t


def comparison_constants(prob: Problem) -> Optional[Tuple[float, float]]:
    """
    (inf q/|w|, ‖wp‖∞) sampled on Chebyshev points of every cell, or None
    when w vanishes somewhere on [a, b] away from breakpoints.
    """
    ratio_inf = math.inf
    c2 = 0.0
    for cell in prob.cells:
        w_lo, w_hi = cell.w.bounds(cell.lo, cell.hi)
        if w_lo <= WEIGHT_FLOOR and w_hi >= -WEIGHT_FLOOR:
            return None
        x = _cell_samples(cell.lo, cell.hi)
        w = np.asarray(cell.w.evaluate(x), dtype=float)
        q = np.asarray(cell.q.evaluate(x), dtype=float)
        p = np.asarray(cell.p.evaluate(x), dtype=float)
        ratio_inf = min(ratio_inf, float(np.min(q / np.abs(w))))
        c2 = max(c2, float(np.max(np.abs(w * p))))
    return ratio_inf, c2


def comparison_bound(prob: Problem, count: int) -> Optional[float]:
    """inf q/|w| + (n+1)²π² / (c² (∫dx/p)²)"""
    constants = comparison_constants(prob)
    if constants is None:
        return None
    ratio_inf, c2 = constants
    return ratio_inf + (count + 1) ** 2 * math.pi ** 2 / (c2 * inverse_p_length(prob) ** 2)


def _comparison_record(prob: Problem, name: str, count: int, number: float) -> CheckRecord:
    bound = comparison_bound(prob, count)
    if bound is None:
        return _not_applicable(name, "w vanishes on part of the interval")
    if not math.isfinite(number):
        return _not_applicable(name, "number not observed in the window")
    if abs(number - bound) <= EQUALITY_TOL * (1.0 + abs(number)):
        return CheckRecord(name, number, bound, True, CheckStatus.FLAGGED, "equality")
    return _record(name, number, bound, number > bound, note=f"count={count}")


def comparison_lower_bound(prob: Problem, rep: IndexReport) -> List[CheckRecord]:
    """
    Λ_R against the comparison bound with n_H, and Λ_H with n_R. Equality
    within EQUALITY_TOL is reported as FLAGGED; it happens in the classical
    case.
    """
    return [
        _comparison_record(prob, "comparison_richardson_number", rep.n_H, rep.Lambda_R),
        _comparison_record(prob, "comparison_haupt_number", rep.n_R, rep.Lambda_H),
    ]


def no_ground_state_check(inv: SpectralInventory) -> CheckRecord:
    """With non-real eigenvalues present no real eigenfunction is zero-free"""
    name = "no_ground_state"
    if m_pairs(inv) == 0:
        return _not_applicable(name, "no non-real eigenvalues")
    grounds = [e.lam.real for e in inv.real_pairs if e.osc_count == 0]
    return _record(name, len(grounds), 0, not grounds, note=f"ground states at {grounds}" if grounds else "")


def _no_count_check(inv: SpectralInventory, name: str, count: int) -> CheckRecord:
    if count < 0:
        return _not_applicable(name, f"count {count} is negative")
    hits = [e.lam.real for e in inv.real_pairs if e.osc_count == count]
    return _record(name, len(hits), 0, not hits, note=f"count={count}" + (f" at {hits}" if hits else ""))


def degenerate_count_check(inv: SpectralInventory) -> CheckRecord:
    """No real eigenfunction with n_deg - 1 zeros"""
    return _no_count_check(inv, "no_count_n_deg_minus_1", n_degenerate(inv) - 1)


def ghost_count_check(inv: SpectralInventory) -> CheckRecord:
    """No real eigenfunction with m + n_deg - 1 zeros"""
    return _no_count_check(inv, "no_count_m_plus_n_deg_minus_1", m_pairs(inv) + n_degenerate(inv) - 1)


def orthogonality_check(inv: SpectralInventory, tol: float = ORTHOGONALITY_TOL) -> CheckRecord:
    report = orthogonality_residuals(inv.problem, inv)
    worst = report.max_residual()
    return _record("orthogonality", worst, tol, worst < tol, note=f"{len(report.records)} residuals")


def random_multiplier(rng: np.random.Generator, a: float, b: float, degree: int = MULTIPLIER_DEGREE) -> Polynomial:
    """Polynomial with standard normal coefficients in the variable mapped from [a, b] to [-1, 1]"""
    return Polynomial(rng.standard_normal(degree + 1), domain=[a, b])


def minimum_principle_check(
    prob: Problem, e: Eigenpair, trials: int = MIN_PRINCIPLE_TRIALS, seed: int = 0
) -> CheckRecord:
    """Form gap of u·η stays >= -quadrature error over random multipliers η"""
    name = f"minimum_principle[{_label(e.lam)}]"
    if not e.is_real:
        return _not_applicable(name, "needs a real eigenpair")
    rng = np.random.default_rng(seed)
    worst = math.inf
    worst_error = 0.0
    for _ in range(trials):
        gap = quadratic_form_gap(prob, e, random_multiplier(rng, prob.a, prob.b))
        if gap.value + gap.error < worst + worst_error:
            worst, worst_error = gap.value, gap.error
    return _record(name, worst, -worst_error, worst >= -worst_error, note=f"trials={trials}")


def certificate_check(inv: SpectralInventory) -> CheckRecord:
    cert = inv.certificate
    return _record("certificate", cert.found_count, cert.rect_count, cert.match)
