"""
Side-by-side reproduction of the published examples.

Every row compares a published value with the computed one and is marked
pass, fail or flagged. Flagged rows are published values already known not
to follow from the stated problem; they are reported with the computed value
and never counted as passes.

Example ids and the problems they run:

    q3, q15, q33, qdeg, q4pi2   P1(-q) for q = 3, 15, 33, 21.99604, 4π²
    qm22, qm419                 P1(-22), P1(-41.9)
    tturn                       P2
    tturn1                      P2 with q = w - 9π²/4, the published spectrum
"""
from dataclasses import dataclass
from enum import Enum
import logging
import math
import sys
from typing import Callable, Dict, List, Optional, TextIO

import pandas as pd

from ..analysis.checks import CheckStatus, index_bound
from ..analysis.indices import IndexReport
from ..analysis.report import index_report
from ..classification.ghosts import GhostTag
from ..coefficients.fixtures import sign_weight_problem, two_turning_point_problem
from ..coefficients.interval import Interval
from ..coefficients.problem import Problem
from ..data.writers import format_table, write_json
from ..errors import CheckFailedError
from ..spectrum.inventory import SpectralInventory, build_inventory
from ..spectrum.window import Rectangle, SpectralWindow

logger = logging.getLogger(__name__)

EIGENVALUE_TOL = 1e-3
TTURN_REAL_TOL = 0.1
TTURN_COMPLEX_TOL = 0.2
DEGENERATE_REL_TOL = 1e-3
PURE_IMAGINARY_TOL = 1e-6
REPRODUCE_COLUMNS = ["quantity", "published", "computed", "tolerance", "status", "note"]


class RowStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    FLAGGED = "flagged"


@dataclass(frozen=True)
class ReproduceRow:
    quantity: str
    published: str
    computed: str
    tolerance: str
    status: RowStatus
    note: str = ""


def _fmt(value) -> str:
    if isinstance(value, complex):
        return f"{value.real!r}{value.imag:+}i"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _compare(
    quantity: str,
    published,
    computed,
    tol: float = 0.0,
    documented: bool = False,
    note: str = "",
) -> ReproduceRow:
    """
    Numeric rows pass within tol. A mismatch on a documented discrepancy is
    flagged, any other mismatch fails.
    """
    if computed is None:
        status = RowStatus.FAIL
        note = note or "not found in the window"
    elif isinstance(published, (int, float, complex)) and not isinstance(published, bool):
        ok = abs(computed - published) <= tol
        status = RowStatus.PASS if ok else (RowStatus.FLAGGED if documented else RowStatus.FAIL)
    else:
        ok = computed == published
        status = RowStatus.PASS if ok else (RowStatus.FLAGGED if documented else RowStatus.FAIL)
    return ReproduceRow(quantity, _fmt(published), _fmt(computed), _fmt(tol), status, note)


@dataclass(frozen=True)
class Example:
    example_id: str
    problem: Callable[[], Problem]
    rows: Callable[[SpectralInventory, IndexReport], List[ReproduceRow]]
    tol_deg: Optional[float] = None
    window: Optional[Callable[[], SpectralWindow]] = None


def _min_count(rep: IndexReport) -> Optional[int]:
    counts = rep.profile.counts
    return counts[0] if counts else None


def _check_status(rep: IndexReport, name: str) -> str:
    for record in rep.checks:
        if record.name == name:
            return record.status.value
    return CheckStatus.NOT_APPLICABLE.value


def _relative_degeneracy(inv: SpectralInventory) -> List[float]:
    return sorted(e.forms.relative_weighted_sq for e in inv.real_pairs if e.forms is not None)


def _family_rows(pairs: int, min_count: int) -> Callable[[SpectralInventory, IndexReport], List[ReproduceRow]]:
    def rows(inv: SpectralInventory, rep: IndexReport) -> List[ReproduceRow]:
        return [
            _compare("non-real eigenvalues (upper half)", pairs, len(inv.complex_pairs)),
            _compare("smallest positive oscillation count", min_count, _min_count(rep)),
            _compare("ghost bound n_R >= m + n_deg", CheckStatus.PASSED.value, _check_status(rep, "ghost_lower_bound")),
        ]

    return rows


def _q3_rows(inv: SpectralInventory, rep: IndexReport) -> List[ReproduceRow]:
    rows = _family_rows(1, 1)(inv, rep)
    pure = len(inv.complex_pairs) == 1 and abs(inv.complex_pairs[0].lam.real) < PURE_IMAGINARY_TOL
    rows.insert(1, _compare("pure imaginary pair", "yes", "yes" if pure else "no"))
    return rows


def _qdeg_rows(inv: SpectralInventory, rep: IndexReport) -> List[ReproduceRow]:
    near = sum(1 for r in _relative_degeneracy(inv) if r < DEGENERATE_REL_TOL)
    count_one = any(e.osc_count == 1 for e in inv.real_pairs)
    return [
        _compare("degenerate real eigenvalues", 2, rep.n_deg,
                 note=f"{near} eigenpairs with |∫u²w|/scale < 1e-3, near-collision pairs counted once"),
        _compare("real eigenfunction with 1 zero", "no", "yes" if count_one else "no"),
        _compare("no_count_n_deg_minus_1 check", CheckStatus.PASSED.value, _check_status(rep, "no_count_n_deg_minus_1")),
    ]


def _q4pi2_rows(inv: SpectralInventory, rep: IndexReport) -> List[ReproduceRow]:
    return [
        _compare("non-real eigenvalues (upper half)", 2, len(inv.complex_pairs)),
        _compare("degenerate real ghosts >= 1", "yes", "yes" if rep.n_deg >= 1 else "no"),
        _compare("n_R >= 3", "yes", "yes" if rep.n_R >= 3 else "no", note=f"n_R={rep.n_R}"),
        _compare("ghost bound n_R >= m + n_deg", CheckStatus.PASSED.value, _check_status(rep, "ghost_lower_bound")),
    ]


def _bound_row(prob: Problem, rep: IndexReport, published: float) -> ReproduceRow:
    bound = index_bound(prob, rep.Lambda_H) - 1.0
    holds = rep.n_R <= bound
    row = _compare("n_R upper bound", published, bound, tol=EIGENVALUE_TOL, documented=holds,
                   note=f"n_R={rep.n_R}, recomputed from the index bound with Lambda_H")
    return row


def _qm22_rows(inv: SpectralInventory, rep: IndexReport) -> List[ReproduceRow]:
    note = f"published value matches Lambda_H={rep.Lambda_H!r}" if abs(rep.Lambda_H - 5.7069) <= EIGENVALUE_TOL else ""
    return [
        _compare("n_R", 2, rep.n_R),
        _compare("n_H", 3, rep.n_H),
        _compare("Lambda_R", 5.7069, rep.Lambda_R, tol=EIGENVALUE_TOL, documented=bool(note), note=note),
        _bound_row(inv.problem, rep, 5.845),
    ]


def _qm419_rows(inv: SpectralInventory, rep: IndexReport) -> List[ReproduceRow]:
    return [
        _compare("n_R", 3, rep.n_R),
        _compare("Lambda_H", 23.3372, rep.Lambda_H, tol=EIGENVALUE_TOL, documented=True,
                 note="D keeps one sign near the published value"),
        _bound_row(inv.problem, rep, 8.771),
    ]


def _lowest_with_count(inv: SpectralInventory, count: int) -> Optional[float]:
    values = sorted(e.lam.real for e in inv.real_pairs if e.osc_count == count and e.lam.real >= 0.0)
    return values[0] if values else None


def _pair_with_count(inv: SpectralInventory, count: int):
    candidates = [e for e in inv.real_pairs if e.osc_count == count and e.lam.real >= 0.0]
    return min(candidates, key=lambda e: e.lam.real) if candidates else None


def _next_real(inv: SpectralInventory, above: Optional[float]):
    if above is None:
        return None
    candidates = [e for e in inv.real_pairs if e.lam.real > above]
    return min(candidates, key=lambda e: e.lam.real) if candidates else None


def _nearest_complex(inv: SpectralInventory, target: complex) -> Optional[complex]:
    if not inv.complex_pairs:
        return None
    return complex(min((e.lam for e in inv.complex_pairs), key=lambda lam: abs(lam - target)))


def _tturn_rows(shift: float) -> Callable[[SpectralInventory, IndexReport], List[ReproduceRow]]:
    """
    The published two-turning-point spectrum sits one unit above P2: it
    belongs to q = w - 9π²/4, where sin(3πx/2) is an eigenfunction at λ = 1.
    Against plain P2 every mismatch is flagged; the shifted problem must match.
    """
    documented = shift == 0.0
    moved = "published value is computed + 1 (q = w - 9π²/4, example tturn1)" if documented else ""

    def rows(inv: SpectralInventory, rep: IndexReport) -> List[ReproduceRow]:
        out = []
        published = ((5, 1.0), (4, 12.7), (3, 18.8), (2, 22.1))
        for count, value in published:
            out.append(_compare(
                f"eigenvalue with {count} zeros", value, _lowest_with_count(inv, count), tol=TTURN_REAL_TOL,
                documented=documented, note=moved,
            ))
        for count, _ in published:
            e = _pair_with_count(inv, count)
            label = e.ghost_class.label if e is not None and e.ghost_class is not None else None
            out.append(_compare(
                f"class of eigenfunction with {count} zeros", GhostTag.NONDEGENERATE_REAL.value, label,
                documented=documented and count == 5,
                note="λ = 0 here, so the sign of λ∫u²w is undefined" if documented and count == 5 else "",
            ))
        nxt = _next_real(inv, _lowest_with_count(inv, 2))
        out.append(_compare("next eigenvalue", 49.3, nxt.lam.real if nxt is not None else None,
                            tol=TTURN_COMPLEX_TOL, documented=documented, note=moved))
        out.append(_compare(
            "zeros of the next eigenfunction", 3, nxt.osc_count if nxt is not None else None, documented=True,
            note="above 9π²/4 the eigenfunction is sin(kx) on [0, 1] then a decaying sinh, floor(k/π) = 2 zeros",
        ))
        for target in (complex(5.8, 8.2), complex(-12.0, 4.1)):
            out.append(_compare("non-real eigenvalue", target, _nearest_complex(inv, target), tol=TTURN_COMPLEX_TOL,
                                documented=documented, note=moved))
        return out

    return rows


def _tturn_window() -> SpectralWindow:
    return SpectralWindow(Interval(-30.0, 60.0), Rectangle(-20.0, 20.0, 0.1, 15.0))


EXAMPLES: Dict[str, Example] = {
    "q3": Example("q3", lambda: sign_weight_problem(-3.0), _q3_rows),
    "q15": Example("q15", lambda: sign_weight_problem(-15.0), _family_rows(2, 2)),
    "q33": Example("q33", lambda: sign_weight_problem(-33.0), _family_rows(3, 3)),
    "qdeg": Example("qdeg", lambda: sign_weight_problem(-21.99604), _qdeg_rows, tol_deg=DEGENERATE_REL_TOL),
    "q4pi2": Example("q4pi2", lambda: sign_weight_problem(-4.0 * math.pi ** 2), _q4pi2_rows),
    "qm22": Example("qm22", lambda: sign_weight_problem(-22.0), _qm22_rows),
    "qm419": Example("qm419", lambda: sign_weight_problem(-41.9), _qm419_rows),
    "tturn": Example("tturn", two_turning_point_problem, _tturn_rows(0.0), window=_tturn_window),
    "tturn1": Example("tturn1", lambda: two_turning_point_problem(shift=1.0), _tturn_rows(1.0), window=_tturn_window),
}


def reproduce(example_id: str) -> List[ReproduceRow]:
    """
    Raises:
        KeyError: Unknown example id
    """
    example = EXAMPLES[example_id]
    prob = example.problem()
    kwargs = {} if example.tol_deg is None else {"tol_deg": example.tol_deg}
    if example.window is not None:
        kwargs["window"] = example.window()
    inv = build_inventory(prob, **kwargs)
    rep = index_report(inv)
    rows = example.rows(inv, rep)
    flagged = sum(1 for r in rows if r.status is RowStatus.FLAGGED)
    logger.info(f"reproduce {example_id}: {len(rows)} rows, {flagged} flagged")
    return rows


def rows_frame(rows: List[ReproduceRow]) -> pd.DataFrame:
    return pd.DataFrame(
        [(r.quantity, r.published, r.computed, r.tolerance, r.status.value, r.note) for r in rows],
        columns=REPRODUCE_COLUMNS,
    )


def cmd_reproduce(example_id: str, output_dir=None, out: TextIO = sys.stdout) -> int:
    rows = reproduce(example_id)
    frame = rows_frame(rows)
    if output_dir is not None:
        write_json({"example": example_id, "rows": frame.to_dict(orient="records")}, output_dir / f"reproduce_{example_id}.json")
    out.write(format_table(frame))
    failed = [r.quantity for r in rows if r.status is RowStatus.FAIL]
    if failed:
        error = CheckFailedError(f"Mismatched rows: {', '.join(failed)}", check_names=tuple(failed))
        out.write(f"{error}\n")
        return error.exit_code
    return 0
