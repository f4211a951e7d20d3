"""
solve, indices and verify commands.

Every command writes its report table to `out` and files to the configured
output directory, and returns the process exit code.
"""
import logging
import sys
from typing import List, TextIO

import pandas as pd

from ..analysis.checks import CheckRecord
from ..analysis.indices import IndexReport
from ..analysis.report import index_report
from ..data.writers import (
    checks_frame,
    classification_frame,
    format_table,
    write_index_report,
    write_inventory,
    write_table,
)
from ..errors import CertificateError, CheckFailedError, UncertifiedInventoryError, WindowTooSmallError
from ..oracle.extrapolate import agreement_check, extrapolate
from ..spectrum.inventory import SpectralInventory, build_inventory
from .config import RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0


def solve_inventory(config: RunConfig) -> SpectralInventory:
    """Problem, window and classified inventory for a configuration"""
    prob = config.build_problem()
    window = config.build_window(prob)
    return build_inventory(
        prob,
        window,
        tol=config.refine_tol,
        quad_tol=config.quad_tol,
        shot_tol=config.tol,
        tol_deg=config.tol_deg,
    )


def _summary(inv: SpectralInventory) -> str:
    cert = inv.certificate
    rng = inv.window.real_range
    return (
        f"problem: {inv.problem.name}\n"
        f"window: real [{rng.a!r}, {rng.b!r}], complex {list(inv.window.complex_rect.as_tuple())!r}\n"
        f"real eigenvalues: {len(inv.real_pairs)}, non-real (upper half): {len(inv.complex_pairs)}\n"
        f"certificate: contour {cert.rect_count}, refined {cert.found_count}, match {cert.match}\n"
    )


def cmd_solve(config: RunConfig, out: TextIO = sys.stdout) -> int:
    inv = solve_inventory(config)
    write_inventory(inv, config.output_dir, config.formats)
    out.write(_summary(inv))
    out.write(format_table(classification_frame(inv.pairs)))
    if not inv.is_certified:
        out.write("certificate mismatch\n")
        return CertificateError.exit_code
    return EXIT_OK


def _indices_table(rep: IndexReport) -> pd.DataFrame:
    rows = [
        ("side", rep.side.value),
        ("n_R", rep.n_R),
        ("n_H", rep.n_H),
        ("Lambda_R", repr(rep.Lambda_R)),
        ("Lambda_H", repr(rep.Lambda_H)),
        ("m_pairs", rep.m_pairs),
        ("n_deg", rep.n_deg),
        ("stability_margin", rep.stability_margin),
        ("window_too_small", rep.window_too_small),
    ]
    return pd.DataFrame([(k, str(v)) for k, v in rows], columns=["quantity", "value"])


def _certified(config: RunConfig) -> SpectralInventory:
    inv = solve_inventory(config)
    if not inv.is_certified:
        raise UncertifiedInventoryError(
            f"Inventory of {inv.problem.name} is not certified: contour count "
            f"{inv.certificate.rect_count}, refined {inv.certificate.found_count}"
        )
    return inv


def cmd_indices(config: RunConfig, out: TextIO = sys.stdout) -> int:
    inv = _certified(config)
    rep = index_report(inv, config.sign, tol_deg=config.tol_deg)
    write_index_report(rep, config.output_dir, config.formats)
    out.write(format_table(_indices_table(rep)))
    out.write(format_table(checks_frame(rep.checks)))
    if rep.window_too_small and not config.allow_unstable:
        out.write(f"window too small: stability margin {rep.stability_margin}\n")
        return WindowTooSmallError.exit_code
    return EXIT_OK


def cmd_verify(config: RunConfig, out: TextIO = sys.stdout) -> int:
    """Every applicable check; exit 0 iff no check failed outright"""
    inv = _certified(config)
    rep = index_report(inv, config.sign, tol_deg=config.tol_deg, properties=True)
    records: List[CheckRecord] = list(rep.checks)
    if config.oracle_n is not None:
        records.append(agreement_check(inv, extrapolate(inv.problem, config.oracle_n, workers=config.workers)))

    frame = checks_frame(records)
    tables = [f for f in config.formats if f in ("csv", "parquet")]
    write_table(frame, config.output_dir / "verify", tables)
    out.write(format_table(frame))

    failed = [r.name for r in records if r.is_failure]
    if failed:
        error = CheckFailedError(f"Failed checks: {', '.join(failed)}", check_names=tuple(failed))
        out.write(f"{error}\n")
        return error.exit_code
    out.write("all checks passed\n")
    return EXIT_OK
