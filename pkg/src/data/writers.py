"""
Report writers: deterministic JSON, CSV and Parquet tables.

JSON reports are written with sorted keys and Python's shortest round-trip
float repr, so identical inputs give byte-identical files. Non-finite floats
are written as null.

Frozen table columns:

    classification.csv   lambda_re, lambda_im, multiplicity, osc_count,
                         weighted_sq, weighted_abs, dirichlet, class,
                         borderline_flag
    checks.csv           name, lhs, rhs, passed, status, note
    eigenfunctions/*.csv x, re_y, im_y, re_py_prime, im_py_prime
"""
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

import numpy as np
import pandas as pd

from ..analysis.checks import CheckRecord
from ..analysis.indices import IndexReport
from ..shooting.trajectory import trajectory_frame
from ..spectrum.eigenpair import Eigenpair
from ..spectrum.inventory import SpectralInventory
from .problem_file import ProblemFile

logger = logging.getLogger(__name__)

CLASSIFICATION_COLUMNS = [
    "lambda_re",
    "lambda_im",
    "multiplicity",
    "osc_count",
    "weighted_sq",
    "weighted_abs",
    "dirichlet",
    "class",
    "borderline_flag",
]
CHECK_COLUMNS = ["name", "lhs", "rhs", "passed", "status", "note"]
TABLE_FORMATS = ("csv", "parquet")
EIGENFUNCTION_SAMPLES = 401

PathLike = Union[str, Path]


def jsonable(value: Any) -> Any:
    """Recursively convert numpy scalars and complex numbers to JSON types"""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": jsonable(float(value.real)), "im": jsonable(float(value.imag))}
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def to_json(payload: Any) -> str:
    return json.dumps(jsonable(payload), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(payload: Any, filepath: PathLike) -> Path:
    path = Path(filepath)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json(payload))
    return path


def write_table(df: pd.DataFrame, stem: PathLike, formats: Iterable[str] = ("csv",)) -> List[Path]:
    """
    Write a frame as <stem>.csv and/or <stem>.parquet.

    Returns:
        Paths written
    """
    stem = Path(stem)
    stem.parent.mkdir(parents=True, exist_ok=True)
    written = []
    for fmt in formats:
        if fmt == "csv":
            path = stem.with_suffix(".csv")
            df.to_csv(path, index=False, float_format="%.17g")
        elif fmt == "parquet":
            path = stem.with_suffix(".parquet")
            df.to_parquet(path, index=False)
        else:
            continue
        written.append(path)
    return written


def eigenpair_to_dict(e: Eigenpair) -> Dict[str, Any]:
    record: Dict[str, Any] = {
        "lambda": complex(e.lam),
        "multiplicity": e.multiplicity,
        "residual": e.residual,
        "osc_count": e.osc_count,
    }
    if e.ghost_class is not None:
        record["class"] = e.ghost_class.label
        record["ground_state"] = e.ghost_class.ground_state
        record["borderline"] = e.ghost_class.borderline
        record["zero_eigenvalue"] = e.ghost_class.zero_eigenvalue
    if e.forms is not None:
        record["forms"] = {
            "weighted_sq": e.forms.weighted_sq,
            "weighted_abs": e.forms.weighted_abs,
            "dirichlet": e.forms.dirichlet,
            "norm": e.forms.norm,
            "scale": e.forms.scale,
            "quadrature_error": e.forms.quadrature_error,
        }
    return record


def inventory_to_dict(inv: SpectralInventory) -> Dict[str, Any]:
    cert = inv.certificate
    rect = inv.window.complex_rect
    return {
        "problem": ProblemFile.from_problem(inv.problem).model_dump(),
        "window": {
            "real_range": [inv.window.real_range.a, inv.window.real_range.b],
            "complex_rect": list(rect.as_tuple()),
        },
        "real": [eigenpair_to_dict(e) for e in inv.real_pairs],
        "complex": [eigenpair_to_dict(e) for e in inv.complex_pairs],
        "certificate": {
            "rect_count": cert.rect_count,
            "found_count": cert.found_count,
            "match": cert.match,
            "conjugate_residuals": list(cert.conjugate_residuals),
            "flagged_rects": [
                {"rect": list(f.rect.as_tuple()), "count": f.count, "reason": f.reason} for f in cert.flagged_rects
            ],
            "tangencies": [
                {"lambda": t.lam, "D": t.D, "zeros_nearby": t.zeros_nearby, "note": t.note} for t in cert.tangencies
            ],
        },
        "tol": inv.tol,
        "tol_deg": inv.tol_deg,
    }


def classification_frame(pairs: Sequence[Eigenpair]) -> pd.DataFrame:
    rows = []
    for e in pairs:
        forms = e.forms
        rows.append({
            "lambda_re": float(e.lam.real),
            "lambda_im": float(e.lam.imag),
            "multiplicity": e.multiplicity,
            "osc_count": e.osc_count if e.osc_count is not None else -1,
            "weighted_sq": float(abs(forms.weighted_sq)) if forms is not None else math.nan,
            "weighted_abs": forms.weighted_abs if forms is not None else math.nan,
            "dirichlet": forms.dirichlet if forms is not None else math.nan,
            "class": e.ghost_class.label if e.ghost_class is not None else "",
            "borderline_flag": bool(e.ghost_class.borderline) if e.ghost_class is not None else False,
        })
    return pd.DataFrame(rows, columns=CLASSIFICATION_COLUMNS)


def write_inventory(inv: SpectralInventory, out_dir: PathLike, formats: Iterable[str] = ("json", "csv")) -> List[Path]:
    """
    inventory.json, one eigenfunction CSV per eigenpair and the
    classification table.
    """
    out = Path(out_dir)
    formats = tuple(formats)
    written = []
    if "json" in formats:
        written.append(write_json(inventory_to_dict(inv), out / "inventory.json"))
    if "csv" in formats:
        xs = np.linspace(inv.problem.a, inv.problem.b, EIGENFUNCTION_SAMPLES)
        for k, e in enumerate(inv.pairs):
            path = out / "eigenfunctions" / f"eig_{k:03d}.csv"
            path.parent.mkdir(parents=True, exist_ok=True)
            trajectory_frame(e.eigenfunction, xs).to_csv(path, index=False, float_format="%.17g")
            written.append(path)
    tables = [f for f in formats if f in TABLE_FORMATS]
    written.extend(write_table(classification_frame(inv.pairs), out / "classification", tables))
    logger.info(f"Wrote {len(written)} files to {out}")
    return written


def checks_frame(records: Sequence[CheckRecord]) -> pd.DataFrame:
    return pd.DataFrame(
        [(r.name, r.lhs, r.rhs, r.passed, r.status.value, r.note) for r in records],
        columns=CHECK_COLUMNS,
    )


def index_report_to_dict(rep: IndexReport) -> Dict[str, Any]:
    return {
        "side": rep.side.value,
        "n_R": rep.n_R,
        "n_H": rep.n_H,
        "Lambda_R": rep.Lambda_R,
        "Lambda_H": rep.Lambda_H,
        "m_pairs": rep.m_pairs,
        "n_deg": rep.n_deg,
        "stability_margin": rep.stability_margin,
        "window_too_small": rep.window_too_small,
        "profile": {str(n): list(values) for n, values in rep.profile.entries.items()},
        "checks": [
            {"name": r.name, "lhs": r.lhs, "rhs": r.rhs, "passed": r.passed, "status": r.status.value, "note": r.note}
            for r in rep.checks
        ],
    }


def write_index_report(rep: IndexReport, out_dir: PathLike, formats: Iterable[str] = ("json", "csv")) -> List[Path]:
    out = Path(out_dir)
    formats = tuple(formats)
    written = []
    if "json" in formats:
        written.append(write_json(index_report_to_dict(rep), out / "indices.json"))
    tables = [f for f in formats if f in TABLE_FORMATS]
    written.extend(write_table(checks_frame(rep.checks), out / "checks", tables))
    return written


def format_table(df: pd.DataFrame) -> str:
    """Human-readable table for standard output"""
    if df.empty:
        return "(empty)\n"
    return df.to_string(index=False, float_format=lambda v: f"{v:.10g}") + "\n"
