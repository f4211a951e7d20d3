"""
Parameter sweep of the constant potential of P1.

Emits one row per eigenvalue per q (trajectory table) and a collision table
listing where two real eigenvalues meet and leave the real axis (or come
back).
"""
from concurrent.futures import ProcessPoolExecutor
import logging
import sys
from typing import Dict, List, Sequence, TextIO, Tuple

import numpy as np
import pandas as pd

from ..data.writers import format_table, write_table
from .commands import solve_inventory
from .config import RunConfig

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["q", "kind", "lambda_re", "lambda_im", "osc_count", "class", "relative_weighted_sq"]
COLLISION_COLUMNS = ["q_lo", "q_hi", "direction", "lambda_a", "lambda_b", "distance"]


def sweep_values(qmin: float, qmax: float, step: float) -> np.ndarray:
    if step <= 0 or qmax < qmin:
        raise ValueError(f"Invalid sweep range [{qmin}, {qmax}] with step {step}")
    count = int(np.floor((qmax - qmin) / step + 1e-9)) + 1
    return qmin + step * np.arange(count)


def sweep_point(config: RunConfig) -> List[Dict]:
    """Eigenvalue rows for one potential value"""
    inv = solve_inventory(config)
    rows = []
    for e in inv.real_pairs + inv.complex_pairs:
        rows.append({
            "q": config.q,
            "kind": "real" if e.is_real else "complex",
            "lambda_re": float(e.lam.real),
            "lambda_im": float(e.lam.imag),
            "osc_count": e.osc_count if e.osc_count is not None else -1,
            "class": e.ghost_class.label if e.ghost_class is not None else "",
            "relative_weighted_sq": e.forms.relative_weighted_sq if e.forms is not None else float("nan"),
        })
    if not inv.is_certified:
        logger.warning(f"q={config.q}: certificate mismatch, rows may be incomplete")
    return rows


def _closest_adjacent(values: Sequence[float]) -> Tuple[float, float, float]:
    values = sorted(values)
    if len(values) < 2:
        return float("nan"), float("nan"), float("inf")
    gaps = np.diff(values)
    k = int(np.argmin(gaps))
    return values[k], values[k + 1], float(gaps[k])


def collisions(trajectory: pd.DataFrame) -> pd.DataFrame:
    """
    A collision lies between consecutive q values where the number of
    non-real eigenvalues changes; the colliding pair is the closest adjacent
    real pair on the side where it is still real.
    """
    rows = []
    qs = sorted(trajectory["q"].unique())
    for q_lo, q_hi in zip(qs[:-1], qs[1:]):
        lo = trajectory[trajectory["q"] == q_lo]
        hi = trajectory[trajectory["q"] == q_hi]
        n_lo = int((lo["kind"] == "complex").sum())
        n_hi = int((hi["kind"] == "complex").sum())
        if n_lo == n_hi:
            continue
        real_side = lo if n_hi > n_lo else hi
        a, b, distance = _closest_adjacent(real_side.loc[real_side["kind"] == "real", "lambda_re"].tolist())
        rows.append({
            "q_lo": q_lo,
            "q_hi": q_hi,
            "direction": "real_to_complex" if n_hi > n_lo else "complex_to_real",
            "lambda_a": a,
            "lambda_b": b,
            "distance": distance,
        })
    return pd.DataFrame(rows, columns=COLLISION_COLUMNS)


def sweep(config: RunConfig, qs: Sequence[float]) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """
    Run every q in a worker pool. Rows come out ordered by q whatever the
    completion order.
    """
    configs = [config.model_copy(update={"fixture": "P1", "q": float(q)}) for q in qs]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(sweep_point, configs))
    else:
        results = [sweep_point(c) for c in configs]
    trajectory = pd.DataFrame([row for rows in results for row in rows], columns=SWEEP_COLUMNS)
    trajectory = trajectory.sort_values(["q", "kind", "lambda_re", "lambda_im"], kind="stable").reset_index(drop=True)
    found = collisions(trajectory)
    logger.info(f"Sweep over {len(qs)} values of q: {len(trajectory)} rows, {len(found)} collisions")
    return trajectory, found


def cmd_sweep(config: RunConfig, qs: Sequence[float], out: TextIO = sys.stdout) -> int:
    trajectory, found = sweep(config, qs)
    tables = [f for f in config.formats if f in ("csv", "parquet")] or ["csv"]
    write_table(trajectory, config.output_dir / "sweep", tables)
    write_table(found, config.output_dir / "collisions", tables)
    out.write(f"{len(qs)} values of q, {len(trajectory)} eigenvalue rows\n")
    out.write(format_table(found))
    return 0
