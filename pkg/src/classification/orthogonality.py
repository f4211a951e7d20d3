"""
Orthogonality identities between eigenfunctions of a non-definite problem.

For eigenpairs (λ1, φ1), (λ2, φ2):

    bilinear                  ∫ φ1 φ2 w = 0                          if λ1 != λ2
    sesquilinear              ∫ φ1 conj(φ2) w = 0                    if λ1 != conj(λ2)
    dirichlet_sesquilinear    ∫ p φ1' conj(φ2') + q φ1 conj(φ2) = 0  if λ1 != conj(λ2)

The sesquilinear kinds include φ1 = φ2 for non-real λ, where they state
∫|φ|²w = 0 and ∫ p|φ'|² + q|φ|² = 0. Every residual is |integral| divided by
the product of the unweighted L² norms.
"""
from dataclasses import dataclass
import logging
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from ..coefficients.problem import Problem
from ..shooting.shoot import phase_grid
from ..spectrum.eigenpair import Eigenpair
from ..spectrum.inventory import SpectralInventory
from .forms import FORM_PHASE_STEP, composite_rule

logger = logging.getLogger(__name__)

RESIDUAL_KINDS = ("bilinear", "sesquilinear", "dirichlet_sesquilinear")
RESIDUAL_COLUMNS = ["kind", "i", "j", "lambda_i", "lambda_j", "residual"]


@dataclass(frozen=True)
class ResidualRecord:
    kind: str
    i: int
    j: int
    lambda_i: complex
    lambda_j: complex
    residual: float


@dataclass(frozen=True)
class OrthogonalityReport:
    """Residual records and the eigenvalues they index"""
    eigenvalues: tuple
    records: tuple

    def matrix(self, kind: str) -> np.ndarray:
        """Residuals of one kind as a symmetric-index matrix (NaN where not applicable)"""
        n = len(self.eigenvalues)
        out = np.full((n, n), np.nan)
        for r in self.records:
            if r.kind == kind:
                out[r.i, r.j] = r.residual
                out[r.j, r.i] = r.residual
        return out

    def max_residual(self, kind: Optional[str] = None) -> float:
        values = [r.residual for r in self.records if kind is None or r.kind == kind]
        return max(values) if values else 0.0

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(r.kind, r.i, r.j, r.lambda_i, r.lambda_j, r.residual) for r in self.records],
            columns=RESIDUAL_COLUMNS,
        )


def _distinct(a: complex, b: complex, scale: float) -> bool:
    return abs(a - b) > 1e-8 * (1.0 + scale)


def orthogonality_residuals(prob: Problem, inv: SpectralInventory) -> OrthogonalityReport:
    """All applicable orthogonality residuals of an inventory"""
    return pair_residuals(prob, inv.pairs)


def pair_residuals(prob: Problem, pairs: Sequence[Eigenpair]) -> OrthogonalityReport:
    pairs = list(pairs)
    if not pairs:
        return OrthogonalityReport((), ())

    # the densest phase grid resolves every eigenfunction of the set
    edges = max((phase_grid(prob, e.lam, FORM_PHASE_STEP) for e in pairs), key=len)
    x, wt = composite_rule(edges)
    p, q, w = prob.p(x), prob.q(x), prob.w(x)
    samples = [e.eigenfunction.sample(x) for e in pairs]
    ys = np.array([s[0] for s in samples])
    ds = np.array([s[1] for s in samples]) / p
    norms = np.sqrt(np.sum(wt * np.abs(ys) ** 2, axis=1))

    records: List[ResidualRecord] = []
    for i, ei in enumerate(pairs):
        for j in range(i, len(pairs)):
            ej = pairs[j]
            scale = max(abs(ei.lam), abs(ej.lam))
            denom = norms[i] * norms[j]
            if j > i and _distinct(ei.lam, ej.lam, scale):
                value = abs(np.sum(wt * ys[i] * ys[j] * w)) / denom
                records.append(ResidualRecord("bilinear", i, j, ei.lam, ej.lam, float(value)))
            if _distinct(ei.lam, np.conj(ej.lam), scale):
                conj_j = np.conj(ys[j])
                weighted = abs(np.sum(wt * ys[i] * conj_j * w)) / denom
                dirichlet = abs(np.sum(wt * (p * ds[i] * np.conj(ds[j]) + q * ys[i] * conj_j))) / denom
                records.append(ResidualRecord("sesquilinear", i, j, ei.lam, ej.lam, float(weighted)))
                records.append(ResidualRecord("dirichlet_sesquilinear", i, j, ei.lam, ej.lam, float(dirichlet)))

    report = OrthogonalityReport(tuple(e.lam for e in pairs), tuple(records))
    logger.info(f"{prob.name}: {len(records)} orthogonality residuals, max {report.max_residual():.2e}")
    return report
