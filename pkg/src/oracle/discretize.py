"""
Finite-volume discretization of -(p y')' + q y = λ w y to a pencil (A, W).

Uniform mesh x_i = a + i h with N = n_interior + 1 cells. Every primal cell
[x_i, x_{i+1}] carries the harmonic mean of p, every interior node the
dual-cell averages of q and w over [x_i - h/2, x_i + h/2]:

    A_ii     = (p̄_{i-1} + p̄_i) / h² + q̄_i
    A_i,i+1  = -p̄_i / h²
    W_ii     = w̄_i

A node whose dual average of w vanishes (w changes sign there) carries no
λ term; it is condensed out by a Schur complement, which keeps A symmetric
tridiagonal on the remaining nodes.
"""
from dataclasses import dataclass
import logging
from pathlib import Path
from typing import List, Union

import numpy as np

from ..coefficients.problem import Problem
from ..errors import MeshAlignmentError, NotSupportedError

logger = logging.getLogger(__name__)

W_EPS = 1e-12
GAUSS_POINTS = 16
MIN_INTERIOR = 3


@dataclass(frozen=True, eq=False)
class DiscreteOperator:
    """
    Attributes:
        nodes: Interior nodes kept after condensation
        diag: Diagonal of A
        off: First off-diagonal of A (length len(nodes) - 1)
        weights: Diagonal of W
        h: Mesh width
        n_interior: Interior nodes of the mesh before condensation
        condensed: Nodes removed by the Schur complement
    """
    nodes: np.ndarray
    diag: np.ndarray
    off: np.ndarray
    weights: np.ndarray
    h: float
    n_interior: int
    condensed: tuple = ()

    def __post_init__(self):
        n = len(self.nodes)
        if len(self.diag) != n or len(self.weights) != n or len(self.off) != max(n - 1, 0):
            raise ValueError("Inconsistent pencil dimensions")

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def A(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)

    @property
    def W(self) -> np.ndarray:
        return np.diag(self.weights)

    def pencil_matrix(self) -> np.ndarray:
        """M = W⁻¹ A"""
        return self.A / self.weights[:, None]


def _harmonic_p(prob: Problem, lo: float, hi: float) -> float:
    """h / ∫ dx/p over [lo, hi], exact for constant p"""
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_POINTS)
    total = 0.0
    cuts = [lo] + [x for x in prob.p.breakpoints if lo < x < hi] + [hi]
    for x0, x1 in zip(cuts[:-1], cuts[1:]):
        x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * nodes
        total += 0.5 * (x1 - x0) * float(np.dot(weights, 1.0 / prob.p(x)))
    return (hi - lo) / total


def _check_alignment(prob: Problem, n_cells: int) -> None:
    """Every interior breakpoint must be a node or a primal-cell midpoint"""
    h = (prob.b - prob.a) / n_cells
    for x in prob.breakpoints[1:-1]:
        t = (x - prob.a) / h
        if abs(2.0 * t - round(2.0 * t)) > 1e-9 * n_cells:
            raise MeshAlignmentError(
                f"Breakpoint {x} is neither a node nor a cell midpoint of the {n_cells}-cell mesh"
            )


def discretize(prob: Problem, n_interior: int) -> DiscreteOperator:
    """
    Pencil of the problem on a uniform mesh with n_interior interior nodes.

    Raises:
        NotSupportedError: w vanishes on a segment, or on two adjacent dual cells
        MeshAlignmentError: A breakpoint is off the mesh
    """
    if n_interior < MIN_INTERIOR:
        raise ValueError(f"n_interior must be >= {MIN_INTERIOR}, got {n_interior}")
    if prob.w.vanishes_on_interval():
        raise NotSupportedError("The oracle needs w != 0 almost everywhere; w vanishes on a segment")

    n_cells = n_interior + 1
    _check_alignment(prob, n_cells)
    h = (prob.b - prob.a) / n_cells
    x = prob.a + h * np.arange(n_cells + 1)

    p_bar = np.array([_harmonic_p(prob, x[i], x[i + 1]) for i in range(n_cells)])
    interior = x[1:-1]
    q_bar = np.array([prob.q.integrate(xi - 0.5 * h, xi + 0.5 * h) / h for xi in interior])
    w_bar = np.array([prob.w.integrate(xi - 0.5 * h, xi + 0.5 * h) / h for xi in interior])
    w_scale = float(np.max(np.abs(w_bar)))

    diag = (p_bar[:-1] + p_bar[1:]) / h ** 2 + q_bar
    off = -p_bar[1:-1] / h ** 2

    zero = np.abs(w_bar) <= W_EPS * max(w_scale, 1.0)
    if np.any(zero[:-1] & zero[1:]):
        raise NotSupportedError("w averages to zero on two adjacent dual cells")
    if not np.any(zero):
        return DiscreteOperator(interior, diag, off, w_bar, h, n_interior)

    diag, off = _condense(diag, off, zero)
    logger.debug(f"{prob.name}: condensed {int(zero.sum())} nodes at {interior[zero].tolist()}")
    return DiscreteOperator(
        interior[~zero], diag, off, w_bar[~zero], h, n_interior, condensed=tuple(interior[zero].tolist())
    )


def _condense(diag: np.ndarray, off: np.ndarray, zero: np.ndarray):
    """Schur complement of A onto the nodes where zero is False (no two zeros adjacent)"""
    diag = diag.copy()
    off = off.copy()
    n = len(diag)
    # coupling between the neighbours of an eliminated node
    bridge = {}
    for k in np.flatnonzero(zero):
        pivot = diag[k]
        if abs(pivot) <= W_EPS * (abs(diag).max() + 1.0):
            raise NotSupportedError(f"Singular pivot while condensing node {k}")
        left = off[k - 1] if k > 0 else 0.0
        right = off[k] if k < n - 1 else 0.0
        if k > 0:
            diag[k - 1] -= left * left / pivot
        if k < n - 1:
            diag[k + 1] -= right * right / pivot
        if 0 < k < n - 1:
            bridge[k] = -left * right / pivot

    keep = np.flatnonzero(~zero)
    new_off: List[float] = []
    for i, j in zip(keep[:-1], keep[1:]):
        new_off.append(off[i] if j == i + 1 else bridge[i + 1])
    return diag[keep], np.array(new_off)


def dump_pencil(dop: DiscreteOperator, stem: Union[str, Path]) -> List[Path]:
    """Write A and the diagonal of W as plain text matrices (<stem>_A.txt, <stem>_W.txt)"""
    stem = Path(stem)
    stem.parent.mkdir(parents=True, exist_ok=True)
    a_path = stem.parent / f"{stem.name}_A.txt"
    w_path = stem.parent / f"{stem.name}_W.txt"
    np.savetxt(a_path, dop.A, fmt="%.17g")
    np.savetxt(w_path, dop.weights, fmt="%.17g")
    return [a_path, w_path]
