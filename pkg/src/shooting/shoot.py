"""
Full shooting trajectories with dense output.
"""
from dataclasses import dataclass, field, replace
import logging
import math
from typing import List, Tuple

import numpy as np

from ..coefficients.problem import Cell, Problem
from .ode import initial_state, integrate_cell, terminal_state, unpack

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ShotSolution:
    """
    One integration of the initial value problem at a fixed λ.

    The raw shot satisfies y(a) = 0 and (py')(a) = 1. A normalized copy
    (see `normalized`) multiplies y and py' by `scale`; D and D_prime always
    refer to the raw shot.

    Eigenfunction shots (see `eigenfunction_shot`) switch to an inward
    solution beyond `match`, rescaled to join the outward one there.

    Attributes:
        problem: Problem that was integrated
        lam: Spectral parameter
        grid: Accepted step points, including a, b and every breakpoint
        y: y on grid (scaled)
        py_prime: p y' on grid (scaled)
        D: y(b) of the raw shot
        D_prime: ∂y(b)/∂λ of the raw shot
        tol: Local error target used
        scale: Normalization factor applied to y and py_prime
        match: Point where the inward solution takes over (b for outward shots)
    """
    problem: Problem
    lam: complex
    grid: np.ndarray
    y: np.ndarray
    py_prime: np.ndarray
    D: complex
    D_prime: complex
    tol: float
    scale: complex = 1.0
    match: float = math.inf
    pieces: Tuple = field(default=(), repr=False, compare=False)

    @property
    def is_real(self) -> bool:
        return self.lam.imag == 0.0

    def sample(self, xs) -> Tuple[np.ndarray, np.ndarray]:
        """
        Evaluate (y, py') at arbitrary points of [a, b] from the dense output.

        At interior breakpoints the cell to the right is used; both one-sided
        values agree because y and py' are continuous.
        """
        xs = np.asarray(xs, dtype=float)
        flat = xs.ravel()
        edges = np.array([lo for lo, _, _, _ in self.pieces] + [self.pieces[-1][1]])
        idx = np.clip(np.searchsorted(edges, flat, side="right") - 1, 0, len(self.pieces) - 1)
        y = np.empty(flat.shape, dtype=complex)
        py = np.empty(flat.shape, dtype=complex)
        for i, (lo, hi, dense, factor) in enumerate(self.pieces):
            mask = idx == i
            if not np.any(mask):
                continue
            values = unpack(dense(np.clip(flat[mask], lo, hi))) * factor
            y[mask] = values[0]
            py[mask] = values[1]
        y *= self.scale
        py *= self.scale
        if self.is_real:
            y = y.real + 0j
            py = py.real + 0j
        return y.reshape(xs.shape), py.reshape(xs.shape)

    def normalized(self, max_phase_step: float = math.pi / 16) -> "ShotSolution":
        """
        Copy scaled so that max|y| = 1, dividing by the sample of largest modulus.

        Real shots stay real; complex shots get a fixed phase.
        """
        xs = phase_grid(self.problem, self.lam, max_phase_step)
        y, _ = self.sample(xs)
        k = int(np.argmax(np.abs(y)))
        peak = complex(y[k]) / self.scale
        factor = 1.0 / peak
        if self.is_real:
            factor = complex(factor.real, 0.0)
        return replace(
            self,
            scale=factor,
            y=self.y / self.scale * factor,
            py_prime=self.py_prime / self.scale * factor,
        )


def _cell_phase_rate(cell: Cell, lam: complex) -> float:
    """Upper bound on |θ'| = |cos²θ/p + (λw - q) sin²θ| for the Prüfer angle θ"""
    xs = np.linspace(cell.lo, cell.hi, 9)
    p = np.asarray(cell.p.evaluate(xs), dtype=float)
    q = np.asarray(cell.q.evaluate(xs), dtype=float)
    w = np.asarray(cell.w.evaluate(xs), dtype=float)
    rate = float(np.max(1.0 / p) + np.max(np.abs(lam * w - q)))
    if not cell.is_constant:
        rate *= 1.25
    return rate


def phase_grid(prob: Problem, lam: complex, max_phase_step: float) -> np.ndarray:
    """
    Sample points on [a, b] such that the Prüfer angle moves less than
    max_phase_step between neighbours. Contains every breakpoint.
    """
    parts: List[np.ndarray] = []
    for cell in prob.cells:
        n = max(8, int(math.ceil(cell.length * _cell_phase_rate(cell, lam) / max_phase_step)))
        parts.append(np.linspace(cell.lo, cell.hi, n + 1)[:-1])
    parts.append(np.array([prob.b]))
    return np.concatenate(parts)


def shoot(prob: Problem, lam: complex, tol: float = DEFAULT_TOL) -> ShotSolution:
    """
    Integrate (y, py') and the variational pair (v, pv') from a to b.

    The integrator restarts at every breakpoint so no step straddles a
    coefficient discontinuity.

    Args:
        prob: Problem
        lam: Spectral parameter (complex allowed)
        tol: Local error target, > 0

    Returns:
        ShotSolution with dense output

    Raises:
        ValueError: tol not positive
        IntegrationError: Step-size underflow, with the failing location
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    lam = complex(lam)
    state = initial_state()
    grids, ys, pys, pieces = [], [], [], []
    for i, cell in enumerate(prob.cells):
        state, sol = integrate_cell(cell, lam, state, rtol=tol, dense_output=True)
        values = unpack(sol.y)
        keep = slice(None) if i == len(prob.cells) - 1 else slice(None, -1)
        grids.append(sol.t[keep])
        ys.append(values[0][keep])
        pys.append(values[1][keep])
        pieces.append((cell.lo, cell.hi, sol.sol, 1.0))

    D, D_prime = complex(state[0]), complex(state[2])
    if lam.imag == 0.0:
        D, D_prime = complex(D.real, 0.0), complex(D_prime.real, 0.0)
    return ShotSolution(
        problem=prob,
        lam=lam,
        grid=np.concatenate(grids),
        y=np.concatenate(ys),
        py_prime=np.concatenate(pys),
        D=D,
        D_prime=D_prime,
        tol=tol,
        match=prob.b,
        pieces=tuple(pieces),
    )


def is_evanescent(cell: Cell, lam: complex) -> bool:
    """Re(λ) w - q < 0 on the whole cell: no oscillation, solutions grow or decay exponentially"""
    xs = np.linspace(cell.lo, cell.hi, 9)
    q = np.asarray(cell.q.evaluate(xs), dtype=float)
    w = np.asarray(cell.w.evaluate(xs), dtype=float)
    return bool(np.max(complex(lam).real * w - q) < 0.0)


def matching_point(prob: Problem, lam: complex) -> float:
    """
    Last classical turning point: left end of the trailing run of evanescent cells.

    Returns b when the last cell oscillates, or when every cell is evanescent.
    """
    cells = prob.cells
    k = len(cells)
    while k > 0 and is_evanescent(cells[k - 1], lam):
        k -= 1
    if k == 0 or k == len(cells):
        return prob.b
    return cells[k].lo


def eigenfunction_shot(prob: Problem, lam: complex, tol: float = DEFAULT_TOL) -> ShotSolution:
    """
    Shot suitable for an eigenfunction: outward from a up to the matching
    point, inward from b beyond it, the inward part rescaled to agree with
    the outward one at the matching point.

    Integrating outward into a trailing evanescent region amplifies the
    growing solution; the inward solution decays toward b instead. D and
    D_prime are those of the outward shot over the whole interval.
    """
    outward = shoot(prob, lam, tol)
    x_m = matching_point(prob, lam)
    if x_m == prob.b:
        return outward

    lam = complex(lam)
    tail = [cell for cell in prob.cells if cell.lo >= x_m]
    state = terminal_state()
    inward = []
    for cell in reversed(tail):
        state, sol = integrate_cell(cell, lam, state, rtol=tol, dense_output=True, reverse=True)
        inward.append((cell, sol))
    inward.reverse()

    y_l, u_l = outward.sample(np.array([x_m]))
    y_l, u_l = complex(y_l[0]), complex(u_l[0])
    y_r, u_r = complex(state[0]), complex(state[1])
    # least-squares fit of (y, py') so a near-zero y at the matching point is harmless
    factor = (y_r.conjugate() * y_l + u_r.conjugate() * u_l) / (abs(y_r) ** 2 + abs(u_r) ** 2)
    logger.debug(f"lambda={lam}: matching at x={x_m}, inward factor {factor:.3e}")

    head = outward.grid < x_m
    grids, ys, pys = [outward.grid[head]], [outward.y[head]], [outward.py_prime[head]]
    pieces = [piece for piece in outward.pieces if piece[1] <= x_m]
    for cell, sol in inward:
        values = unpack(sol.y[:, ::-1]) * factor
        t = sol.t[::-1]
        keep = slice(None) if cell.hi == prob.b else slice(None, -1)
        grids.append(t[keep])
        ys.append(values[0][keep])
        pys.append(values[1][keep])
        pieces.append((cell.lo, cell.hi, sol.sol, factor))
    return replace(
        outward,
        grid=np.concatenate(grids),
        y=np.concatenate(ys),
        py_prime=np.concatenate(pys),
        match=x_m,
        pieces=tuple(pieces),
    )
