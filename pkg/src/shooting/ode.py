"""
First-order system for the shooting problem and its λ-derivative.

State (complex, packed as 8 reals):
    y, u = p y', v = ∂y/∂λ, t = p v'
with
    y' = u / p,  u' = (q - λ w) y,  v' = t / p,  t' = (q - λ w) v - w y
"""
import logging
from typing import Tuple

import numpy as np
from scipy.integrate import solve_ivp

from ..coefficients.problem import Cell
from ..errors import IntegrationError

logger = logging.getLogger(__name__)

METHOD = "DOP853"


def pack(state: np.ndarray) -> np.ndarray:
    """Complex 4-vector -> interleaved real 8-vector"""
    out = np.empty(8)
    out[0::2] = state.real
    out[1::2] = state.imag
    return out


def unpack(packed: np.ndarray) -> np.ndarray:
    """Interleaved real 8-vector (or 8 x m array) -> complex 4-vector (or 4 x m)"""
    return packed[0::2] + 1j * packed[1::2]


def _rhs(x: float, s: np.ndarray, cell: Cell, lam: complex) -> np.ndarray:
    p = cell.p.evaluate(x)
    q = cell.q.evaluate(x)
    w = cell.w.evaluate(x)
    y, u, v, t = unpack(s)
    k = q - lam * w
    return pack(np.array([u / p, k * y, t / p, k * v - w * y]))


def integrate_cell(
    cell: Cell,
    lam: complex,
    state: np.ndarray,
    rtol: float,
    dense_output: bool = False,
    reverse: bool = False,
):
    """
    Integrate across one cell with an adaptive 8(5,3) Runge-Kutta pair.

    Args:
        cell: Cell with coefficient segments
        lam: Spectral parameter
        state: Complex (y, u, v, t) at cell.lo (at cell.hi when reverse)
        rtol: Relative local error target
        dense_output: Keep the continuous extension
        reverse: Integrate from cell.hi down to cell.lo

    Returns:
        (state at the far end, scipy OdeResult)

    Raises:
        IntegrationError: Step-size underflow or any other solver failure
    """
    span = (cell.hi, cell.lo) if reverse else (cell.lo, cell.hi)
    sol = solve_ivp(
        _rhs,
        span,
        pack(np.asarray(state, dtype=complex)),
        method=METHOD,
        rtol=rtol,
        atol=rtol * 1e-2,
        dense_output=dense_output,
        args=(cell, complex(lam)),
    )
    if sol.status != 0:
        x_fail = float(sol.t[-1]) if len(sol.t) else span[0]
        raise IntegrationError(
            f"Integration failed at x={x_fail} for lambda={lam}: {sol.message}", x=x_fail, lam=lam
        )
    logger.debug(f"Cell [{cell.lo}, {cell.hi}] at lambda={lam}: {sol.nfev} evaluations")
    return unpack(sol.y[:, -1]), sol


def initial_state() -> np.ndarray:
    """y(a) = 0, (py')(a) = 1, v(a) = 0, (pv')(a) = 0"""
    return np.array([0.0, 1.0, 0.0, 0.0], dtype=complex)


def terminal_state() -> np.ndarray:
    """y(b) = 0, (py')(b) = 1 for inward integration; the λ-derivative pair is unused"""
    return np.array([0.0, 1.0, 0.0, 0.0], dtype=complex)


def state_pair(state: np.ndarray) -> Tuple[complex, complex]:
    """(D, D') read from the state at b"""
    return complex(state[0]), complex(state[2])
