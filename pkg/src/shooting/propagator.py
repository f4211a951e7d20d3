"""
Characteristic function D(λ) = y(b; λ) and its λ-derivative.

Cells with constant p, q, w are crossed with the exact transfer matrix of the
constant-coefficient system, vectorized over λ. With z = (λw - q)/p, c =
cos(√z h) and s = sin(√z h)/√z the matrix acting on (y, py') is

    T = [[c, s/p], [-p z s, c]]

and its λ-derivative (w/p) dT/dz supplies the variational part. Cells with
polynomial coefficients fall back to the adaptive integrator.
"""
import logging
from typing import Tuple

import numpy as np

from ..coefficients.problem import Cell, Problem
from .ode import initial_state, integrate_cell

logger = logging.getLogger(__name__)

# below this |z h²| the power series is used for c, s and ds/dz
SERIES_THRESHOLD = 1e-2
DEFAULT_RTOL = 1e-11


def transfer_kernels(z: np.ndarray, h: float):
    """
    c, s and their z-derivatives for one constant cell of length h.

    Returns:
        (c, s, dc/dz, ds/dz) as complex arrays shaped like z
    """
    z = np.asarray(z, dtype=complex)
    zh2 = z * h * h
    small = np.abs(zh2) < SERIES_THRESHOLD
    z_safe = np.where(small, 1.0, z)
    k = np.sqrt(z_safe)
    c = np.where(small, 1.0 - zh2 / 2.0 + zh2 ** 2 / 24.0 - zh2 ** 3 / 720.0, np.cos(k * h))
    s = np.where(
        small,
        h * (1.0 - zh2 / 6.0 + zh2 ** 2 / 120.0 - zh2 ** 3 / 5040.0),
        np.sin(k * h) / k,
    )
    dc = -0.5 * h * s
    ds = np.where(
        small,
        h ** 3 * (-1.0 / 6.0 + zh2 / 60.0 - zh2 ** 2 / 1680.0),
        (h * c - s) / (2.0 * z_safe),
    )
    return c, s, dc, ds


def _cross_constant_cell(cell: Cell, lams: np.ndarray, state: Tuple[np.ndarray, ...]):
    y, u, v, t = state
    p = cell.p.evaluate(cell.lo)
    q = cell.q.evaluate(cell.lo)
    w = cell.w.evaluate(cell.lo)
    z = (lams * w - q) / p
    c, s, dc, ds = transfer_kernels(z, cell.length)
    dz = w / p

    y_new = c * y + s / p * u
    u_new = -p * z * s * y + c * u
    # d/dλ (T Y) = T dY/dλ + (dT/dλ) Y
    dy = dz * (dc * y + ds / p * u)
    du = dz * (-p * (s + z * ds) * y + dc * u)
    v_new = c * v + s / p * t + dy
    t_new = -p * z * s * v + c * t + du
    return y_new, u_new, v_new, t_new


def characteristic(prob: Problem, lams, rtol: float = DEFAULT_RTOL) -> Tuple[np.ndarray, np.ndarray]:
    """
    Batch evaluation of D and ∂D/∂λ.

    Args:
        prob: Problem
        lams: Array-like of (complex) spectral parameters
        rtol: Local error target on non-constant cells

    Returns:
        (D, D_prime) complex arrays shaped like lams; exactly real for real λ
    """
    lams = np.asarray(lams, dtype=complex)
    shape = lams.shape
    lams = lams.ravel()
    y0 = initial_state()
    state = tuple(np.full(lams.shape, y0[i], dtype=complex) for i in range(4))

    for cell in prob.cells:
        if cell.is_constant:
            state = _cross_constant_cell(cell, lams, state)
            continue
        columns = [np.empty(lams.shape, dtype=complex) for _ in range(4)]
        for j, lam in enumerate(lams):
            end, _ = integrate_cell(cell, lam, np.array([s[j] for s in state]), rtol)
            for i in range(4):
                columns[i][j] = end[i]
        state = tuple(columns)

    D, D_prime = state[0], state[2]
    real = lams.imag == 0.0
    D = np.where(real, D.real + 0j, D)
    D_prime = np.where(real, D_prime.real + 0j, D_prime)
    return D.reshape(shape), D_prime.reshape(shape)


def char_fn(prob: Problem, lam: complex, rtol: float = DEFAULT_RTOL) -> Tuple[complex, complex]:
    """
    D(λ) and ∂D/∂λ at a single λ, discarding the trajectory.

    Returns:
        (D, D_prime)
    """
    D, D_prime = characteristic(prob, np.array([lam]), rtol=rtol)
    return complex(D[0]), complex(D_prime[0])


def real_characteristic(prob: Problem, lams, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """D on real λ as a float array"""
    D, _ = characteristic(prob, np.asarray(lams, dtype=float), rtol=rtol)
    return D.real
