"""
Dense non-symmetric eigensolver for the discrete pencil.

Balancing, Householder reduction to upper Hessenberg form and the Francis
double-shift QR iteration with deflation, all in real arithmetic. The
kernels work on 1-based arrays padded with a zero row and column and are
compiled with numba.
"""
import logging

import numpy as np
from numba import njit

from ..errors import QRConvergenceError
from .discretize import DiscreteOperator

logger = logging.getLogger(__name__)

RADIX = 2.0
MAX_QR_ITERATIONS = 60
TRACE_TOL = 1e-8
STATUS_OK = 0
STATUS_NO_CONVERGENCE = 1


@njit(cache=True)
def _balance(a, n):
    """Scale rows and columns by powers of RADIX until row and column norms are comparable"""
    sqrdx = RADIX * RADIX
    done = False
    while not done:
        done = True
        for i in range(1, n + 1):
            r = 0.0
            c = 0.0
            for j in range(1, n + 1):
                if j != i:
                    c += abs(a[j, i])
                    r += abs(a[i, j])
            if c != 0.0 and r != 0.0:
                g = r / RADIX
                f = 1.0
                s = c + r
                while c < g:
                    f *= RADIX
                    c *= sqrdx
                g = r * RADIX
                while c > g:
                    f /= RADIX
                    c /= sqrdx
                if (c + r) / f < 0.95 * s:
                    done = False
                    g = 1.0 / f
                    for j in range(1, n + 1):
                        a[i, j] *= g
                    for j in range(1, n + 1):
                        a[j, i] *= f


@njit(cache=True)
def _hessenberg(a, n):
    """Householder reduction to upper Hessenberg form, in place"""
    v = np.zeros(n + 1)
    for k in range(1, n - 1):
        tail = 0.0
        for i in range(k + 2, n + 1):
            tail += a[i, k] * a[i, k]
        if tail == 0.0:
            continue
        norm = np.sqrt(tail + a[k + 1, k] * a[k + 1, k])
        alpha = -norm if a[k + 1, k] >= 0.0 else norm
        for i in range(k + 1, n + 1):
            v[i] = a[i, k]
        v[k + 1] -= alpha
        vv = 0.0
        for i in range(k + 1, n + 1):
            vv += v[i] * v[i]
        if vv == 0.0:
            continue
        beta = 2.0 / vv
        # H A from the left on rows k+1..n
        for j in range(k, n + 1):
            s = 0.0
            for i in range(k + 1, n + 1):
                s += v[i] * a[i, j]
            s *= beta
            for i in range(k + 1, n + 1):
                a[i, j] -= s * v[i]
        # A H from the right on columns k+1..n
        for i in range(1, n + 1):
            s = 0.0
            for j in range(k + 1, n + 1):
                s += a[i, j] * v[j]
            s *= beta
            for j in range(k + 1, n + 1):
                a[i, j] -= s * v[j]
        for i in range(k + 2, n + 1):
            a[i, k] = 0.0


@njit(cache=True)
def _hqr(a, n, wr, wi, max_its, status):
    """
    Eigenvalues of an upper Hessenberg matrix by shifted QR.

    status receives (code, active block end, iterations) on exit.
    """
    anorm = 0.0
    for i in range(1, n + 1):
        for j in range(max(i - 1, 1), n + 1):
            anorm += abs(a[i, j])
    nn = n
    t = 0.0
    while nn >= 1:
        its = 0
        while True:
            l = 1
            for ll in range(nn, 1, -1):
                s = abs(a[ll - 1, ll - 1]) + abs(a[ll, ll])
                if s == 0.0:
                    s = anorm
                if abs(a[ll, ll - 1]) + s == s:
                    a[ll, ll - 1] = 0.0
                    l = ll
                    break
            x = a[nn, nn]
            if l == nn:
                wr[nn] = x + t
                wi[nn] = 0.0
                nn -= 1
            else:
                y = a[nn - 1, nn - 1]
                w = a[nn, nn - 1] * a[nn - 1, nn]
                if l == nn - 1:
                    p = 0.5 * (y - x)
                    q = p * p + w
                    z = np.sqrt(abs(q))
                    x += t
                    if q >= 0.0:
                        z = p + (z if p >= 0.0 else -z)
                        wr[nn - 1] = x + z
                        wr[nn] = x + z
                        if z != 0.0:
                            wr[nn] = x - w / z
                        wi[nn - 1] = 0.0
                        wi[nn] = 0.0
                    else:
                        wr[nn - 1] = x + p
                        wr[nn] = x + p
                        wi[nn - 1] = -z
                        wi[nn] = z
                    nn -= 2
                else:
                    if its == max_its:
                        status[0] = STATUS_NO_CONVERGENCE
                        status[1] = nn
                        status[2] = its
                        return
                    if its > 0 and its % 10 == 0:
                        # exceptional shift
                        t += x
                        for i in range(1, nn + 1):
                            a[i, i] -= x
                        s = abs(a[nn, nn - 1]) + abs(a[nn - 1, nn - 2])
                        x = 0.75 * s
                        y = x
                        w = -0.4375 * s * s
                    its += 1
                    m = nn - 2
                    while m >= l:
                        z = a[m, m]
                        r = x - z
                        s = y - z
                        p = (r * s - w) / a[m + 1, m] + a[m, m + 1]
                        q = a[m + 1, m + 1] - z - r - s
                        r = a[m + 2, m + 1]
                        s = abs(p) + abs(q) + abs(r)
                        p /= s
                        q /= s
                        r /= s
                        if m == l:
                            break
                        u = abs(a[m, m - 1]) * (abs(q) + abs(r))
                        v = abs(p) * (abs(a[m - 1, m - 1]) + abs(z) + abs(a[m + 1, m + 1]))
                        if u + v == v:
                            break
                        m -= 1
                    for i in range(m + 2, nn + 1):
                        a[i, i - 2] = 0.0
                        if i != m + 2:
                            a[i, i - 3] = 0.0
                    for k in range(m, nn):
                        if k != m:
                            p = a[k, k - 1]
                            q = a[k + 1, k - 1]
                            r = 0.0
                            if k != nn - 1:
                                r = a[k + 2, k - 1]
                            x = abs(p) + abs(q) + abs(r)
                            if x != 0.0:
                                p /= x
                                q /= x
                                r /= x
                        s = np.sqrt(p * p + q * q + r * r)
                        if p < 0.0:
                            s = -s
                        if s != 0.0:
                            if k == m:
                                if l != m:
                                    a[k, k - 1] = -a[k, k - 1]
                            else:
                                a[k, k - 1] = -s * x
                            p += s
                            x = p / s
                            y = q / s
                            z = r / s
                            q /= p
                            r /= p
                            for j in range(k, nn + 1):
                                p = a[k, j] + q * a[k + 1, j]
                                if k != nn - 1:
                                    p += r * a[k + 2, j]
                                    a[k + 2, j] -= p * z
                                a[k + 1, j] -= p * y
                                a[k, j] -= p * x
                            mmin = nn if nn < k + 3 else k + 3
                            for i in range(l, mmin + 1):
                                p = x * a[i, k] + y * a[i, k + 1]
                                if k != nn - 1:
                                    p += z * a[i, k + 2]
                                    a[i, k + 2] -= p * r
                                a[i, k + 1] -= p * q
                                a[i, k] -= p
            if l >= nn - 1:
                break
    status[0] = STATUS_OK


def pair_conjugates(values: np.ndarray, rel_tol: float = 1e-10) -> np.ndarray:
    """
    Make the spectrum of a real matrix exactly conjugate-symmetric: each
    upper eigenvalue is matched to the nearest lower one and both get the
    averaged real part and imaginary magnitude.
    """
    values = np.asarray(values, dtype=complex).copy()
    scale = 1.0 + np.abs(values)
    values[np.abs(values.imag) <= rel_tol * scale] = values[np.abs(values.imag) <= rel_tol * scale].real
    upper = list(np.flatnonzero(values.imag > 0))
    lower = set(np.flatnonzero(values.imag < 0).tolist())
    for i in upper:
        if not lower:
            break
        j = min(lower, key=lambda k: abs(values[k] - np.conj(values[i])))
        lower.discard(j)
        re = 0.5 * (values[i].real + values[j].real)
        im = 0.5 * (values[i].imag - values[j].imag)
        values[i] = complex(re, im)
        values[j] = complex(re, -im)
    return values


def matrix_eigenvalues(m: np.ndarray, max_iterations: int = MAX_QR_ITERATIONS) -> np.ndarray:
    """
    All eigenvalues of a real square matrix, sorted by (Re, Im).

    Raises:
        QRConvergenceError: QR stalled on an active block
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"Expected a square matrix, got shape {m.shape}")
    a = np.zeros((n + 1, n + 1))
    a[1:, 1:] = m
    _balance(a, n)
    _hessenberg(a, n)
    wr = np.zeros(n + 1)
    wi = np.zeros(n + 1)
    status = np.zeros(3, dtype=np.int64)
    _hqr(a, n, wr, wi, max_iterations, status)
    if status[0] != STATUS_OK:
        raise QRConvergenceError(
            f"QR iteration did not converge on the block ending at row {status[1]} after {status[2]} iterations",
            active_block=int(status[1]),
            iterations=int(status[2]),
        )
    values = pair_conjugates(wr[1:] + 1j * wi[1:])
    trace = float(np.trace(m))
    drift = abs(values.sum().real - trace)
    if drift > TRACE_TOL * (float(np.sum(np.abs(np.diag(m)))) + 1.0):
        logger.warning(f"Eigenvalue sum drifts from the trace by {drift:.3e}")
    order = np.lexsort((values.imag, values.real))
    return values[order]


def pencil_eigenvalues(dop: DiscreteOperator, max_iterations: int = MAX_QR_ITERATIONS) -> np.ndarray:
    """Eigenvalues of W⁻¹A"""
    values = matrix_eigenvalues(dop.pencil_matrix(), max_iterations)
    logger.debug(f"Pencil of size {dop.size}: {int(np.sum(values.imag > 0))} upper non-real eigenvalues")
    return values
