"""
Weighted and Dirichlet quadratic forms of eigenfunctions, and the
minimum-principle gap for multiplied eigenfunctions.

Derivatives always come from the integrated py' state: y' = (py')/p.
"""
from dataclasses import dataclass
import math
from typing import Callable, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial
from scipy.interpolate import CubicSpline, PPoly

from ..coefficients.problem import Problem
from ..shooting.shoot import phase_grid
from ..spectrum.eigenpair import Eigenpair

FORM_PHASE_STEP = math.pi / 16
GAUSS_ORDER = 8


@dataclass(frozen=True)
class FormValues:
    """
    Attributes:
        weighted_sq: ∫ φ² w (complex for complex φ)
        weighted_abs: ∫ |φ|² w
        dirichlet: ∫ p|φ'|² + q|φ|²
        norm: ∫ |φ|²
        scale: ∫ |φ|² |w|, the reference for relative degeneracy tests
        quadrature_error: Largest change between the N- and 2N-panel rules
    """
    weighted_sq: complex
    weighted_abs: float
    dirichlet: float
    norm: float
    scale: float
    quadrature_error: float

    @property
    def relative_weighted_sq(self) -> float:
        return abs(self.weighted_sq) / self.scale if self.scale > 0 else math.inf


@dataclass(frozen=True)
class FormGap:
    value: float
    error: float


def composite_rule(edges: np.ndarray, order: int = GAUSS_ORDER) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on every panel [edges[k], edges[k+1]]"""
    t, wt = np.polynomial.legendre.leggauss(order)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = 0.5 * (hi - lo)
    nodes = (0.5 * (lo + hi) + half * t).ravel()
    weights = (half * wt).ravel()
    return nodes, weights


def _halved(edges: np.ndarray) -> np.ndarray:
    mids = 0.5 * (edges[:-1] + edges[1:])
    out = np.empty(2 * len(edges) - 1)
    out[0::2] = edges
    out[1::2] = mids
    return out


def _coefficients(prob: Problem, x: np.ndarray):
    """p, q, w at quadrature nodes; nodes never sit on breakpoints"""
    return prob.p(x), prob.q(x), prob.w(x)


def _forms_on(prob: Problem, e: Eigenpair, edges: np.ndarray) -> np.ndarray:
    x, wt = composite_rule(edges)
    y, py = e.eigenfunction.sample(x)
    p, q, w = _coefficients(prob, x)
    abs2 = np.abs(y) ** 2
    return np.array([
        np.sum(wt * y * y * w),
        np.sum(wt * abs2 * w),
        np.sum(wt * (np.abs(py) ** 2 / p + q * abs2)),
        np.sum(wt * abs2),
        np.sum(wt * abs2 * np.abs(w)),
    ])


def form_values(prob: Problem, e: Eigenpair) -> FormValues:
    """
    Quadratic forms of the (normalized) eigenfunction of e.

    Composite 8-point Gauss-Legendre on panels whose edges include every
    breakpoint, at N and 2N panels; the 2N values are reported together with
    the largest difference as the error estimate.
    """
    edges = phase_grid(prob, e.lam, FORM_PHASE_STEP)
    coarse = _forms_on(prob, e, edges)
    fine = _forms_on(prob, e, _halved(edges))
    error = float(np.max(np.abs(fine - coarse)))
    weighted_sq = complex(fine[0])
    if e.is_real:
        weighted_sq = complex(weighted_sq.real, 0.0)
    return FormValues(
        weighted_sq=weighted_sq,
        weighted_abs=float(fine[1].real),
        dirichlet=float(fine[2].real),
        norm=float(fine[3].real),
        scale=float(fine[4].real),
        quadrature_error=error,
    )


Multiplier = Union[float, Polynomial, PPoly, Tuple[Sequence[float], Sequence[float]]]


def as_multiplier(eta: Multiplier) -> Tuple[Callable, Callable]:
    """
    (η, η') callables from a constant, a numpy Polynomial, a scipy PPoly
    (e.g. CubicSpline) or samples (xs, values) interpolated by a cubic spline.
    """
    if isinstance(eta, (int, float)):
        c = float(eta)
        return (lambda x: np.full(np.shape(x), c)), (lambda x: np.zeros(np.shape(x)))
    if isinstance(eta, Polynomial):
        return eta, eta.deriv()
    if isinstance(eta, PPoly):
        return eta, eta.derivative()
    xs, values = eta
    spline = CubicSpline(np.asarray(xs, dtype=float), np.asarray(values, dtype=float))
    return spline, spline.derivative()


def quadratic_form_gap(prob: Problem, e: Eigenpair, eta: Multiplier) -> FormGap:
    """
    ∫ p|φ'|² + q|φ|² - λ ∫ |φ|² w for φ = u η.

    Nonnegative up to quadrature error for real eigenpairs, zero for
    constant η; the value equals ∫ p u² η'².

    Raises:
        ValueError: e is not real
    """
    if not e.is_real:
        raise ValueError(f"The form gap needs a real eigenpair, got {e.lam}")
    f, df = as_multiplier(eta)
    lam = e.lam.real
    edges = phase_grid(prob, e.lam, FORM_PHASE_STEP)

    def gap_on(panel_edges: np.ndarray) -> float:
        x, wt = composite_rule(panel_edges)
        u, pu = e.eigenfunction.sample(x)
        u, pu = u.real, pu.real
        p, q, w = _coefficients(prob, x)
        eta_x, deta_x = np.asarray(f(x), dtype=float), np.asarray(df(x), dtype=float)
        phi = u * eta_x
        dphi = pu / p * eta_x + u * deta_x
        return float(np.sum(wt * (p * dphi ** 2 + q * phi ** 2 - lam * w * phi ** 2)))

    coarse = gap_on(edges)
    fine = gap_on(_halved(edges))
    # rounding of the cancelling terms and the boundary term left by u(b) != 0
    x, wt = composite_rule(_halved(edges))
    u, _ = e.eigenfunction.sample(x)
    magnitude = float(np.sum(wt * np.abs(u.real) ** 2 * (np.abs(prob.q(x)) + abs(lam) * np.abs(prob.w(x)))))
    u_b, pu_b = e.eigenfunction.sample(np.array([prob.b]))
    boundary = abs(float(f(np.array([prob.b]))[0]) ** 2 * u_b[0].real * pu_b[0].real)
    error = abs(fine - coarse) + 1e-10 * (1.0 + magnitude) + boundary
    return FormGap(value=fine, error=error)
