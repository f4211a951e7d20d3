"""
Unit tests for the characteristic function and shooting trajectories.
"""
import cmath
import math

import numpy as np
import pytest
from scipy.optimize import brentq

from src.coefficients.fixtures import classical_problem, sign_weight_problem, two_turning_point_problem
from src.coefficients.interval import Interval
from src.coefficients.piecewise import PiecewiseCoefficient, Polynomial
from src.coefficients.problem import Problem
from src.shooting.propagator import char_fn, characteristic, real_characteristic
from src.shooting.shoot import eigenfunction_shot, matching_point, shoot
from src.shooting.trajectory import TRAJECTORY_COLUMNS, trajectory_frame, write_trajectory_csv


def classical_D(lam: complex) -> complex:
    """y(π) for -y'' = λy, y(0) = 0, y'(0) = 1"""
    k = cmath.sqrt(lam)
    return cmath.sin(k * math.pi) / k


def two_turning_point_D(lam: complex) -> complex:
    """Closed form of D for P2: transfer across [0, 1] with w = 1, then [1, 4] with w = -1"""
    k1 = cmath.sqrt(lam + 9.0 * math.pi ** 2 / 4.0)
    k2 = cmath.sqrt(9.0 * math.pi ** 2 / 4.0 - lam)
    y1, py1 = cmath.sin(k1) / k1, cmath.cos(k1)
    return y1 * cmath.cos(3.0 * k2) + py1 * cmath.sin(3.0 * k2) / k2


def two_turning_point_condition(lam: float) -> float:
    """Zero exactly at the P2 eigenvalues above 9π²/4: sin(k1 x) on [0, 1] joined to a decaying sinh on [1, 4]"""
    k1 = math.sqrt(lam + 9.0 * math.pi ** 2 / 4.0)
    kappa = math.sqrt(lam - 9.0 * math.pi ** 2 / 4.0)
    return k1 * math.cos(k1) * math.tanh(3.0 * kappa) + kappa * math.sin(k1)


def two_turning_point_eigenfunction(lam: float, xs: np.ndarray) -> np.ndarray:
    k1 = math.sqrt(lam + 9.0 * math.pi ** 2 / 4.0)
    kappa = math.sqrt(lam - 9.0 * math.pi ** 2 / 4.0)
    tail = math.sin(k1) * np.sinh(kappa * (4.0 - xs)) / math.sinh(3.0 * kappa)
    return np.where(xs < 1.0, np.sin(k1 * xs), tail)


class TestCharacteristic:
    """Tests for D(λ) and ∂D/∂λ against closed forms"""

    def test_classical_real(self):
        D, _ = char_fn(classical_problem(), 2.0)

        assert D.real == pytest.approx(math.sin(math.sqrt(2.0) * math.pi) / math.sqrt(2.0), abs=1e-10)
        assert D.imag == 0.0

    def test_classical_complex(self):
        lam = 3.0 + 2.0j
        D, _ = char_fn(classical_problem(), lam)

        assert abs(D - classical_D(lam)) < 1e-9

    def test_classical_derivative(self):
        """∂D/∂λ = (π cos kπ / k - sin kπ / k²) / (2k)"""
        lam = 2.0
        k = math.sqrt(lam)
        expected = (math.pi * math.cos(k * math.pi) / k - math.sin(k * math.pi) / k ** 2) / (2.0 * k)
        _, D_prime = char_fn(classical_problem(), lam)

        assert D_prime.real == pytest.approx(expected, abs=1e-9)

    @pytest.mark.parametrize("prob, lam", [(classical_problem(), 4.5), (two_turning_point_problem(), 11.0)])
    def test_derivative_matches_central_difference(self, prob, lam):
        """Central differences of D converge to ∂D/∂λ at second order"""
        _, D_prime = char_fn(prob, lam)
        errors = []
        for h in (1e-3, 1e-4):
            D_plus, _ = char_fn(prob, lam + h)
            D_minus, _ = char_fn(prob, lam - h)
            errors.append(abs((D_plus - D_minus) / (2.0 * h) - D_prime))

        assert math.log10(errors[0] / errors[1]) >= 1.9

    def test_two_turning_points(self):
        prob = two_turning_point_problem()
        for lam in (5.0, 15.0, 3.0 + 4.0j):
            D, _ = char_fn(prob, lam)
            assert abs(D - two_turning_point_D(lam)) < 1e-9 * max(1.0, abs(two_turning_point_D(lam)))

    def test_zero_is_eigenvalue_of_p2(self):
        """sin(3πx/2) solves P2 at λ = 0"""
        D, _ = char_fn(two_turning_point_problem(), 0.0)

        assert abs(D) < 1e-12

    def test_batch_matches_single(self):
        prob = two_turning_point_problem()
        lams = np.array([1.0, 7.5, 2.0 + 1.0j])
        D, _ = characteristic(prob, lams)

        for lam, value in zip(lams, D):
            assert abs(value - char_fn(prob, lam)[0]) < 1e-13

    def test_real_lambda_gives_real_D(self):
        D = real_characteristic(classical_problem(), [1.5, 4.5])

        assert D.dtype == float
        assert D.shape == (2,)

    def test_variable_coefficient_cell(self):
        """A polynomial cell goes through the adaptive integrator; a negligible slope keeps the closed form"""
        interval = Interval(0.0, math.pi)
        prob = Problem(
            interval,
            p=PiecewiseCoefficient.constant(interval, 1.0),
            q=PiecewiseCoefficient((0.0, math.pi), (Polynomial((0.0, 1e-30)),)),
            w=PiecewiseCoefficient.constant(interval, 1.0),
        )
        D, _ = char_fn(prob, 2.0)

        assert D.real == pytest.approx(classical_D(2.0).real, abs=1e-8)


class TestShoot:
    """Tests for full trajectories"""

    def test_raw_shot_is_sine(self):
        """Raw shot has y(0) = 0, (py')(0) = 1, so y = sin(2x)/2 at λ = 4"""
        shot = shoot(classical_problem(), 4.0)
        xs = np.linspace(0.0, math.pi, 33)
        y, py = shot.sample(xs)

        assert np.max(np.abs(y.real - np.sin(2.0 * xs) / 2.0)) < 1e-8
        assert np.max(np.abs(py.real - np.cos(2.0 * xs))) < 1e-8

    def test_shot_agrees_with_char_fn(self):
        prob = two_turning_point_problem()
        lam = 6.0 + 1.5j
        shot = shoot(prob, lam)

        assert abs(shot.D - char_fn(prob, lam)[0]) < 1e-8 * max(1.0, abs(shot.D))

    def test_normalized_peak(self):
        """Normalized shots have max|y| = 1 on the sampling grid"""
        shot = shoot(classical_problem(), 9.0).normalized()
        xs = np.linspace(0.0, math.pi, 2001)
        y, _ = shot.sample(xs)

        assert np.max(np.abs(y)) == pytest.approx(1.0, abs=1e-2)

    def test_grid_contains_breakpoints(self):
        shot = shoot(two_turning_point_problem(), 3.0)

        assert shot.grid[0] == 0.0
        assert shot.grid[-1] == 4.0
        assert np.any(np.isclose(shot.grid, 1.0))


class TestTrajectory:
    """Tests for trajectory tables"""

    def test_frame_columns(self):
        shot = shoot(classical_problem(), 1.0)
        frame = trajectory_frame(shot, np.linspace(0.0, math.pi, 11))

        assert list(frame.columns) == TRAJECTORY_COLUMNS
        assert len(frame) == 11
        assert frame["im_y"].abs().max() == 0.0

    def test_write_csv(self, tmp_path):
        shot = shoot(classical_problem(), 1.0)
        path = write_trajectory_csv(shot, tmp_path / "shot.csv")

        assert path.exists()
        assert path.read_text().splitlines()[0] == ",".join(TRAJECTORY_COLUMNS)


class TestEigenfunctionShot:
    """Tests for shots joined from both ends"""

    def test_matching_point_at_last_turning_point(self):
        prob = two_turning_point_problem()

        assert matching_point(prob, 100.0) == 1.0
        assert matching_point(prob, 10.0) == 4.0

    def test_oscillatory_problem_has_no_matching_point(self):
        assert matching_point(classical_problem(), 4.0) == math.pi
        assert eigenfunction_shot(classical_problem(), 4.0).match == math.pi

    def test_all_evanescent_shoots_outward(self):
        """q = 50 with w = sgn x has no turning point at λ = 1"""
        prob = sign_weight_problem(50.0)

        assert matching_point(prob, 1.0) == prob.b

    def test_decaying_tail_matches_closed_form(self):
        """Above 9π²/4 the P2 eigenfunction decays like sinh(κ(4 - x)) on [1, 4]"""
        prob = two_turning_point_problem()
        lam = brentq(two_turning_point_condition, 100.0, 150.0, xtol=1e-13)
        shot = eigenfunction_shot(prob, lam)
        xs = np.linspace(0.0, 4.0, 401)
        y, _ = shot.sample(xs)
        exact = two_turning_point_eigenfunction(lam, xs)
        k = int(np.argmax(np.abs(exact)))

        assert shot.match == 1.0
        assert np.max(np.abs(y.real / y.real[k] - exact / exact[k])) < 1e-6
        assert abs(y.real[-1]) < 1e-12 * abs(y.real[k])

    def test_keeps_outward_characteristic_values(self):
        prob = two_turning_point_problem()
        lam = 120.0

        assert eigenfunction_shot(prob, lam).D == shoot(prob, lam).D
