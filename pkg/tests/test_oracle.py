"""
Unit tests for the finite-difference oracle: pencil assembly, the QR
eigensolver and Richardson extrapolation.
"""
import math

import numpy as np
import pytest

from src.coefficients.fixtures import classical_problem, sign_weight_problem, two_turning_point_problem
from src.errors import MeshAlignmentError
from src.oracle.discretize import discretize, dump_pencil
from src.oracle.eigensolver import matrix_eigenvalues, pair_conjugates, pencil_eigenvalues
from src.oracle.extrapolate import extrapolate, refined_size


class TestEigensolver:
    """Tests for the balanced Hessenberg QR eigensolver"""

    def test_diagonal(self):
        values = matrix_eigenvalues(np.diag([3.0, -1.0, 2.0]))

        assert np.allclose(values, [-1.0, 2.0, 3.0])

    def test_rotation(self):
        values = matrix_eigenvalues(np.array([[0.0, -1.0], [1.0, 0.0]]))

        assert np.allclose(values, [-1j, 1j])

    def test_matches_numpy(self):
        rng = np.random.default_rng(7)
        m = rng.standard_normal((12, 12))
        ours = matrix_eigenvalues(m)
        reference = np.linalg.eigvals(m)

        for lam in ours:
            assert np.min(np.abs(reference - lam)) < 1e-8 * (1.0 + abs(lam))
        assert np.all(np.diff(ours.real) >= 0.0)

    def test_conjugates_exact(self):
        values = pair_conjugates(np.array([1.0 + 2.0j, 1.0 + 1e-12 - 2.0j, 3.0 + 1e-14j]))

        assert values[0] == np.conj(values[1])
        assert values[2].imag == 0.0

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            matrix_eigenvalues(np.zeros((2, 3)))


class TestDiscretize:
    """Tests for pencil assembly"""

    def test_classical_is_standard_difference(self):
        """Constant coefficients give the 3-point Laplacian with W = I"""
        dop = discretize(classical_problem(), 9)
        h = math.pi / 10.0

        assert dop.size == 9
        assert np.allclose(dop.diag, 2.0 / h ** 2)
        assert np.allclose(dop.off, -1.0 / h ** 2)
        assert np.allclose(dop.weights, 1.0)

    def test_discrete_eigenvalues(self):
        """Eigenvalues 4/h² sin²(kh/2)"""
        n = 19
        h = math.pi / (n + 1)
        values = pencil_eigenvalues(discretize(classical_problem(), n))
        expected = [4.0 / h ** 2 * math.sin(k * h / 2.0) ** 2 for k in range(1, n + 1)]

        assert np.allclose(values.real, expected, rtol=1e-10)

    def test_minimum_size(self):
        with pytest.raises(ValueError):
            discretize(classical_problem(), 2)

    def test_alignment(self):
        """P2's breakpoint at 1 needs h = 3/(2k) or 1/k"""
        with pytest.raises(MeshAlignmentError):
            discretize(two_turning_point_problem(), 4)
        assert discretize(two_turning_point_problem(), 3).size == 3

    def test_midpoint_turning_point(self):
        """An odd cell count puts the turning point of P1 on a cell midpoint"""
        dop = discretize(sign_weight_problem(-3.0), 100)

        assert dop.condensed == ()
        assert set(np.sign(dop.weights)) == {-1.0, 1.0}

    def test_node_turning_point_is_condensed(self):
        """An even cell count puts the turning point on a node where w averages to zero"""
        dop = discretize(sign_weight_problem(-3.0), 99)

        assert len(dop.condensed) == 1
        assert dop.condensed[0] == pytest.approx(0.0, abs=1e-12)
        assert dop.size == 98
        assert dop.n_interior == 99

    def test_dump(self, tmp_path):
        dop = discretize(classical_problem(), 5)
        a_path, w_path = dump_pencil(dop, tmp_path / "pencil")

        assert np.loadtxt(a_path).shape == (5, 5)
        assert np.allclose(np.loadtxt(w_path), 1.0)


class TestExtrapolate:
    """Tests for Richardson extrapolation"""

    def test_refined_size(self):
        assert refined_size(99) == 199

    def test_classical_accuracy(self):
        """Second-order errors cancel; the h⁴ remainder is far below 1e-5"""
        result = extrapolate(classical_problem(), 99)

        assert abs(result[0].lam - 1.0) < 1e-5
        assert abs(result[1].lam - 4.0) < 1e-5
        assert result[0].error < 1e-3
        assert not result[0].flagged

    def test_sign_weight_imaginary_pair(self):
        """The pure imaginary pair of P1 with potential -3 shows up on both meshes"""
        result = extrapolate(sign_weight_problem(-3.0), 100)
        upper = [e for e in result if e.lam.imag > 0.5]

        assert len(upper) == 1
        assert abs(upper[0].lam.real) < 1e-3
        assert 1.9 < upper[0].lam.imag < 2.5
