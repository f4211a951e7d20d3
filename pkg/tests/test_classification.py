"""
Unit tests for quadratic forms, oscillation counts, ghost classes and orthogonality.
"""
from dataclasses import replace
import math

import numpy as np
import pytest
from numpy.polynomial import Polynomial

from src.classification.classify import annotate_pair, classify
from src.classification.forms import FormValues, form_values, quadratic_form_gap
from src.classification.ghosts import GhostClass, GhostTag
from src.classification.orthogonality import RESIDUAL_COLUMNS, pair_residuals
from src.classification.oscillation import oscillation_count
from src.coefficients.fixtures import classical_problem, sign_weight_problem, two_turning_point_problem
from src.spectrum.complex_roots import find_complex
from src.spectrum.eigenpair import make_eigenpair
from src.spectrum.window import Rectangle


@pytest.fixture(scope="module")
def classical_pairs():
    prob = classical_problem()
    return prob, [annotate_pair(prob, make_eigenpair(prob, float(k * k))) for k in range(1, 5)]


def sign_forms(weighted_sq: float) -> FormValues:
    """Form values with unit scale, so weighted_sq is the relative weighted integral"""
    return FormValues(weighted_sq=complex(weighted_sq), weighted_abs=1.0, dirichlet=1.0, norm=1.0, scale=1.0, quadrature_error=0.0)


class TestForms:
    """Tests for quadratic form values"""

    def test_rayleigh_quotient(self, classical_pairs):
        """∫|u'|² / ∫|u|²w equals λ for -u'' = λu"""
        _, pairs = classical_pairs
        for e in pairs:
            forms = e.forms
            assert forms.dirichlet / forms.weighted_abs == pytest.approx(e.lam.real, rel=1e-6)

    def test_definite_weight_is_nondegenerate(self, classical_pairs):
        _, pairs = classical_pairs
        for e in pairs:
            assert e.forms.relative_weighted_sq == pytest.approx(1.0, rel=1e-8)
            assert e.forms.quadrature_error < 1e-8

    def test_two_turning_point_zero_eigenvalue(self):
        """u = sin(3πx/2) has ∫u²w = 1/2 - 3/2 against ∫u² = 2"""
        prob = two_turning_point_problem()
        forms = form_values(prob, make_eigenpair(prob, 0.0))

        assert forms.weighted_sq.real < 0.0
        assert forms.relative_weighted_sq == pytest.approx(0.5, rel=1e-6)


class TestFormGap:
    """Tests for the gap of multiplied eigenfunctions"""

    def test_constant_multiplier(self, classical_pairs):
        prob, pairs = classical_pairs
        gap = quadratic_form_gap(prob, pairs[0], 2.0)

        assert abs(gap.value) <= gap.error + 1e-8

    def test_linear_multiplier_gives_norm(self, classical_pairs):
        """η = x leaves ∫ p u² η'² = ∫ u²"""
        prob, pairs = classical_pairs
        for e in pairs:
            gap = quadratic_form_gap(prob, e, Polynomial([0.0, 1.0]))
            assert gap.value >= -gap.error
            assert gap.value == pytest.approx(e.forms.norm, rel=1e-6)

    def test_sampled_multiplier(self, classical_pairs):
        prob, pairs = classical_pairs
        xs = np.linspace(0.0, math.pi, 9)
        gap = quadratic_form_gap(prob, pairs[1], (xs, 1.0 + np.sin(xs)))

        assert gap.value >= -gap.error

    def test_rejects_nonreal(self):
        prob = sign_weight_problem(-3.0)
        e = make_eigenpair(prob, find_complex(prob, Rectangle(-6.0, 6.0, 0.1, 6.0))[0].lam)

        with pytest.raises(ValueError):
            quadratic_form_gap(prob, e, 1.0)


class TestOscillation:
    """Tests for interior zero counts"""

    def test_classical_counts(self, classical_pairs):
        _, pairs = classical_pairs

        assert [oscillation_count(e) for e in pairs] == [0, 1, 2, 3]

    def test_two_turning_point_zero_eigenvalue(self):
        """sin(3πx/2) vanishes at 2/3, 4/3, 2, 8/3 and 10/3 inside (0, 4)"""
        prob = two_turning_point_problem()

        assert oscillation_count(make_eigenpair(prob, 0.0)) == 5


class TestClassify:
    """Tests for ghost classes"""

    def test_classical_all_ordinary(self, classical_pairs):
        _, pairs = classical_pairs

        assert all(e.ghost_class.tag is GhostTag.ORDINARY for e in pairs)
        assert pairs[0].ghost_class.ground_state
        assert not any(e.ghost_class.ground_state for e in pairs[1:])

    def test_zero_eigenvalue_is_ordinary(self):
        prob = two_turning_point_problem()
        ghost = annotate_pair(prob, make_eigenpair(prob, 0.0)).ghost_class

        assert ghost.tag is GhostTag.ORDINARY
        assert ghost.zero_eigenvalue
        assert not ghost.ground_state

    def test_nonreal_pair_is_complex_ghost(self):
        prob = sign_weight_problem(-3.0)
        e = annotate_pair(prob, find_complex(prob, Rectangle(-6.0, 6.0, 0.1, 6.0))[0])

        assert e.ghost_class.tag.is_complex
        assert e.osc_count is None

    def test_tol_deg_must_be_positive(self, classical_pairs):
        prob, pairs = classical_pairs

        with pytest.raises(ValueError):
            classify(prob, pairs[0], tol_deg=0.0)

    def test_huge_band_makes_everything_degenerate(self, classical_pairs):
        prob, pairs = classical_pairs
        ghost = classify(prob, pairs[0], tol_deg=2.0, forms=pairs[0].forms, osc_count=0)

        assert ghost.tag is GhostTag.DEGENERATE_REAL

    def test_small_lambda_sign_is_borderline(self, classical_pairs):
        """|∫u²w| above the band but λ∫u²w inside it: tagged by sign, marked borderline"""
        prob, pairs = classical_pairs
        e = replace(pairs[1], lam=complex(0.5, 0.0))
        for ws, tag in ((-1.5e-4, GhostTag.NONDEGENERATE_REAL), (1.5e-4, GhostTag.ORDINARY)):
            ghost = classify(prob, e, tol_deg=1e-4, forms=sign_forms(ws), osc_count=1)

            assert ghost.tag is tag
            assert ghost.borderline

    def test_clear_sign_is_not_borderline(self, classical_pairs):
        prob, pairs = classical_pairs
        e = replace(pairs[1], lam=complex(5.0, 0.0))
        ghost = classify(prob, e, tol_deg=1e-4, forms=sign_forms(-1.5e-4), osc_count=1)

        assert ghost.tag is GhostTag.NONDEGENERATE_REAL
        assert not ghost.borderline

    def test_ground_state_needs_real_tag(self):
        with pytest.raises(ValueError):
            GhostClass(GhostTag.COMPLEX_NONDEGENERATE, ground_state=True)

    def test_labels(self):
        assert GhostTag.NONDEGENERATE_REAL.is_ghost
        assert not GhostTag.ORDINARY.is_ghost
        assert GhostClass(GhostTag.DEGENERATE_REAL).label == "degenerate_real_ghost"


class TestOrthogonality:
    """Tests for orthogonality residuals"""

    def test_classical_eigenfunctions_orthogonal(self, classical_pairs):
        prob, pairs = classical_pairs
        report = pair_residuals(prob, pairs)

        assert report.max_residual() < 1e-8
        assert list(report.to_frame().columns) == RESIDUAL_COLUMNS

    def test_empty(self):
        report = pair_residuals(classical_problem(), [])

        assert report.max_residual() == 0.0
