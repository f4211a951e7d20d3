"""
Integration tests for end-to-end workflows.
"""
import json

import numpy as np
import pytest

from src.analysis.checks import CheckStatus, minimum_principle_check, orthogonality_check
from src.analysis.report import index_report
from src.classification.ghosts import GhostTag
from src.coefficients.fixtures import classical_problem, sign_weight_problem, two_turning_point_problem
from src.coefficients.interval import Interval
from src.coefficients.piecewise import Sign
from src.data.writers import write_index_report, write_inventory
from src.oracle.extrapolate import agreement_check, extrapolate
from src.spectrum.eigenpair import make_eigenpair
from src.spectrum.inventory import build_inventory
from src.spectrum.real_scan import scan_real
from src.spectrum.window import Rectangle, SpectralWindow


class TestEndToEndWorkflow:
    """Integration tests for complete workflows"""

    def test_classical_workflow(self, tmp_path):
        """Inventory, indices, checks and files for -y'' = λy on [0, π]"""
        window = SpectralWindow(Interval(0.5, 26.0), Rectangle(-5.0, 5.0, 0.5, 5.0))
        inv = build_inventory(classical_problem(), window)
        rep = index_report(inv, Sign.POSITIVE, properties=True)

        assert inv.is_certified
        assert np.allclose(inv.real_eigenvalues, [1.0, 4.0, 9.0, 16.0, 25.0], atol=1e-8)
        assert all(e.ghost_class.tag is GhostTag.ORDINARY for e in inv.pairs)
        assert rep.failed_checks == []

        written = write_inventory(inv, tmp_path, ["json", "csv"]) + write_index_report(rep, tmp_path, ["json"])
        assert all(path.exists() for path in written)
        payload = json.loads((tmp_path / "inventory.json").read_text())
        assert len(payload["real"]) == 5
        assert payload["certificate"]["match"] is True
        assert json.loads((tmp_path / "indices.json").read_text())["n_R"] == 0

    def test_classical_oracle_agreement(self):
        window = SpectralWindow(Interval(0.5, 26.0), Rectangle(-5.0, 5.0, 0.5, 5.0))
        inv = build_inventory(classical_problem(), window)
        check = agreement_check(inv, extrapolate(inv.problem, 99))

        assert check.passed
        assert check.lhs <= 1.0

    def test_sign_weight_workflow(self):
        """One non-real pair forces a positive Richardson index and rules out ground states"""
        window = SpectralWindow(Interval(-40.0, 40.0), Rectangle(-6.0, 6.0, 0.1, 6.0))
        inv = build_inventory(sign_weight_problem(-3.0), window)
        rep = index_report(inv, Sign.POSITIVE)

        assert inv.is_certified
        assert rep.m_pairs == 1
        assert rep.n_R >= rep.m_pairs + rep.n_deg
        assert not any(e.osc_count == 0 for e in inv.real_pairs)
        assert inv.complex_pairs[0].ghost_class.tag.is_complex

    def test_sign_weight_symmetry(self):
        """w odd and q even make the real spectrum symmetric about 0"""
        window = SpectralWindow(Interval(-40.0, 40.0), Rectangle(-6.0, 6.0, 0.1, 6.0))
        inv = build_inventory(sign_weight_problem(-3.0), window, classify=False)
        lams = inv.real_eigenvalues

        assert len(lams) > 0
        assert np.allclose(np.sort(lams), np.sort(-lams), atol=1e-7)

    def test_two_turning_points(self):
        """P2 carries the exact eigenvalue 0 with an ordinary eigenfunction of 5 zeros"""
        window = SpectralWindow(Interval(-5.0, 25.0), Rectangle(-20.0, 20.0, 0.1, 15.0))
        inv = build_inventory(two_turning_point_problem(), window)

        assert inv.is_certified
        zero = [e for e in inv.real_pairs if e.lam.real == 0.0]
        assert len(zero) == 1
        assert zero[0].osc_count == 5
        assert zero[0].ghost_class.zero_eigenvalue
        assert [e.lam.real for e in inv.real_pairs if e.lam.real > 5.0] == pytest.approx([11.78, 17.84, 21.14], abs=0.05)

    def test_richardson_and_haupt_indices(self):
        """P1(-22) has n_R = 2 and n_H = 3; P1(-41.9) has n_R = 3"""
        rep = index_report(build_inventory(sign_weight_problem(-22.0)), Sign.POSITIVE)

        assert (rep.n_R, rep.n_H) == (2, 3)
        assert rep.Lambda_H == pytest.approx(5.7069, abs=1e-3)
        assert index_report(build_inventory(sign_weight_problem(-41.9)), Sign.POSITIVE).n_R == 3

    @pytest.mark.parametrize("q, pairs, min_count", [(-15.0, 2, 2), (-33.0, 3, 3)])
    def test_sign_weight_family(self, q, pairs, min_count):
        """More negative potentials push more eigenvalues off the real axis and raise the smallest count"""
        inv = build_inventory(sign_weight_problem(q))
        rep = index_report(inv, Sign.POSITIVE)

        assert inv.is_certified
        assert len(inv.complex_pairs) == pairs
        assert rep.profile.counts[0] == min_count
        assert rep.n_R >= rep.m_pairs + rep.n_deg


class TestProperties:
    """Identities every real eigenpair satisfies"""

    @pytest.mark.parametrize("prob, lam", [
        (classical_problem(), 4.0),
        (two_turning_point_problem(), 0.0),
        (sign_weight_problem(-3.0), None),
    ])
    def test_minimum_principle(self, prob, lam):
        """∫p u²η'² >= 0 over 100 random polynomial multipliers η"""
        e = make_eigenpair(prob, lam) if lam is not None else scan_real(prob, Interval(0.5, 40.0))[0]

        assert minimum_principle_check(prob, e, trials=100).status is CheckStatus.PASSED

    def test_orthogonality_nonnegative_potential(self):
        """q = 15 with w = sgn x: real spectrum only, eigenfunctions w-orthogonal"""
        window = SpectralWindow(Interval(-60.0, 60.0), Rectangle(-10.0, 10.0, 0.1, 10.0))
        inv = build_inventory(sign_weight_problem(15.0), window)

        assert inv.is_certified
        assert not inv.complex_pairs
        assert orthogonality_check(inv).status is CheckStatus.PASSED
