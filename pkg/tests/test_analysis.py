"""
Unit tests for oscillation profiles, indices and the check suite.
"""
from dataclasses import replace
import math
from types import SimpleNamespace

import pytest

from src.analysis.checks import (
    CheckStatus,
    comparison_bound,
    degenerate_clusters,
    index_bound,
    inverse_p_length,
    lyapunov_check,
    n_degenerate,
    rapoport_check,
)
from src.analysis.indices import indices
from src.analysis.profile import OscillationProfile, profile
from src.analysis.report import index_report
from src.classification.ghosts import GhostClass, GhostTag
from src.coefficients.fixtures import classical_problem, sign_weight_problem, two_turning_point_problem
from src.coefficients.interval import Interval
from src.coefficients.piecewise import Sign
from src.errors import CertificateError, UncertifiedInventoryError, WindowTooSmallError
from src.spectrum.inventory import build_inventory
from src.spectrum.window import Rectangle, SpectralWindow


@pytest.fixture(scope="module")
def classical_inventory():
    window = SpectralWindow(Interval(0.5, 26.0), Rectangle(-5.0, 5.0, 0.5, 5.0))
    return build_inventory(classical_problem(), window)


def make_profile(entries, top=100.0) -> OscillationProfile:
    return OscillationProfile(Sign.POSITIVE, {n: tuple(v) for n, v in entries.items()}, top)


def real_pair(lam: float, weighted_sq: float, tag: GhostTag = GhostTag.DEGENERATE_REAL) -> SimpleNamespace:
    return SimpleNamespace(lam=complex(lam), ghost_class=GhostClass(tag), forms=SimpleNamespace(weighted_sq=complex(weighted_sq)))


def inventory_of(*pairs) -> SimpleNamespace:
    return SimpleNamespace(real_pairs=list(pairs))


class TestIndices:
    """Tests for indices and numbers of hand-built profiles"""

    def test_classical_profile(self):
        """One eigenvalue per count from zero: both indices vanish"""
        idx = indices(make_profile({n: ((n + 1) ** 2,) for n in range(8)}))

        assert (idx.n_R, idx.n_H) == (0, 0)
        assert idx.Lambda_H == 1.0
        assert idx.Lambda_R == 1.0
        assert idx.stability_margin == 7
        assert not idx.window_too_small

    def test_gap_and_repeat(self):
        """Counts 0 and 1 missing, count 3 repeated"""
        entries = {2: (5.7,), 3: (10.0, 20.0), 4: (30.0,)}
        entries.update({n: (10.0 * n,) for n in range(5, 11)})
        idx = indices(make_profile(entries))

        assert idx.n_R == 2
        assert idx.n_H == 4
        assert idx.Lambda_H == 5.7
        assert idx.Lambda_R == 30.0
        assert idx.stability_margin == 6

    def test_small_margin(self):
        idx = indices(make_profile({0: (1.0,), 1: (4.0,)}))

        assert idx.stability_margin == 1
        assert idx.window_too_small

    def test_repeated_top_count(self):
        """A repeated top count leaves no stabilized count"""
        idx = indices(make_profile({0: (1.0,), 1: (4.0, 5.0)}))

        assert idx.n_H == 2
        assert math.isnan(idx.Lambda_R)

    def test_empty_profile(self):
        with pytest.raises(WindowTooSmallError):
            indices(make_profile({}))


class TestProfile:
    """Tests for profiles of inventories"""

    def test_classical(self, classical_inventory):
        prof = profile(classical_inventory, Sign.POSITIVE)

        assert prof.counts == [0, 1, 2, 3, 4]
        assert prof.eigenvalues(2)[0] == pytest.approx(9.0, abs=1e-8)
        assert prof.window_top == 26.0

    def test_negative_side_is_empty(self, classical_inventory):
        prof = profile(classical_inventory, Sign.NEGATIVE)

        assert prof.is_empty
        with pytest.raises(WindowTooSmallError):
            index_report(classical_inventory, Sign.NEGATIVE)

    def test_uncertified(self, classical_inventory):
        broken = replace(classical_inventory, certificate=replace(classical_inventory.certificate, rect_count=1, match=False))

        with pytest.raises(UncertifiedInventoryError):
            profile(broken)
        with pytest.raises(CertificateError):
            broken.require_certified()


class TestBounds:
    """Tests for closed-form bounds"""

    def test_inverse_p_length(self):
        assert inverse_p_length(classical_problem()) == pytest.approx(math.pi)
        assert inverse_p_length(two_turning_point_problem()) == pytest.approx(4.0)

    def test_index_bound(self):
        """sqrt(π/4 · π) on the classical problem with Λ = 1"""
        assert index_bound(classical_problem(), 1.0) == pytest.approx(math.pi / 2.0)

    def test_comparison_bound_classical(self):
        """inf q/|w| = 0, c² = 1 and ∫dx/p = π give (n + 1)²"""
        for n in range(4):
            assert comparison_bound(classical_problem(), n) == pytest.approx((n + 1) ** 2)

    def test_comparison_bound_sign_weight(self):
        """|w| = 1 everywhere away from the turning point"""
        bound = comparison_bound(sign_weight_problem(-22.0), 0)

        assert bound == pytest.approx(-22.0 + math.pi ** 2 / 4.0)

    def test_rapoport_and_lyapunov(self, classical_inventory):
        prob = classical_problem()
        for e in classical_inventory.real_pairs:
            assert rapoport_check(prob, e).status is CheckStatus.PASSED
        assert lyapunov_check(prob, classical_inventory.real_pairs[0]).status is CheckStatus.PASSED
        assert lyapunov_check(prob, classical_inventory.real_pairs[1]).status is CheckStatus.NOT_APPLICABLE


class TestIndexReport:
    """Tests for full index reports"""

    def test_classical_report(self, classical_inventory):
        rep = index_report(classical_inventory, Sign.POSITIVE, properties=True)

        assert (rep.n_R, rep.n_H) == (0, 0)
        assert rep.Lambda_H == pytest.approx(1.0, abs=1e-8)
        assert rep.m_pairs == 0
        assert rep.n_deg == 0
        assert rep.failed_checks == []

    def test_classical_comparison_is_equality(self, classical_inventory):
        """The classical problem attains the comparison bound"""
        rep = index_report(classical_inventory, Sign.POSITIVE)
        by_name = {c.name: c for c in rep.checks}

        assert by_name["comparison_richardson_number"].status is CheckStatus.FLAGGED
        assert by_name["comparison_haupt_number"].status is CheckStatus.FLAGGED
        assert by_name["certificate"].status is CheckStatus.PASSED
        assert by_name["no_ground_state"].status is CheckStatus.NOT_APPLICABLE

    def test_without_checks(self, classical_inventory):
        rep = index_report(classical_inventory, with_checks=False)

        assert rep.checks == ()
        assert rep.lowest_by_count()[0] == pytest.approx(1.0, abs=1e-8)


class TestDegenerateCount:
    """Tests for grouping degenerate real ghosts"""

    def test_near_collision_pairs_count_once(self):
        """Two near collisions at ±6.15, each side of opposite ∫u²w sign"""
        inv = inventory_of(
            real_pair(-6.1565, 2.1e-4), real_pair(-6.1466, -2.1e-4),
            real_pair(2.0, 0.4, GhostTag.ORDINARY),
            real_pair(6.1466, -2.1e-4), real_pair(6.1565, 2.1e-4),
        )

        assert [len(c) for c in degenerate_clusters(inv)] == [2, 2]
        assert n_degenerate(inv) == 2

    def test_same_sign_counts_twice(self):
        inv = inventory_of(real_pair(1.0, 1e-5), real_pair(1.001, 2e-5))

        assert n_degenerate(inv) == 2

    def test_distant_pairs_count_twice(self):
        inv = inventory_of(real_pair(1.0, 1e-5), real_pair(2.0, -1e-5))

        assert n_degenerate(inv) == 2

    def test_separated_by_ordinary(self):
        inv = inventory_of(real_pair(1.0, 1e-5), real_pair(1.001, 0.3, GhostTag.ORDINARY), real_pair(1.002, -1e-5))

        assert n_degenerate(inv) == 2

    def test_cluster_holds_two(self):
        inv = inventory_of(real_pair(1.0, 1e-5), real_pair(1.001, -1e-5), real_pair(1.002, 1e-5))

        assert [len(c) for c in degenerate_clusters(inv)] == [2, 1]
