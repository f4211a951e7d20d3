"""
Unit tests for coefficients, problems, fixtures and problem files.
"""
import math

import pytest

from src.coefficients.definiteness import (
    DefinitenessClass,
    auxiliary_ground_eigenvalue,
    definiteness_class,
    definiteness_report,
)
from src.coefficients.fixtures import classical_problem, fixture, sign_weight_problem, two_turning_point_problem
from src.coefficients.interval import Interval
from src.coefficients.piecewise import Constant, PiecewiseCoefficient, Polynomial, Sign
from src.coefficients.problem import Problem
from src.data.problem_file import dump_problem, load_problem, parse_problem
from src.errors import DomainError, ProblemDefinitionError


class TestPiecewiseCoefficient:
    """Tests for piecewise coefficient evaluation and integrals"""

    def test_sign_weight_parts(self):
        """sgn x on [-1, 1] has unit positive and negative mass"""
        w = PiecewiseCoefficient((-1.0, 0.0, 1.0), (Constant(-1.0), Constant(1.0)))

        assert w.integrate() == pytest.approx(0.0)
        assert w.integrate_part(Sign.POSITIVE) == pytest.approx(1.0)
        assert w.integrate_part(Sign.NEGATIVE) == pytest.approx(1.0)

    def test_polynomial_parts_split_at_root(self):
        """x on [-1, 1] is split at its root"""
        w = PiecewiseCoefficient((-1.0, 1.0), (Polynomial((0.0, 1.0)),))

        assert w.integrate_part(Sign.POSITIVE) == pytest.approx(0.5)
        assert w.integrate_part(Sign.NEGATIVE) == pytest.approx(0.5)
        assert w.integrate(0.0, 1.0) == pytest.approx(0.5)

    def test_right_continuous_at_breakpoints(self):
        """Interior breakpoints take the segment on the right"""
        w = PiecewiseCoefficient((-1.0, 0.0, 1.0), (Constant(-1.0), Constant(1.0)))

        assert w.evaluate(0.0) == 1.0
        assert list(w([-0.5, 0.0, 0.5])) == [-1.0, 1.0, 1.0]

    def test_outside_interval(self):
        """Evaluation outside [a, b] raises DomainError"""
        w = PiecewiseCoefficient.constant(Interval(0.0, 1.0), 2.0)

        with pytest.raises(DomainError):
            w.evaluate(1.5)

    def test_invalid_breakpoints(self):
        """Breakpoints must increase strictly"""
        with pytest.raises(ProblemDefinitionError):
            PiecewiseCoefficient((0.0, 0.0, 1.0), (Constant(1.0), Constant(2.0)))

    def test_degree_limit(self):
        """Polynomial segments are at most cubic"""
        with pytest.raises(ProblemDefinitionError):
            Polynomial((1.0, 0.0, 0.0, 0.0, 1.0))

    def test_refine_keeps_values(self):
        """Inserted breakpoints do not change values"""
        w = PiecewiseCoefficient((-1.0, 0.0, 1.0), (Constant(-1.0), Constant(1.0)))
        refined = w.refine([-0.5, 0.5])

        assert refined.breakpoints == (-1.0, -0.5, 0.0, 0.5, 1.0)
        assert refined.evaluate(-0.75) == -1.0
        assert refined.evaluate(0.75) == 1.0


class TestProblem:
    """Tests for problem validation and derived coefficients"""

    def test_rejects_nonpositive_p(self):
        """p must be positive on [a, b]"""
        interval = Interval(0.0, 1.0)
        with pytest.raises(ProblemDefinitionError):
            Problem(
                interval,
                p=PiecewiseCoefficient((0.0, 1.0), (Polynomial((-0.5, 1.0)),)),
                q=PiecewiseCoefficient.constant(interval, 0.0),
                w=PiecewiseCoefficient.constant(interval, 1.0),
            )

    def test_rejects_zero_weight(self):
        """w may not vanish identically"""
        interval = Interval(0.0, 1.0)
        with pytest.raises(ProblemDefinitionError):
            Problem(
                interval,
                p=PiecewiseCoefficient.constant(interval, 1.0),
                q=PiecewiseCoefficient.constant(interval, 0.0),
                w=PiecewiseCoefficient.constant(interval, 0.0),
            )

    def test_reflected_negates_weight(self):
        prob = two_turning_point_problem()
        reflected = prob.reflected()

        assert reflected.w.evaluate(0.5) == -1.0
        assert reflected.w.evaluate(2.0) == 1.0
        assert reflected.q.evaluate(2.0) == prob.q.evaluate(2.0)

    def test_effective_potential(self):
        """q_eff = λw - q on each side of the turning point"""
        prob = sign_weight_problem(-22.0)
        q_eff = prob.effective_potential(5.0)

        assert q_eff.evaluate(-0.5) == pytest.approx(-5.0 + 22.0)
        assert q_eff.evaluate(0.5) == pytest.approx(5.0 + 22.0)

    def test_cells_merge_breakpoints(self):
        prob = two_turning_point_problem()

        assert [(c.lo, c.hi) for c in prob.cells] == [(0.0, 1.0), (1.0, 4.0)]
        assert prob.is_piecewise_constant

    def test_oscillation_integral(self):
        """∫ sqrt(w±/p) for P1 is 1 on each side"""
        prob = sign_weight_problem(0.0)

        assert prob.oscillation_integral(Sign.POSITIVE) == pytest.approx(1.0)
        assert prob.oscillation_integral(Sign.NEGATIVE) == pytest.approx(1.0)


class TestFixtures:
    """Tests for fixture lookup"""

    def test_lookup(self):
        assert fixture("P0").interval == Interval(0.0, math.pi)
        assert fixture("P1", -22.0).q.evaluate(0.3) == -22.0
        assert fixture("P2").b == 4.0

    def test_p1_needs_q(self):
        with pytest.raises(ProblemDefinitionError):
            fixture("P1")

    def test_unknown_id(self):
        with pytest.raises(ProblemDefinitionError):
            fixture("P9")


class TestDefiniteness:
    """Tests for the auxiliary eigenvalue and definiteness classes"""

    def test_classical_is_right_definite(self):
        """A positive weight is right definite even when the Dirichlet form is definite too"""
        report = definiteness_report(classical_problem())

        assert report.auxiliary_eigenvalue == pytest.approx(1.0, abs=1e-8)
        assert definiteness_class(classical_problem()) is DefinitenessClass.RIGHT_DEFINITE
        assert report.definite_both

    def test_negative_potential_keeps_right_definite(self):
        """w = 1 with q = -5 on [0, π]: μ0 = -4 makes the form indefinite, the class stays right definite"""
        prob = classical_problem()
        prob = Problem(prob.interval, prob.p, PiecewiseCoefficient.constant(prob.interval, -5.0), prob.w, name="shifted")
        report = definiteness_report(prob)

        assert report.auxiliary_eigenvalue == pytest.approx(-4.0, abs=1e-8)
        assert report.definiteness is DefinitenessClass.RIGHT_DEFINITE
        assert not report.definite_both

    def test_auxiliary_eigenvalue_closed_form(self):
        """Weight-1 problem on [-1, 1] has μ0 = π²/4 + q"""
        mu0 = auxiliary_ground_eigenvalue(sign_weight_problem(-22.0))

        assert mu0 == pytest.approx(math.pi ** 2 / 4.0 - 22.0, abs=1e-8)

    def test_sign_weight_classes(self):
        """Positive potential keeps the form definite, a deep well does not"""
        assert definiteness_report(sign_weight_problem(3.0)).definiteness is DefinitenessClass.LEFT_DEFINITE
        assert definiteness_report(sign_weight_problem(-22.0)).definiteness is DefinitenessClass.NON_DEFINITE

    def test_weight_masses(self):
        report = definiteness_report(two_turning_point_problem())

        assert report.weight_positive == pytest.approx(1.0)
        assert report.weight_negative == pytest.approx(3.0)
        assert report.weight_indefinite


class TestProblemFile:
    """Tests for JSON problem files"""

    def test_parse(self):
        prob = parse_problem({
            "name": "P1(-22)",
            "interval": {"a": -1.0, "b": 1.0},
            "p": [{"upto": 1.0, "kind": "const", "values": [1.0]}],
            "q": [{"upto": 1.0, "kind": "const", "values": [-22.0]}],
            "w": [
                {"upto": 0.0, "kind": "const", "values": [-1.0]},
                {"upto": 1.0, "kind": "const", "values": [1.0]},
            ],
        })

        assert prob == sign_weight_problem(-22.0)
        assert prob.name == "P1(-22)"

    def test_dump_and_load(self, tmp_path):
        prob = two_turning_point_problem()
        path = dump_problem(prob, tmp_path / "p2.json")

        assert load_problem(path) == prob

    def test_last_segment_must_end_at_b(self):
        with pytest.raises(ProblemDefinitionError):
            parse_problem({
                "interval": {"a": 0.0, "b": 1.0},
                "p": [{"upto": 0.5, "kind": "const", "values": [1.0]}],
                "q": [{"upto": 1.0, "kind": "const", "values": [0.0]}],
                "w": [{"upto": 1.0, "kind": "const", "values": [1.0]}],
            })

    def test_malformed_json(self):
        with pytest.raises(ProblemDefinitionError):
            parse_problem("{not json")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ProblemDefinitionError):
            load_problem(tmp_path / "absent.json")
