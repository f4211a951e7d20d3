"""
Tests for run configuration, the command-line entry point and sweeps.
"""
import json
from pathlib import Path

import pandas as pd
import pytest

from src.cli.config import OUTPUT_DIR_ENV, load_config, resolve_window
from src.cli.main import main
from src.cli.reproduce import EXAMPLES, RowStatus, reproduce
from src.cli.sweep import COLLISION_COLUMNS, SWEEP_COLUMNS, collisions, sweep_values
from src.coefficients.fixtures import classical_problem
from src.errors import ProblemDefinitionError

CLASSICAL_WINDOW = ["--lmin", "0.5", "--lmax", "26", "--re-min", "-5", "--re-max", "5", "--im-min", "0.5", "--im-max", "5"]
SIGN_WEIGHT_WINDOW = ["--lmin", "-40", "--lmax", "40", "--re-min", "-6", "--re-max", "6", "--im-min", "0.1", "--im-max", "6"]
SCRIPTS_DIR = Path(__file__).resolve().parent.parent / "scripts"


class TestConfig:
    """Tests for configuration merging and validation"""

    def test_fixture_required(self):
        with pytest.raises(ProblemDefinitionError):
            load_config({})

    def test_p1_needs_q(self):
        with pytest.raises(ProblemDefinitionError):
            load_config({"fixture": "P1"})

    def test_q_only_for_p1(self):
        with pytest.raises(ProblemDefinitionError):
            load_config({"fixture": "P0", "q": 1.0})

    def test_unset_flags_ignored(self):
        config = load_config({"fixture": "P0", "tol": None, "lmax": None})

        assert config.tol > 0
        assert config.lmax is None

    def test_config_file_overrides_flags(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"fixture": "P1", "q": -22.0, "tol_deg": 1e-3}))
        config = load_config({"fixture": "P1", "q": -3.0}, path)

        assert config.q == -22.0
        assert config.tol_deg == 1e-3

    def test_bad_config_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("[1, 2]")

        with pytest.raises(ProblemDefinitionError):
            load_config({"fixture": "P0"}, path)

    def test_output_dir_from_environment(self, monkeypatch, tmp_path):
        monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / "env_out"))
        config = load_config({"fixture": "P0"})

        assert config.output_dir == tmp_path / "env_out"

    def test_full_window_skips_default(self):
        window = resolve_window(classical_problem(), {
            "lmin": 0.5, "lmax": 26.0, "re_min": -5.0, "re_max": 5.0, "im_min": 0.5, "im_max": 5.0,
        })

        assert window.real_range.b == 26.0
        assert window.complex_rect.im_min == 0.5

    def test_partial_window_keeps_overrides(self):
        window = resolve_window(classical_problem(), {"lmax": 50.0, "im_min": 0.25})

        assert window.real_range.b == 50.0
        assert window.complex_rect.im_min == 0.25


class TestMain:
    """Tests for exit codes of the command-line entry point"""

    def test_solve_classical(self, tmp_path):
        code = main(["solve", "--fixture", "P0", *CLASSICAL_WINDOW, "--output-dir", str(tmp_path)])

        assert code == 0
        assert (tmp_path / "inventory.json").exists()
        assert (tmp_path / "classification.csv").exists()

    def test_indices_window_too_small(self, tmp_path):
        """Five classical eigenvalues leave a stability margin of 4"""
        args = ["indices", "--fixture", "P0", *CLASSICAL_WINDOW, "--output-dir", str(tmp_path), "--format", "json"]

        assert main(args) == 5
        assert main(args + ["--allow-unstable"]) == 0
        assert (tmp_path / "indices.json").exists()

    def test_missing_q(self, tmp_path):
        assert main(["solve", "--fixture", "P1", "--output-dir", str(tmp_path)]) == 2

    def test_unknown_example(self):
        assert main(["reproduce", "no_such_example"]) == 2

    def test_missing_problem_file(self, tmp_path):
        code = main(["solve", "--problem-file", str(tmp_path / "absent.json"), "--output-dir", str(tmp_path)])

        assert code == 2

    def test_bad_sweep_range(self, tmp_path):
        assert main(["sweep", "--qmin", "1", "--qmax", "0", "--output-dir", str(tmp_path)]) == 2


class TestSweep:
    """Tests for sweep ranges and collision detection"""

    def test_values_include_end(self):
        qs = sweep_values(-35.0, 0.0, 0.5)

        assert len(qs) == 71
        assert qs[0] == -35.0
        assert qs[-1] == pytest.approx(0.0)

    def test_invalid_step(self):
        with pytest.raises(ValueError):
            sweep_values(0.0, 1.0, 0.0)

    def test_collision_between_samples(self):
        """Two close real eigenvalues turn into one upper non-real eigenvalue"""
        rows = [
            (-5.0, "real", 1.0, 0.0, 0, "ordinary", 1.0),
            (-5.0, "real", 3.0, 0.0, 1, "ordinary", 0.2),
            (-5.0, "real", 3.2, 0.0, 2, "nondegenerate_real_ghost", 0.2),
            (-5.0, "real", 8.0, 0.0, 3, "ordinary", 0.9),
            (-4.5, "real", 1.0, 0.0, 0, "ordinary", 1.0),
            (-4.5, "complex", 3.1, 0.4, -1, "complex_ghost_degenerate", 0.0),
            (-4.5, "real", 8.0, 0.0, 3, "ordinary", 0.9),
            (-4.0, "real", 1.0, 0.0, 0, "ordinary", 1.0),
            (-4.0, "complex", 3.1, 0.6, -1, "complex_ghost_degenerate", 0.0),
            (-4.0, "real", 8.0, 0.0, 3, "ordinary", 0.9),
        ]
        found = collisions(pd.DataFrame(rows, columns=SWEEP_COLUMNS))

        assert list(found.columns) == COLLISION_COLUMNS
        assert len(found) == 1
        row = found.iloc[0]
        assert (row["q_lo"], row["q_hi"]) == (-5.0, -4.5)
        assert row["direction"] == "real_to_complex"
        assert (row["lambda_a"], row["lambda_b"]) == (3.0, 3.2)
        assert row["distance"] == pytest.approx(0.2)

    def test_return_to_axis(self):
        rows = [
            (0.0, "complex", 3.1, 0.4, -1, "complex_ghost_degenerate", 0.0),
            (0.5, "real", 2.9, 0.0, 1, "ordinary", 0.1),
            (0.5, "real", 3.3, 0.0, 2, "nondegenerate_real_ghost", 0.1),
        ]
        found = collisions(pd.DataFrame(rows, columns=SWEEP_COLUMNS))

        assert found.iloc[0]["direction"] == "complex_to_real"

    def test_no_collision(self):
        rows = [(q, "real", 1.0, 0.0, 0, "ordinary", 1.0) for q in (0.0, 0.5)]

        assert collisions(pd.DataFrame(rows, columns=SWEEP_COLUMNS)).empty


class TestReproduce:
    """Tests for side-by-side reproduction of published values"""

    @pytest.mark.parametrize("example_id", sorted(EXAMPLES))
    def test_no_failed_rows(self, example_id):
        rows = reproduce(example_id)

        assert rows
        assert [r.quantity for r in rows if r.status is RowStatus.FAIL] == []

    def test_shifted_two_turning_points_match(self):
        """With q = w - 9π²/4 every published value matches except the zero count above the barrier"""
        rows = {r.quantity: r for r in reproduce("tturn1")}

        assert rows["eigenvalue with 5 zeros"].status is RowStatus.PASS
        assert rows["next eigenvalue"].status is RowStatus.PASS
        assert rows["class of eigenfunction with 5 zeros"].status is RowStatus.PASS
        assert rows["zeros of the next eigenfunction"].status is RowStatus.FLAGGED
        assert rows["zeros of the next eigenfunction"].computed == "2"

    def test_unshifted_two_turning_points_flagged(self):
        rows = {r.quantity: r for r in reproduce("tturn")}

        for quantity in ("eigenvalue with 5 zeros", "eigenvalue with 4 zeros", "next eigenvalue"):
            assert rows[quantity].status is RowStatus.FLAGGED
            assert "tturn1" in rows[quantity].note

    def test_degenerate_pairs_counted_once(self):
        rows = {r.quantity: r for r in reproduce("qdeg")}

        assert rows["degenerate real eigenvalues"].computed == "2"
        assert rows["no_count_n_deg_minus_1 check"].status is RowStatus.PASS

    def test_double_zero_eigenvalue(self):
        rows = {r.quantity: r for r in reproduce("q4pi2")}

        assert rows["degenerate real ghosts >= 1"].status is RowStatus.PASS

    def test_cli_writes_rows(self, tmp_path):
        assert main(["reproduce", "q3", "--output-dir", str(tmp_path)]) == 0

        payload = json.loads((tmp_path / "reproduce_q3.json").read_text())
        assert payload["example"] == "q3"
        assert [row["status"] for row in payload["rows"]] == ["pass"] * len(payload["rows"])


class TestRuns:
    """Tests for complete command runs"""

    def test_verify_classical(self, tmp_path):
        args = ["verify", "--fixture", "P0", *CLASSICAL_WINDOW, "--output-dir", str(tmp_path)]

        assert main(args) == 0
        assert (tmp_path / "verify.csv").exists()

    def test_reports_are_reproducible(self, tmp_path):
        """Two runs with the same configuration write identical files"""
        for run in ("first", "second"):
            args = ["solve", "--fixture", "P1", "--q", "-3", *SIGN_WEIGHT_WINDOW, "--output-dir", str(tmp_path / run)]
            assert main(args) == 0

        for name in ("inventory.json", "classification.csv"):
            assert (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()

    def test_sweep_writes_trajectory(self, tmp_path):
        args = ["sweep", "--qmin", "-4", "--qmax", "-2", "--step", "1", *SIGN_WEIGHT_WINDOW, "--output-dir", str(tmp_path)]

        assert main(args) == 0
        trajectory = pd.read_csv(tmp_path / "sweep.csv")
        assert list(trajectory.columns) == SWEEP_COLUMNS
        assert sorted(trajectory["q"].unique()) == [-4.0, -3.0, -2.0]
        assert list(pd.read_csv(tmp_path / "collisions.csv").columns) == COLLISION_COLUMNS


class TestScripts:
    """Tests for the demo scripts"""

    @pytest.mark.parametrize("path", sorted(SCRIPTS_DIR.glob("*.py")), ids=lambda p: p.name)
    def test_plain_text_output(self, path):
        """Banners and bullets stay plain text: no pictographs or dingbats"""
        text = path.read_text(encoding="utf-8")

        assert not [ch for ch in text if ord(ch) >= 0x1F000 or 0x2600 <= ord(ch) <= 0x27BF]
