"""
Tests for the command-line interface.
"""

import csv
import json
import re
import sys
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner
from loguru import logger

# Add the src directory to the path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from ldwscsa.cli import main

REPO_ROOT = Path(__file__).parent.parent
SMALL_RUN = ["--particles", "5", "--iters", "10", "--dim", "5"]


@pytest.fixture
def runner():
    yield CliRunner()
    # commands point loguru at the runner's stderr; restore a live sink afterwards
    logger.remove()
    logger.add(sys.stderr, level="WARNING")


def _experiment_yaml(tmp_path, name="tiny"):
    path = tmp_path / f"{name}.yaml"
    path.write_text(
        "experiment:\n"
        f"  name: {name}\n"
        "  functions: [f1, f7]\n"
        "  algorithms: [ldw_scsa, pso]\n"
        "  particles: [5]\n"
        "  iterations: 8\n"
        "  dimension: 4\n"
        "  runs: 2\n"
        "output:\n"
        f"  results_csv: {tmp_path / (name + '.csv')}\n"
        f"  convergence_csv: {tmp_path / (name + '_trace.csv')}\n",
        encoding="utf-8",
    )
    return path


class TestListCommand:
    """Test cases for `ldwscsa list`."""

    def test_thirteen_lines(self, runner):
        result = runner.invoke(main, ["list"])
        assert result.exit_code == 0
        lines = result.stdout.strip().splitlines()
        assert len(lines) == 13
        assert lines[0].startswith("f1 ")

    def test_json(self, runner):
        result = runner.invoke(main, ["list", "--format", "json", "--dim", "10"])
        functions = json.loads(result.stdout)
        assert [fn["id"] for fn in functions][-1] == "f13"
        assert all(fn["dimension"] == 10 for fn in functions)


class TestRunCommand:
    """Test cases for `ldwscsa run`."""

    def test_prints_seed_and_best(self, runner):
        result = runner.invoke(main, ["run", "--algo", "sca", "--fn", "f9", "--seed", "7", *SMALL_RUN])
        assert result.exit_code == 0, result.output
        assert "seed: 7" in result.stdout
        assert "evaluations: 55" in result.stdout

    def test_json_report(self, runner):
        result = runner.invoke(main, ["run", "--fn", "f2", "--seed", "3", "--format", "json", *SMALL_RUN])
        payload = json.loads(result.stdout)
        assert payload["seed"] == 3
        assert payload["algorithm"] == "ldw_scsa"
        assert len(payload["history"]) == 11
        assert payload["best_fitness"] == payload["history"][-1]["best_fitness"]

    def test_same_seed_same_result(self, runner):
        args = ["run", "--algo", "pso", "--fn", "f7", "--seed", "11", "--format", "json", *SMALL_RUN]
        first = json.loads(runner.invoke(main, args).stdout)
        second = json.loads(runner.invoke(main, args).stdout)
        assert first["history"] == second["history"]
        assert first["best_position"] == second["best_position"]

    def test_random_seed_is_reported_and_replayable(self, runner):
        first = runner.invoke(main, ["run", "--fn", "f9", "--seed", "random", *SMALL_RUN]).stdout
        seed = re.search(r"seed: (\d+)", first).group(1)
        best = re.search(r"best: (\S+)", first).group(1)
        replay = runner.invoke(main, ["run", "--fn", "f9", "--seed", seed, *SMALL_RUN]).stdout
        assert re.search(r"best: (\S+)", replay).group(1) == best

    def test_trace_file(self, runner, tmp_path):
        trace = tmp_path / "trace.csv"
        result = runner.invoke(main, ["run", "--fn", "f1", "--trace", str(trace), *SMALL_RUN])
        assert result.exit_code == 0, result.output
        rows = list(csv.reader(trace.read_text(encoding="utf-8").splitlines()))
        assert rows[0] == ["function", "algorithm", "iteration", "best_fitness"]
        assert [row[2] for row in rows[1:]] == [str(i) for i in range(11)]

    @pytest.mark.parametrize("args, status", [
        (["--fn", "f14"], 3),
        (["--algo", "de"], 4),
        (["--seed", "abc"], 6),
        (["--dim", "1"], 6),
        (["--particles", "1"], 6),
        (["--bogus"], 2),
    ])
    def test_exit_codes(self, runner, args, status):
        result = runner.invoke(main, ["run", "--iters", "2", *args])
        assert result.exit_code == status

    def test_unwritable_trace_path(self, runner, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("", encoding="utf-8")
        result = runner.invoke(main, ["run", "--trace", str(blocker / "t.csv"), *SMALL_RUN])
        assert result.exit_code == 5

    def test_trace_directory_is_created(self, runner, tmp_path):
        trace = tmp_path / "traces" / "f1.csv"
        result = runner.invoke(main, ["run", "--fn", "f1", "--trace", str(trace), *SMALL_RUN])
        assert result.exit_code == 0, result.output
        assert trace.exists()


class TestExperimentCommand:
    """Test cases for `ldwscsa experiment`."""

    def test_writes_outputs(self, runner, tmp_path):
        config = _experiment_yaml(tmp_path)
        result = runner.invoke(main, ["experiment", str(config)])
        assert result.exit_code == 0, result.output
        assert "seed: 12345" in result.stdout

        rows = list(csv.DictReader((tmp_path / "tiny.csv").read_text(encoding="utf-8").splitlines()))
        assert [(r["function"], r["algorithm"]) for r in rows] == [
            ("f1", "ldw_scsa"), ("f1", "pso"), ("f7", "ldw_scsa"), ("f7", "pso"),
        ]
        assert all(r["runs"] == "2" for r in rows)
        trace_rows = (tmp_path / "tiny_trace.csv").read_text(encoding="utf-8").splitlines()
        assert len(trace_rows) == 1 + 2 * 2 * 9

    def test_reruns_are_byte_identical(self, runner, tmp_path):
        config = _experiment_yaml(tmp_path)
        runner.invoke(main, ["experiment", str(config)])
        first = (tmp_path / "tiny.csv").read_bytes()
        runner.invoke(main, ["experiment", str(config), "--jobs", "2"])
        assert (tmp_path / "tiny.csv").read_bytes() == first

    def test_seed_override(self, runner, tmp_path):
        config = _experiment_yaml(tmp_path)
        result = runner.invoke(main, ["experiment", str(config), "--seed", "5", "--format", "json"])
        payload = json.loads(result.stdout)
        assert payload["seed"] == 5
        assert payload["config"]["master_seed"] == 5
        assert payload["numpy_version"] == np.__version__
        assert len(payload["results"]) == 4

    def test_missing_config(self, runner, tmp_path):
        result = runner.invoke(main, ["experiment", str(tmp_path / "absent.yaml")])
        assert result.exit_code == 6

    def test_bad_number_in_config(self, runner, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("experiment:\n  target_fitness: soon\n", encoding="utf-8")
        result = runner.invoke(main, ["experiment", str(path)])
        assert result.exit_code == 6

    def test_committed_smoke_config(self, runner, tmp_path):
        """configs/smoke.yaml runs as shipped, writing under a relative results/ directory."""
        config = REPO_ROOT / "configs" / "smoke.yaml"
        with runner.isolated_filesystem(temp_dir=tmp_path):
            result = runner.invoke(main, ["experiment", str(config)])
            assert result.exit_code == 0, result.output
            rows = list(csv.DictReader(Path("results/smoke.csv").read_text(encoding="utf-8").splitlines()))
        assert len(rows) == 13 * 3
        assert {r["algorithm"] for r in rows} == {"ldw_scsa", "sca", "pso"}


class TestTableCommands:
    """Test cases for the table reproductions."""

    def test_table1_small_sweep(self, runner):
        result = runner.invoke(main, [
            "table1", "--fn", "f1", "--particles", "5", "--particles", "6",
            "--iters", "5", "--dim", "5", "--runs", "2", "--format", "json",
        ])
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert [row["particles"] for row in payload["results"]] == [5, 6]
        assert payload["published_source"] == "published, not measured"
        assert all(entry["published"] is None for entry in payload["published"])

    def test_comparison_needs_published_settings(self, runner):
        result = runner.invoke(main, ["table3", "--iters", "50"])
        assert result.exit_code == 7
        result = runner.invoke(main, ["table4", "--dim", "10"])
        assert result.exit_code == 7

    def test_table4_single_function(self, runner, tmp_path):
        out = tmp_path / "table4.csv"
        result = runner.invoke(main, ["table4", "--fn", "f1", "--runs", "1", "--out", str(out),
                                      "--format", "json"])
        assert result.exit_code == 0, result.output
        comparison = json.loads(result.stdout)["comparison"]
        assert comparison["source"] == "published, not measured"
        assert [row["function"] for row in comparison["rows"]] == ["f1"]
        assert set(comparison["rows"][0]["outcomes"]) == {"PSO2011", "VS"}
        assert out.exists()


class TestConvergenceCommand:
    """Test cases for `ldwscsa convergence`."""

    def test_csv_on_stdout(self, runner):
        result = runner.invoke(main, ["convergence", "--fn", "f1", "--particles", "5",
                                      "--iters", "5", "--dim", "5"])
        assert result.exit_code == 0, result.output
        lines = result.stdout.splitlines()
        assert lines[0] == "# seed: 12345"
        assert lines[1] == "function,algorithm,iteration,best_fitness"
        assert len(lines) == 2 + 2 * 6

    def test_json(self, runner):
        result = runner.invoke(main, ["convergence", "--fn", "f9", "--algo", "pso", "--particles", "5",
                                      "--iters", "3", "--dim", "5", "--format", "json"])
        traces = json.loads(result.stdout)["traces"]
        assert list(traces["f9"]) == ["pso"]
        assert [point[0] for point in traces["f9"]["pso"]] == [0, 1, 2, 3]


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
