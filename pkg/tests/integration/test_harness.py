"""Integration tests for the experiment harness and the CLI."""
import io
import json
from dataclasses import replace

import pandas as pd
import pytest

from core.errors import InvalidParameterError
from harness import (SCHEMA_VERSION, TRIAL_COLUMNS, Algorithm, ExperimentConfig, run_trials,
                     summarize_result, sweep, trial_streams, verify_exactness)
from harness.algorithms import target_k
from harness.reporting import write_trials_csv, write_trials_json
from main import main
from selection.tournament import tournament_comparisons

pytestmark = pytest.mark.integration

SMALL_K = {Algorithm.FINDONE: 16, Algorithm.REDUCTION_TOURNAMENT: 16,
           Algorithm.REDUCTION_FINDMIN: 16, Algorithm.FTMIN: 16}


def _config(algorithm: Algorithm, **kwargs) -> ExperimentConfig:
    kwargs.setdefault("n", 64)
    kwargs.setdefault("k", SMALL_K.get(algorithm))
    kwargs.setdefault("trials", 5)
    kwargs.setdefault("seed", 11)
    return ExperimentConfig(algorithm, **kwargs)


def _csv(result) -> str:
    stream = io.StringIO()
    write_trials_csv(result, stream)
    return stream.getvalue()


@pytest.mark.parametrize("algorithm", list(Algorithm))
def test_fault_free_runs_always_succeed(algorithm):
    result = run_trials(_config(algorithm, p=0.0, trials=10))
    assert result.success_rate == 1.0
    row = summarize_result(result).rows[0]
    assert row.successes == row.trials == 10


@pytest.mark.parametrize("algorithm", [Algorithm.TOURNAMENT, Algorithm.FTMIN,
                                       Algorithm.FINDONE_DENSE])
def test_same_config_gives_identical_csv(algorithm):
    config = _config(algorithm, p=0.1)
    assert _csv(run_trials(config)) == _csv(run_trials(config))


def test_workers_do_not_change_output():
    config = _config(Algorithm.FINDMIN, n=32, p=0.2, trials=8)
    pooled = replace(config, workers=2)
    assert run_trials(config).reports == run_trials(pooled).reports


def test_trial_streams_are_independent():
    a_instance, a_oracle = trial_streams(3, 0)
    b_instance, _ = trial_streams(3, 1)
    first = a_instance.integers(0, 2 ** 32, size=4).tolist()
    assert first != b_instance.integers(0, 2 ** 32, size=4).tolist()
    assert first != a_oracle.integers(0, 2 ** 32, size=4).tolist()


def test_csv_layout():
    text = _csv(run_trials(_config(Algorithm.TOURNAMENT, p=0.1)))
    header = [line for line in text.splitlines() if line.startswith("#")]
    assert header[0] == f"# schema: {SCHEMA_VERSION}"
    assert "# algorithm: tournament" in header
    assert "# k: null" in header
    frame = pd.read_csv(io.StringIO(text), comment="#")
    assert list(frame.columns) == TRIAL_COLUMNS
    assert len(frame) == 5
    assert (frame["micros"] == 0).all()


def test_timing_is_opt_in():
    result = run_trials(_config(Algorithm.FINDMIN, p=0.1, record_timing=True))
    assert all(r.micros >= 0 for r in result.reports)
    assert any(r.micros > 0 for r in result.reports)


def test_json_layout():
    result = run_trials(_config(Algorithm.FINDONE_DENSE, p=0.1))
    stream = io.StringIO()
    write_trials_json(result, stream)
    document = json.loads(stream.getvalue())
    assert document["schema"] == SCHEMA_VERSION
    assert document["config"]["algorithm"] == "findone-dense"
    assert len(document["trials"]) == 5
    assert document["summary"]["trials"] == 5
    assert document["trials"][0]["queries"] > 0


def test_success_matches_rank():
    config = _config(Algorithm.REDUCTION_TOURNAMENT, p=0.25, trials=10)
    for report in run_trials(config).reports:
        assert report.success == (report.true_rank < config.target_k)


@pytest.mark.parametrize("kwargs", [
    {"k": 64},
    {"p": 0.5},
    {"trials": 0},
    {"q": 0.7},
    {"seed": -1},
])
def test_invalid_configs_rejected(kwargs):
    with pytest.raises(InvalidParameterError):
        run_trials(_config(Algorithm.FTMIN, **kwargs))


def test_dense_algorithms_fix_k():
    assert target_k(Algorithm.TOURNAMENT, 64, None) == 48
    assert target_k(Algorithm.FINDMIN, 64, None) == 1
    with pytest.raises(InvalidParameterError):
        target_k(Algorithm.TOURNAMENT, 64, 10)
    with pytest.raises(InvalidParameterError):
        target_k(Algorithm.FTMIN, 64, None)


def test_truncated_round_validated():
    with pytest.raises(InvalidParameterError):
        _config(Algorithm.TRUNCATED_TOURNAMENT, i_max=7).validate()


def test_single_cell_sweep_matches_run_trials():
    config = _config(Algorithm.FTMIN, p=0.1)
    summary = sweep(config, [config.n], [config.k], [config.p])
    assert summary.rows == summarize_result(run_trials(config)).rows


def test_consecutive_ratios_follow_closed_form():
    config = _config(Algorithm.TOURNAMENT, k=None, p=0.1)
    summary = sweep(config, [64, 128], [None], [0.1])
    costs = [tournament_comparisons(n, config.fault_profile()) for n in (64, 128)]
    assert summary.consecutive_ratios() == pytest.approx([costs[0] / costs[1]])
    assert list(summary.to_frame()["n"]) == [64, 128]


def test_empty_grid_rejected():
    with pytest.raises(InvalidParameterError):
        sweep(_config(Algorithm.FTMIN), [], [16], [0.1])


def test_invalid_cell_stops_sweep_before_running():
    with pytest.raises(InvalidParameterError):
        sweep(_config(Algorithm.FTMIN), [64], [16, 64], [0.1])


def test_verify_gate_passes_on_small_sizes():
    result = verify_exactness(sizes=(8, 64), seeds=5)
    assert result.passed
    assert result.checked == 2 * 5 * len(Algorithm)


def test_verify_rejects_faults():
    with pytest.raises(InvalidParameterError):
        verify_exactness(p=0.5)


class TestCli:
    def test_run_writes_csv(self, tmp_path):
        out = tmp_path / "run.csv"
        code = main(["run", "--algo", "findmin", "--n", "16", "--p", "0.1", "--trials", "3",
                     "--seed", "4", "--out", str(out)])
        assert code == 0
        frame = pd.read_csv(out, comment="#")
        assert len(frame) == 3

    def test_run_is_byte_identical(self, tmp_path):
        args = ["run", "--algo", "ftmin", "--n", "64", "--k", "8", "--p", "0.1", "--trials", "3",
                "--seed", "9"]
        main(args + ["--out", str(tmp_path / "a.csv")])
        main(args + ["--out", str(tmp_path / "b.csv")])
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_seed_from_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv("NOISY_SELECT_SEED", "21")
        out = tmp_path / "env.csv"
        main(["run", "--algo", "findmin", "--n", "8", "--trials", "1", "--out", str(out)])
        assert "# seed: 21" in out.read_text()

    def test_invalid_config_exit_code(self, tmp_path):
        out = tmp_path / "bad.csv"
        code = main(["run", "--algo", "ftmin", "--n", "16", "--k", "16", "--out", str(out)])
        assert code == 2
        assert not out.exists()

    def test_invalid_sweep_writes_nothing(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main(["sweep", "--algo", "ftmin", "--n", "64", "--k", "8", "16", "--p", "0.5",
                     "--out", str(out)])
        assert code == 2
        assert not out.exists()

    def test_sweep_json(self, tmp_path):
        out = tmp_path / "sweep.json"
        code = main(["sweep", "--algo", "reduction-tournament", "--n", "64", "--k", "8", "16",
                     "--p", "0.1", "--trials", "2", "--format", "json", "--out", str(out)])
        assert code == 0
        document = json.loads(out.read_text())
        assert [row["k"] for row in document["summary"]] == [8, 16]

    def test_expectation_failure_exit_code(self, tmp_path):
        code = main(["run", "--algo", "findmin", "--n", "64", "--p", "0.45", "--q", "0.45",
                     "--rep-scale", "0.01", "--trials", "20", "--expect-success", "1.0",
                     "--out", str(tmp_path / "x.csv")])
        assert code == 1

    def test_verify_subcommand(self):
        assert main(["verify", "--n", "8", "--seeds", "2"]) == 0
        assert main(["verify", "--p", "0.5"]) == 2
