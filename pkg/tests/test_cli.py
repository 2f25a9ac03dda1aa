import json

import pytest

from shared.record_sink import load_records
from zigzag.cli import ExperimentConfig, SamplerSpec, build_parser, main
from zigzag.cli.app import resolve_config
from zigzag.driver import TrajectoryRecord
from zigzag.lagrange import EigenRunRecord
from zigzag.linesearch import Strategy


@pytest.fixture(autouse=True)
def _logging(restore_logging, monkeypatch):
    monkeypatch.delenv("ZIGZAG_OUTPUT_DIR", raising=False)
    monkeypatch.delenv("ZIGZAG_WORKERS", raising=False)


def _summary(path):
    return json.loads((path / "summary.json").read_text())


def test_presets_listing(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    assert "Rosenbrock-wide" in out
    assert "Beale" in out


def test_unknown_function_is_usage_error(tmp_path, capsys):
    assert main(["run", "--function", "Rastrigin", "--out", str(tmp_path)]) == 2
    assert "Rastrigin" in capsys.readouterr().err


def test_unknown_strategy_is_rejected_by_parser():
    with pytest.raises(SystemExit) as e:
        main(["run", "--function", "Quadratic", "--strategy", "Szz-Mxx-Cval"])
    assert e.value.code == 2


def test_run_without_function_is_usage_error(tmp_path):
    assert main(["run", "--out", str(tmp_path)]) == 2


def test_run_writes_records_and_summary(tmp_path, capsys):
    code = main(
        ["run", "--function", "Quadratic", "--strategy", "Szzp-Mlm-Ctau", "--out", str(tmp_path)]
    )
    assert code == 0
    summary = _summary(tmp_path)
    assert summary["runs"] == 4
    assert summary["converged"] == 4
    assert summary["outcomes"] == {"minimum": 4}
    records = load_records(tmp_path / "trajectories.jsonl")
    assert all(isinstance(r, TrajectoryRecord) for r in records)
    assert [r.run_id for r in records][0] == "Quadratic:Szzp-Mlm-Ctau:0"
    assert (tmp_path / "alpha_logs.jsonl").exists()
    assert "4/4 converged" in capsys.readouterr().out


def test_reruns_write_identical_bytes(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    for out in (first, second):
        assert main(["run", "--function", "Himmelblau", "--count", "3", "--out", str(out)]) == 0
    for name in ("trajectories.jsonl", "alpha_logs.jsonl", "summary.json"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_config_file_with_flag_override(tmp_path):
    config = tmp_path / "experiment.json"
    config.write_text(
        json.dumps(
            {
                "format_version": 1,
                "function": "Himmelblau",
                "strategy": "Sno-Mno-Cval2",
                "starts": [[1.0, 1.0], [-4.0, 4.0]],
                "limits": {"max_steps": 20},
            }
        )
    )
    out = tmp_path / "out"
    assert main(["run", "--config", str(config), "--function", "Quadratic", "--out", str(out)]) == 0
    summary = _summary(out)
    assert summary["function"] == "Quadratic"
    assert summary["strategy"] == "Sno-Mno-Cval2"
    assert summary["runs"] == 2


def test_bad_config_version_is_usage_error(tmp_path, capsys):
    config = tmp_path / "experiment.json"
    config.write_text(json.dumps({"format_version": 2, "function": "Quadratic"}))
    assert main(["run", "--config", str(config), "--out", str(tmp_path)]) == 2
    assert "format_version" in capsys.readouterr().err


def test_missing_config_file_is_usage_error(tmp_path):
    assert main(["run", "--config", str(tmp_path / "nope.json")]) == 2


def test_scan_writes_grids_and_curves(tmp_path):
    args = ["scan", "--function", "Quadratic", "--resolution", "6", "6", "--out", str(tmp_path)]
    assert main(args) == 0
    for name in ("grid_tau.txt", "grid_det_hess.txt", "mask.txt", "curves_tau_minus_one.txt"):
        assert (tmp_path / name).exists()
    summary = _summary(tmp_path)
    assert summary["resolution"] == [6, 6]
    assert summary["masked_cells"] == 0
    assert summary["curves"] == {"tau_minus_one": 0, "det_hess": 0}


def test_eigen_experiment(tmp_path):
    args = ["eigen", "--n", "3", "--runs", "2", "--seed", "4", "--out", str(tmp_path)]
    assert main(args) == 0
    lines = (tmp_path / "eigen_runs.jsonl").read_text().splitlines()
    assert len(lines) == 2
    records = load_records(tmp_path / "eigen_runs.jsonl")
    assert all(isinstance(r, EigenRunRecord) and r.n == 3 and r.seed == 4 for r in records)
    summary = _summary(tmp_path)
    assert summary["spectrum"] == [1.0, 2.0, 4.0]


def test_output_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("ZIGZAG_OUTPUT_DIR", str(tmp_path))
    assert main(["run", "--function", "Quadratic", "--strategy", "Sno-Mno-Cval2"]) == 0
    assert (tmp_path / "trajectories.jsonl").exists()


def test_seed_and_count_replace_configured_starts():
    args = build_parser().parse_args(["run", "--function", "Beale", "--seed", "9", "--count", "5"])
    config = resolve_config(args)
    assert config.starts is None
    assert config.sampler == SamplerSpec(count=5, seed=9)
    assert config.strategy is Strategy.SZZP


def test_sampler_draws_inside_window():
    window = (-1.0, 4.0, -1.5, 1.5)
    points = SamplerSpec(count=50, seed=2).draw(window)
    assert len(points) == 50
    assert all(-1.0 <= x <= 4.0 and -1.5 <= y <= 1.5 for x, y in points)
    assert points == SamplerSpec(count=50, seed=2).draw(window)


def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError):
        ExperimentConfig(function="Quadratic", colour="red")
    with pytest.raises(ValueError):
        ExperimentConfig(resolution=(1, 10))
