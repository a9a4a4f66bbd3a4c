import csv
import json
from pathlib import Path

import numpy as np
import pytest

from swarmrl.env import WorldConfig, pursuit_task, rendezvous_task
from swarmrl.experiments import (
    ConfigError,
    ExperimentConfig,
    StillPolicy,
    TrainedPolicy,
    cross_scale_task,
    evaluate_capture,
    evaluate_mean_distance,
    read_aggregated_csv,
    read_profile_csv,
    read_returns_csv,
    top_q_median,
)
from swarmrl.experiments.cli import main as cli_main
from swarmrl.policy import EmbeddingSpec, load_checkpoint

SMOKE = [
    "--task", "rendezvous", "--agents", "4", "--dynamics", "single",
    "--embedding", "nn-mean", "--iters", "2", "--seed", "7",
    "--episode-len", "8", "--rollout-workers", "1", "--steps-per-worker", "16",
    "--subsample", "4", "--hidden", "16",
]


def read_text_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


# ------------------------------------------------------------------------ train


def test_smoke_train_writes_all_artifacts(tmp_path):
    out = tmp_path / "run"
    assert cli_main(["train", *SMOKE, "--out", str(out)]) == 0
    assert (out / "config.snapshot").exists()
    assert (out / "curve.csv").exists()
    assert (out / "final.ckpt").exists()
    assert list((out / "checkpoints").glob("*.ckpt"))
    rows = read_text_rows(out / "curve.csv")
    assert len(rows) == 2
    cfg = ExperimentConfig.from_json((out / "config.snapshot").read_text())
    assert cfg.task.n_agents == 4


def test_invalid_config_rejected_before_compute(tmp_path):
    cfg = ExperimentConfig.from_dict(
        {
            "task": {"task": "rendezvous", "n_agents": 4, "dynamics": "single"},
            "include_relative_velocity": True,
        }
    )
    path = tmp_path / "cfg.json"
    path.write_text(cfg.to_json())
    code = cli_main(["train", "--config", str(path), "--out", str(tmp_path / "o")])
    assert code == 2
    assert not (tmp_path / "o").exists()  # rejected before any artifact


def test_config_error_lists_all_violations():
    cfg = ExperimentConfig.from_dict(
        {
            "task": {"task": "pursuit", "n_agents": 1, "n_evaders": 0, "d_c": -3},
            "embedding": {"kind": "histogram"},
        }
    )
    with pytest.raises(ConfigError) as err:
        cfg.check()
    text = str(err.value)
    assert "at least 2 agents" in text
    assert "at least one evader" in text
    assert "d_c must be positive" in text


def test_histogram_requires_basic_set():
    cfg = ExperimentConfig.from_dict(
        {
            "task": {"task": "rendezvous", "n_agents": 4, "feature_set": "extended",
                      "dynamics": "single", "observability": "global"},
            "embedding": {"kind": "histogram"},
        }
    )
    errs = cfg.validate()
    assert any("restricted to the basic feature set" in e for e in errs)


def test_rerun_same_seed_reproduces_curve(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    cli_main(["train", *SMOKE, "--out", str(a)])
    cli_main(["train", *SMOKE, "--out", str(b)])
    # identical except the timing column, which measures the host, not the run
    rows_a, rows_b = read_text_rows(a / "curve.csv"), read_text_rows(b / "curve.csv")
    for ra, rb in zip(rows_a, rows_b):
        for key in ra:
            if key != "wall_time_s":
                assert ra[key] == rb[key]


def test_print_config_is_canonical(tmp_path, capsys):
    assert cli_main(["train", *SMOKE, "--print-config", "--out", str(tmp_path)]) == 0
    text = capsys.readouterr().out
    cfg = ExperimentConfig.from_json(text)
    assert cfg.to_json() == text  # canonical round trip


def test_trials_write_separate_runs(tmp_path):
    out = tmp_path / "multi"
    assert cli_main(["train", *SMOKE, "--trials", "2", "--out", str(out)]) == 0
    assert (out / "trial_00" / "curve.csv").exists()
    assert (out / "trial_01" / "curve.csv").exists()
    r0 = read_text_rows(out / "trial_00" / "curve.csv")
    r1 = read_text_rows(out / "trial_01" / "curve.csv")
    assert r0[0]["avg_return"] != r1[0]["avg_return"]  # different trial seeds


# ------------------------------------------------------------------- evaluation


def test_still_policy_constant_distance_profile():
    task = rendezvous_task(n_agents=2, dynamics="single", episode_len=16)
    world = WorldConfig()
    report, _ = evaluate_mean_distance(StillPolicy(), task, world, episodes=3, horizon=16)
    assert len(report.profile) == 17
    assert np.ptp(report.profile) == pytest.approx(0.0, abs=1e-12)


def test_eval_cli_on_checkpoint(tmp_path):
    out = tmp_path / "run"
    cli_main(["train", *SMOKE, "--out", str(out)])
    ev = tmp_path / "eval"
    code = cli_main(
        ["eval", "--checkpoint", str(out / "final.ckpt"), "--episodes", "3",
         "--horizon", "12", "--traj", "2", "--out", str(ev)]
    )
    assert code == 0
    _, profile = read_profile_csv(ev / "eval" / "distance_profile.csv")
    assert len(profile) == 13  # horizon + 1
    returns = read_returns_csv(ev / "eval" / "returns.csv")
    assert len(returns) == 3
    assert (ev / "traj" / "episode_000.jsonl").exists()
    assert (ev / "traj" / "episode_001.jsonl").exists()
    summary = json.loads((ev / "eval" / "summary.json").read_text())
    assert summary["episodes"] == 3


def test_eval_shared_seeds_identical_initial_conditions():
    task = rendezvous_task(n_agents=3, dynamics="single", episode_len=8)
    world = WorldConfig()
    a, res_a = evaluate_mean_distance(StillPolicy(), task, world, 4, 8, seed=5)
    class Wiggle:
        def act(self, obs, env, rng):
            return np.full((3, 2), 0.1)
    b, res_b = evaluate_mean_distance(Wiggle(), task, world, 4, 8, seed=5)
    for ra, rb in zip(res_a, res_b):
        assert ra.distances[0] == pytest.approx(rb.distances[0])  # same init


def test_capture_eval_monotone_and_bounded(tmp_path):
    task = pursuit_task(n_agents=4, episode_len=64, voronoi_grid=32)
    world = WorldConfig(boundary="toroidal")
    from swarmrl.experiments import GreedyChasePolicy

    report, _ = evaluate_capture(GreedyChasePolicy(), task, world, episodes=6, horizon=64)
    prof = report.profile
    assert len(prof) == 65
    assert all(b >= a for a, b in zip(prof, prof[1:]))
    assert 0.0 <= prof.min() and prof.max() <= 1.0


def test_baseline_cli_pursuit(tmp_path):
    out = tmp_path / "base"
    code = cli_main(
        ["baseline", "--baseline", "chase", "--task", "pursuit", "--agents", "4",
         "--dynamics", "single", "--episodes", "2", "--horizon", "16",
         "--out", str(out)]
    )
    assert code == 0
    assert (out / "eval" / "capture_curve.csv").exists()


# ------------------------------------------------------------------ cross-scale


def make_checkpoint(tmp_path, kind="nn-mean"):
    out = tmp_path / f"ck_{kind}"
    cli_main(["train", *SMOKE[:-2], "--embedding", kind, "--out", str(out)])
    return out / "final.ckpt"


def test_cross_scale_runs_other_sizes(tmp_path):
    ck_path = make_checkpoint(tmp_path)
    ck = load_checkpoint(ck_path)
    for n in (2, 8, 16):
        task = cross_scale_task(ck, n)
        policy = TrainedPolicy(ck)
        report, _ = evaluate_mean_distance(policy, task, ck.world, 1, 4)
        assert np.all(np.isfinite(report.profile))


def test_concat_rejected_at_larger_scale(tmp_path):
    ck_path = make_checkpoint(tmp_path, kind="concat")
    ck = load_checkpoint(ck_path)
    with pytest.raises(ValueError, match="fixed input width"):
        cross_scale_task(ck, 8)
    # smaller swarms still run: capacity simply truncates less
    task = cross_scale_task(ck, 3)
    report, _ = evaluate_mean_distance(TrainedPolicy(ck), task, ck.world, 1, 4)
    assert np.all(np.isfinite(report.profile))


def test_eval_cli_cross_scale_exit_codes(tmp_path):
    ck_path = make_checkpoint(tmp_path, kind="concat")
    ok = cli_main(["eval", "--checkpoint", str(ck_path), "--agents", "3",
                   "--episodes", "1", "--horizon", "4", "--out", str(tmp_path / "s")])
    assert ok == 0
    bad = cli_main(["eval", "--checkpoint", str(ck_path), "--agents", "9",
                    "--episodes", "1", "--horizon", "4", "--out", str(tmp_path / "l")])
    assert bad == 2


# -------------------------------------------------------------------- aggregate


def curve_rows(final, iters=4):
    return [
        {"iter": it, "samples": 64, "avg_return": -5.0 + final * (it + 1) / iters,
         "mean_kl": 0.01, "surrogate_improvement": 0.001, "value_loss": 1.0,
         "wall_time_s": 0.1}
        for it in range(iters)
    ]


def test_top_q_one_returns_best():
    curves = [curve_rows(1.0), curve_rows(3.0), curve_rows(2.0)]
    out = top_q_median(curves, 1)
    assert [r["median_avg_return"] for r in out] == [r["avg_return"] for r in curves[1]]


def test_top_q_identical_trials():
    curves = [curve_rows(2.0)] * 3
    out = top_q_median(curves, 3)
    assert [r["median_avg_return"] for r in out] == [r["avg_return"] for r in curves[0]]


def test_top_q_median_of_top_two():
    curves = [curve_rows(1.0), curve_rows(2.0), curve_rows(3.0)]
    out = top_q_median(curves, 2)
    # top two trials end at 2.0 and 3.0; medians average them per iteration
    expected = [
        (a["avg_return"] + b["avg_return"]) / 2.0
        for a, b in zip(curves[1], curves[2])
    ]
    assert [r["median_avg_return"] for r in out] == pytest.approx(expected)


def test_top_q_requires_enough_trials():
    with pytest.raises(ValueError):
        top_q_median([curve_rows(1.0)], 2)


def test_aggregate_cli_round_trip(tmp_path):
    from swarmrl.trpo.trainer import IterationRecord, write_curve

    paths = []
    for t, final in enumerate([1.0, 2.0, 3.0]):
        rows = [
            IterationRecord(it, 64, -5.0 + final * (it + 1) / 4, 0.01, 0.001, 1.0, 0.1)
            for it in range(4)
        ]
        p = tmp_path / f"curve_{t}.csv"
        write_curve(p, rows)
        paths.append(str(p))
    out = tmp_path / "agg.csv"
    assert cli_main(["aggregate", "--in", *paths, "--q", "2", "--out", str(out)]) == 0
    rows = read_aggregated_csv(out)
    assert len(rows) == 4
    assert rows[-1]["median_avg_return"] == pytest.approx(-5.0 + 2.5)
