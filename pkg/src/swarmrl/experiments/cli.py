"""Command-line entry points: train, eval, baseline, aggregate."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from ..env.tasks import TaskConfig
from ..env.world import WorldConfig
from ..policy.checkpoint import load_checkpoint, save_checkpoint
from ..policy.spec import EmbeddingSpec
from ..trpo.trainer import TrainerConfig, train
from .artifacts import write_aggregated_csv, write_eval_report
from .config import ConfigError, EvalConfig, ExperimentConfig
from .evaluate import (
    BASELINE_POLICIES,
    TrainedPolicy,
    cross_scale_task,
    evaluate_capture,
    evaluate_mean_distance,
    top_q_median,
)

EMBEDDING_NAMES = {
    "nn-mean": "nn_mean",
    "hist": "histogram",
    "rbf": "rbf",
    "softmax": "softmax",
    "max": "max",
    "concat": "concat",
    "moments": "moments",
}


def _add_task_flags(p):
    p.add_argument("--task", choices=["rendezvous", "pursuit", "multi-pursuit"])
    p.add_argument("--agents", type=int, help="number of agents N")
    p.add_argument("--evaders", type=int, help="number of evaders E")
    p.add_argument("--dynamics", choices=["single", "double"])
    p.add_argument("--obs", choices=["basic", "extended", "comm"], help="feature set")
    p.add_argument("--observability", choices=["global", "local"])
    p.add_argument("--boundary", choices=["closed", "toroidal"])
    p.add_argument("--dc", type=float, help="communication cut-off d_c")
    p.add_argument("--do", dest="d_o", type=float, help="evader observation radius d_o")
    p.add_argument("--episode-len", type=int)


def _add_embedding_flags(p):
    p.add_argument("--embedding", choices=sorted(EMBEDDING_NAMES), help="set encoder")
    p.add_argument("--alpha", type=float, help="softmax pooling temperature")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="swarmrl",
        description="Swarm RL workbench: mean-embedding policies with trust-region training",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("train", help="train a policy")
    _add_task_flags(t)
    _add_embedding_flags(t)
    t.add_argument("--config", type=Path, help="JSON experiment config to start from")
    t.add_argument("--iters", type=int, help="TRPO iterations")
    t.add_argument("--trials", type=int, help="independent trials (seed offsets)")
    t.add_argument("--seed", type=int)
    t.add_argument("--out", type=Path, help="output directory")
    t.add_argument("--rollout-workers", type=int, help="logical sampling workers")
    t.add_argument("--steps-per-worker", type=int)
    t.add_argument("--subsample", type=int, help="agents kept per worker")
    t.add_argument("--hidden", type=int, nargs="+", help="trunk hidden sizes")
    t.add_argument("--print-config", action="store_true",
                   help="print the canonical config and exit")

    e = sub.add_parser("eval", help="evaluate a checkpoint")
    e.add_argument("--checkpoint", type=Path, required=True)
    e.add_argument("--agents", type=int, help="override N (cross-scale execution)")
    e.add_argument("--episodes", type=int, default=100)
    e.add_argument("--horizon", type=int)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--stochastic", action="store_true", help="sample instead of greedy")
    e.add_argument("--traj", type=int, default=1, help="episodes exported as JSONL")
    e.add_argument("--out", type=Path, required=True)

    b = sub.add_parser("baseline", help="evaluate a scripted controller")
    _add_task_flags(b)
    b.add_argument("--baseline", choices=sorted(BASELINE_POLICIES), required=True)
    b.add_argument("--episodes", type=int, default=100)
    b.add_argument("--horizon", type=int)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--traj", type=int, default=1)
    b.add_argument("--out", type=Path, required=True)

    a = sub.add_parser("aggregate", help="top-q median over trial learning curves")
    a.add_argument("--in", dest="inputs", type=Path, nargs="+", required=True)
    a.add_argument("--q", type=int, default=5)
    a.add_argument("--out", type=Path, required=True)
    return ap


def _experiment_from_args(args) -> ExperimentConfig:
    if getattr(args, "config", None):
        cfg = ExperimentConfig.from_json(Path(args.config).read_text())
    else:
        cfg = ExperimentConfig()
    task_over = {
        k: v
        for k, v in {
            "task": args.task,
            "n_agents": args.agents,
            "n_evaders": args.evaders,
            "dynamics": args.dynamics,
            "feature_set": args.obs,
            "observability": args.observability,
            "d_c": args.dc,
            "d_o": args.d_o,
            "episode_len": args.episode_len,
        }.items()
        if v is not None
    }
    if task_over.get("task") == "pursuit" and "n_evaders" not in task_over:
        task_over.setdefault("n_evaders", 1)
    if task_over.get("task") == "multi-pursuit" and "n_evaders" not in task_over:
        task_over.setdefault("n_evaders", 5)
    task = dataclasses.replace(cfg.task, **task_over)
    world = cfg.world
    if args.boundary:
        world = dataclasses.replace(world, boundary=args.boundary)
    elif getattr(args, "config", None) is None and task.task != "rendezvous":
        world = dataclasses.replace(world, boundary="toroidal")
    emb_over = {}
    if getattr(args, "embedding", None):
        emb_over["kind"] = EMBEDDING_NAMES[args.embedding]
    if getattr(args, "alpha", None) is not None:
        emb_over["alpha"] = args.alpha
    embedding = dataclasses.replace(cfg.embedding, **emb_over)
    trainer_over = {
        k: v
        for k, v in {
            "iterations": getattr(args, "iters", None),
            "seed": getattr(args, "seed", None),
            "workers": getattr(args, "rollout_workers", None),
            "steps_per_worker": getattr(args, "steps_per_worker", None),
            "subsample": getattr(args, "subsample", None),
        }.items()
        if v is not None
    }
    trainer = dataclasses.replace(cfg.trainer, **trainer_over)
    over = {}
    if getattr(args, "trials", None) is not None:
        over["trials"] = args.trials
    if getattr(args, "out", None) is not None:
        over["out_dir"] = str(args.out)
    if getattr(args, "hidden", None):
        over["hidden"] = tuple(args.hidden)
    return dataclasses.replace(
        cfg, task=task, world=world, embedding=embedding, trainer=trainer, **over
    )


def cmd_train(args) -> int:
    cfg = _experiment_from_args(args)
    if args.print_config:
        sys.stdout.write(cfg.to_json())
        return 0
    cfg.check()
    cfg = dataclasses.replace(cfg, embedding=cfg.resolved_embedding())
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "config.snapshot").write_text(cfg.to_json())

    def progress(rec, stats):
        flag = "accepted" if stats.accepted else "rejected"
        print(
            f"iter {rec.iteration:4d}  return {rec.avg_return:10.3f}  "
            f"kl {rec.mean_kl:.5f}  improve {rec.surrogate_improvement:.5f}  "
            f"vloss {rec.value_loss:10.4f}  [{flag}] {rec.wall_time_s:.1f}s",
            flush=True,
        )

    for trial in range(cfg.trials):
        trial_dir = out if cfg.trials == 1 else out / f"trial_{trial:02d}"
        trial_dir.mkdir(parents=True, exist_ok=True)
        trainer = dataclasses.replace(cfg.trainer, seed=cfg.trainer.seed + trial)
        if cfg.trials > 1:
            print(f"--- trial {trial} (seed {trainer.seed}) ---", flush=True)
        result = train(
            cfg.task, cfg.world, cfg.embedding, trainer,
            hidden=cfg.hidden, out_dir=trial_dir, log=progress,
        )
        save_checkpoint(
            trial_dir / "final.ckpt",
            cfg.task, cfg.world, cfg.embedding, cfg.hidden,
            result.policy_params, result.value_params,
        )
    return 0


def _write_eval_outputs(out, cfg_text, task, world, policy, episodes, horizon, seed, traj):
    out.mkdir(parents=True, exist_ok=True)
    (out / "config.snapshot").write_text(cfg_text)
    if task.task == "rendezvous":
        report, results = evaluate_mean_distance(
            policy, task, world, episodes, horizon, seed, record_first=traj
        )
    else:
        report, results = evaluate_capture(
            policy, task, world, episodes, horizon, seed, record_first=traj
        )
    write_eval_report(out, report, results)
    print(f"wrote {report.kind} evaluation over {episodes} episodes to {out}")
    for key, val in report.summary().items():
        print(f"  {key}: {val}")
    return 0


def cmd_eval(args) -> int:
    ck = load_checkpoint(args.checkpoint)
    task = ck.task
    if args.agents is not None and args.agents != task.n_agents:
        task = cross_scale_task(ck, args.agents)
    horizon = args.horizon or EvalConfig().resolved_horizon(task)
    policy = TrainedPolicy(ck, greedy=not args.stochastic)
    # the config snapshot for an evaluation records the checkpoint provenance
    snapshot = {
        "checkpoint": str(args.checkpoint),
        "agents": task.n_agents,
        "episodes": args.episodes,
        "horizon": horizon,
        "seed": args.seed,
        "greedy": not args.stochastic,
    }
    return _write_eval_outputs(
        Path(args.out), json.dumps(snapshot, sort_keys=True, indent=2) + "\n",
        task, ck.world, policy, args.episodes, horizon, args.seed, args.traj,
    )


def cmd_baseline(args) -> int:
    cfg = _experiment_from_args(args)
    errs = cfg.task.validate()
    if errs:
        raise ConfigError(errs)
    horizon = args.horizon or EvalConfig().resolved_horizon(cfg.task)
    policy = BASELINE_POLICIES[args.baseline]()
    snapshot = dataclasses.replace(cfg, out_dir=str(args.out)).to_json()
    return _write_eval_outputs(
        Path(args.out), snapshot, cfg.task, cfg.world, policy,
        args.episodes, horizon, args.seed, args.traj,
    )


def cmd_aggregate(args) -> int:
    from ..trpo.trainer import read_curve

    curves = [read_curve(p) for p in args.inputs]
    rows = top_q_median(curves, args.q)
    write_aggregated_csv(args.out, rows)
    print(f"aggregated {len(curves)} curves (top {args.q}) into {args.out}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "train":
            return cmd_train(args)
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "baseline":
            return cmd_baseline(args)
        return cmd_aggregate(args)
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
