"""Training loop: collect, subsample, fit baseline, update, log."""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..policy.checkpoint import save_checkpoint
from ..policy.network import build_policy
from .batch import compute_advantages, compute_returns, subsample_agents
from .rollout import collect_rollouts
from .update import fit_value, trpo_update

CURVE_HEADER = [
    "iter",
    "samples",
    "avg_return",
    "mean_kl",
    "surrogate_improvement",
    "value_loss",
    "wall_time_s",
]


@dataclass(frozen=True)
class TrainerConfig:
    workers: int = 10
    steps_per_worker: int = 2048
    subsample: int = 8          # agents kept per worker
    kl_delta: float = 0.01
    discount: float = 0.99
    cg_iters: int = 10
    cg_damping: float = 0.1
    cg_subsample: int = 5        # stride of the Fisher-vector-product batch
    backtracks: int = 10
    backtrack_factor: float = 0.8
    value_epochs: int = 5
    value_lr: float = 1e-2
    value_minibatch: int = 2048
    iterations: int = 100
    seed: int = 0
    checkpoint_every: int = 50

    def validate(self):
        errs = []
        for name in (
            "workers", "steps_per_worker", "subsample", "cg_iters", "cg_subsample",
            "backtracks", "value_minibatch", "iterations",
        ):
            if getattr(self, name) < 1:
                errs.append(f"{name} must be >= 1")
        for name in ("kl_delta", "cg_damping", "value_lr"):
            if getattr(self, name) <= 0:
                errs.append(f"{name} must be positive")
        if not 0.0 <= self.discount <= 1.0:
            errs.append("discount must lie in [0, 1]")
        if not 0.0 < self.backtrack_factor < 1.0:
            errs.append("backtrack_factor must lie in (0, 1)")
        if self.value_epochs < 0 or self.checkpoint_every < 0:
            errs.append("value_epochs and checkpoint_every must be >= 0")
        return errs


@dataclass
class IterationRecord:
    iteration: int
    samples: int
    avg_return: float
    mean_kl: float
    surrogate_improvement: float
    value_loss: float
    wall_time_s: float

    def row(self):
        return [
            self.iteration,
            self.samples,
            f"{self.avg_return:.10g}",
            f"{self.mean_kl:.10g}",
            f"{self.surrogate_improvement:.10g}",
            f"{self.value_loss:.10g}",
            f"{self.wall_time_s:.6g}",
        ]


def write_curve(path, records):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CURVE_HEADER)
        for rec in records:
            writer.writerow(rec.row())


def read_curve(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CURVE_HEADER:
            raise ValueError(f"unexpected curve header {reader.fieldnames}")
        return [
            {k: (int(row[k]) if k in ("iter", "samples") else float(row[k])) for k in row}
            for row in reader
        ]


@dataclass
class TrainResult:
    policy_params: np.ndarray
    value_params: np.ndarray
    records: list = field(default_factory=list)


def train(task, world, embedding, config: TrainerConfig, hidden=(64,), out_dir=None,
          log=None, stop_when=None) -> TrainResult:
    """Run parameter-sharing trust-region training; deterministic given seed.

    `stop_when(records)` is consulted after each iteration and ends the run
    early when it returns True (the records list stays as produced so far).
    """
    errs = config.validate()
    if errs:
        raise ValueError("invalid trainer config: " + "; ".join(errs))
    policy = build_policy(task, world, embedding, hidden=hidden)
    value = build_policy(task, world, embedding, hidden=hidden, value=True)
    root = np.random.SeedSequence(config.seed)
    init_seed, sub_seed, value_seed = root.spawn(3)
    policy_params = policy.init_params(np.random.default_rng(init_seed))
    value_params = value.init_params(np.random.default_rng(value_seed))
    sub_rng = np.random.default_rng(sub_seed)
    value_rng = np.random.default_rng(value_seed.spawn(1)[0])

    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        (out / "checkpoints").mkdir(parents=True, exist_ok=True)

    records = []
    expected = config.workers * config.steps_per_worker * min(
        config.subsample, task.n_agents
    )
    for it in range(config.iterations):
        t0 = time.perf_counter()
        batch = collect_rollouts(
            task, world, embedding, hidden, policy_params,
            config.workers, config.steps_per_worker, config.seed, iteration=it,
        )
        batch = subsample_agents(batch, config.subsample, sub_rng)
        if len(batch) != expected:
            raise AssertionError(
                f"sample-count identity violated: {len(batch)} != {expected}"
            )
        batch = compute_returns(batch, config.discount)
        value_params, _, value_loss = fit_value(
            value, value_params, batch,
            epochs=config.value_epochs, lr=config.value_lr,
            minibatch=config.value_minibatch, rng=value_rng,
        )
        batch = compute_advantages(batch, value, value_params)
        policy_params, stats = trpo_update(
            policy, policy_params, batch,
            kl_delta=config.kl_delta, cg_iters=config.cg_iters,
            cg_damping=config.cg_damping, backtracks=config.backtracks,
            backtrack_factor=config.backtrack_factor, cg_subsample=config.cg_subsample,
        )
        rec = IterationRecord(
            iteration=it,
            samples=len(batch),
            avg_return=float(np.mean(batch.episode_returns)),
            mean_kl=stats.kl,
            surrogate_improvement=stats.improvement,
            value_loss=value_loss,
            wall_time_s=time.perf_counter() - t0,
        )
        records.append(rec)
        if log is not None:
            log(rec, stats)
        stopping = stop_when is not None and stop_when(records)
        if out is not None:
            write_curve(out / "curve.csv", records)
            last = stopping or it == config.iterations - 1
            if config.checkpoint_every and (it % config.checkpoint_every == 0 or last):
                save_checkpoint(
                    out / "checkpoints" / f"iter_{it:05d}.ckpt",
                    task, world, embedding, hidden, policy_params, value_params,
                )
        if stopping:
            break
    return TrainResult(policy_params, value_params, records)
