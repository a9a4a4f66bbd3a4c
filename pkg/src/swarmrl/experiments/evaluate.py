"""Policy evaluation: mean-distance profiles, capture curves, trajectories.

Learned checkpoints and the scripted controllers run through one acting
interface, so every evaluation compares policies under identical starting
conditions (shared per-episode seed lists).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from ..baselines.consensus import PDGains, consensus_pd_policy
from ..baselines.pursuit import greedy_chase_actions, surround_actions, voronoi_pursuit_actions
from ..env.graph import pairwise_distances
from ..env.swarm_env import SwarmEnv
from ..env.trajectory import step_records
from ..numkit import DiagGaussian
from ..policy.checkpoint import Checkpoint
from ..policy.network import sample_action
from ..trpo.rollout import WORKER_ENV_VAR


class TrainedPolicy:
    """Acting wrapper around a checkpoint (greedy or stochastic)."""

    def __init__(self, checkpoint: Checkpoint, greedy=True):
        self.checkpoint = checkpoint
        self.greedy = greedy
        self.net, _ = checkpoint.build_networks()
        self.params = checkpoint.policy_params

    def act(self, obs, env, rng):
        mean = self.net.forward(obs, self.params)
        bounds = env.task.action_bounds
        if self.greedy:
            return np.clip(mean, -bounds, bounds)
        dist = DiagGaussian(mean, self.net.log_std(self.params))
        return sample_action(dist, rng, bounds)


class ConsensusPolicy:
    def __init__(self, gains: PDGains = PDGains()):
        self.gains = gains

    def act(self, obs, env, rng):
        return consensus_pd_policy(env.states, env.adj, env.world, env.task, self.gains)


class VoronoiPursuitPolicy:
    def __init__(self, resolution=128):
        self.resolution = resolution

    def act(self, obs, env, rng):
        return voronoi_pursuit_actions(
            env.states, env.evaders[0], env.world, env.task, resolution=self.resolution
        )


class GreedyChasePolicy:
    def act(self, obs, env, rng):
        return greedy_chase_actions(env.states, env.evaders[0], env.world, env.task)


class SurroundPolicy:
    def act(self, obs, env, rng):
        return surround_actions(env.states, env.evaders[0], env.world, env.task)


class RandomPolicy:
    def act(self, obs, env, rng):
        bounds = env.task.action_bounds
        return rng.uniform(-bounds, bounds, size=(env.task.n_agents, 2))


class StillPolicy:
    def act(self, obs, env, rng):
        return np.zeros((env.task.n_agents, 2))


BASELINE_POLICIES = {
    "consensus": ConsensusPolicy,
    "voronoi": VoronoiPursuitPolicy,
    "chase": GreedyChasePolicy,
    "surround": SurroundPolicy,
    "random": RandomPolicy,
    "still": StillPolicy,
}


def mean_pairwise_distance(env) -> float:
    d = pairwise_distances(env.states[:, :2], env.world)
    iu = np.triu_indices(len(d), k=1)
    return float(d[iu].mean())


@dataclass
class EpisodeResult:
    distances: np.ndarray      # [horizon+1] mean pairwise distance per step
    capture_step: int | None   # first capture step, None if never
    episode_return: float
    records: list | None       # trajectory JSONL records, if requested


def run_episode(policy, task, world, seed, horizon, record=False) -> EpisodeResult:
    env_seed, act_seed = np.random.SeedSequence(seed).spawn(2)
    env = SwarmEnv(task, world, seed=env_seed)
    obs = env.reset()
    rng = np.random.default_rng(act_seed)
    distances = [mean_pairwise_distance(env)]
    capture_step = None
    total = 0.0
    records = [] if record else None
    for t in range(horizon):
        actions = policy.act(obs, env, rng)
        res = env.step(actions)
        obs = res.obs
        distances.append(mean_pairwise_distance(env))
        total += res.reward
        if record:
            caught = None
            if env.task.n_evaders:
                caught = [res.captured] * env.task.n_evaders
            records.extend(
                step_records(
                    res.t, env.states, res.reward, res.done,
                    env.evaders if env.task.n_evaders else None, caught,
                )
            )
        if res.captured and capture_step is None:
            capture_step = res.t
        if res.done:
            break
    pad = horizon + 1 - len(distances)
    if pad > 0:
        distances.extend([distances[-1]] * pad)  # terminal state persists
    return EpisodeResult(np.array(distances), capture_step, total, records)


def _episode_job(args):
    policy, task, world, seed, horizon, record = args
    return run_episode(policy, task, world, seed, horizon, record)


def run_episodes(policy, task, world, episodes, horizon, seed=0, record_first=0):
    """Shared seed list: episode e always starts from seed derivation (seed, e)."""
    jobs = [
        (policy, task, world, (int(seed), e), horizon, e < record_first)
        for e in range(episodes)
    ]
    n_procs = int(os.environ.get(WORKER_ENV_VAR, "1") or "1")
    if n_procs > 1 and episodes > 1:
        with ProcessPoolExecutor(max_workers=n_procs) as pool:
            return list(pool.map(_episode_job, jobs))
    return [_episode_job(j) for j in jobs]


@dataclass
class EvalReport:
    kind: str                       # "distance" | "capture"
    profile: np.ndarray             # per-timestep metric
    episode_returns: np.ndarray
    capture_steps: list | None = None

    def summary(self):
        out = {
            "episodes": len(self.episode_returns),
            "mean_return": float(self.episode_returns.mean()),
            "median_return": float(np.median(self.episode_returns)),
        }
        if self.kind == "distance":
            out["final_mean_distance"] = float(self.profile[-1])
        else:
            out["final_capture_fraction"] = float(self.profile[-1])
        return out


def evaluate_mean_distance(policy, task, world, episodes, horizon, seed=0,
                           record_first=0) -> tuple:
    """Per-timestep mean over episodes of the mean pairwise distance."""
    results = run_episodes(policy, task, world, episodes, horizon, seed, record_first)
    profile = np.mean([r.distances for r in results], axis=0)
    report = EvalReport(
        "distance", profile, np.array([r.episode_return for r in results])
    )
    return report, results


def evaluate_capture(policy, task, world, episodes, horizon, seed=0,
                     record_first=0) -> tuple:
    """Fraction of episodes with a capture at or before each time step."""
    results = run_episodes(policy, task, world, episodes, horizon, seed, record_first)
    curve = np.zeros(horizon + 1)
    for r in results:
        if r.capture_step is not None:
            curve[r.capture_step :] += 1.0
    curve /= len(results)
    report = EvalReport(
        "capture", curve, np.array([r.episode_return for r in results]),
        capture_steps=[r.capture_step for r in results],
    )
    return report, results


def cross_scale_task(checkpoint: Checkpoint, n_agents: int):
    """Re-target a checkpoint's task to a different agent count.

    Size-invariant encoders run unchanged; the concatenation encoder has a
    fixed input capacity and is rejected at larger swarm sizes.
    """
    if checkpoint.embedding.kind == "concat" and n_agents > checkpoint.task.n_agents:
        cap = checkpoint.embedding.max_neighbors
        raise ValueError(
            "concatenation policies have a fixed input width of "
            f"{cap} neighbors and cannot run with {n_agents} agents "
            f"(trained with {checkpoint.task.n_agents}); "
            "use a set-size-invariant embedding for cross-scale execution"
        )
    return replace(checkpoint.task, n_agents=n_agents)


def top_q_median(curves, q):
    """Per-iteration median over the q trials with the highest final return.

    `curves` are lists of row dicts as read from curve.csv files.
    """
    if len(curves) < q:
        raise ValueError(f"need at least q={q} trials, got {len(curves)}")
    lengths = {len(c) for c in curves}
    if len(lengths) != 1:
        raise ValueError("trials have different lengths")
    ranked = sorted(curves, key=lambda c: c[-1]["avg_return"], reverse=True)[:q]
    out = []
    for rows in zip(*ranked):
        out.append(
            {
                "iter": rows[0]["iter"],
                "median_avg_return": float(np.median([r["avg_return"] for r in rows])),
            }
        )
    return out
