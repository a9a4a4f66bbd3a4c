"""Parallel rollout collection with frozen policy parameters.

Each logical worker owns an environment and a random stream derived from
(seed, iteration, worker id); results are merged in worker order, so the
collected batch is bit-identical no matter how many OS processes execute the
workers.  The process count is controlled by the SWARMRL_WORKERS environment
variable (default: in-process serial execution).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ..env.observe import JointObs
from ..env.swarm_env import SwarmEnv
from ..numkit import DiagGaussian, gaussian_logprob
from ..policy.network import build_policy, sample_action
from .batch import Batch, merge_batches

WORKER_ENV_VAR = "SWARMRL_WORKERS"


def _worker_payload(task, world, embedding, hidden, params, steps, seed_key):
    """Run one worker's environment for `steps` steps; returns a Batch."""
    policy = build_policy(task, world, embedding, hidden=hidden)
    root = np.random.SeedSequence(seed_key)
    env_seed, action_seed = root.spawn(2)
    env = SwarmEnv(task, world, seed=env_seed)
    action_rng = np.random.default_rng(action_seed)
    n = task.n_agents
    bounds = task.action_bounds
    log_std = policy.log_std(params)

    obs = env.reset()
    neighbors, masks, locs, evaders, evader_masks = [], [], [], [], []
    actions, logps, rewards, dones, t_idx = [], [], [], [], []
    episode_returns = []
    ep_return, ep_steps = 0.0, 0
    for t in range(steps):
        mean = policy.forward(obs, params)
        dist = DiagGaussian(mean, log_std)
        act = sample_action(dist, action_rng, bounds)
        logp = gaussian_logprob(DiagGaussian(mean, log_std), act)

        neighbors.append(obs.neighbors)
        masks.append(obs.mask)
        locs.append(obs.loc)
        if obs.evaders is not None:
            evaders.append(obs.evaders)
            evader_masks.append(obs.evader_mask)
        actions.append(act)
        logps.append(logp)
        t_idx.append(np.full(n, t))

        res = env.step(act)
        rewards.append(np.full(n, res.reward))
        dones.append(np.full(n, res.done))
        ep_return += res.reward
        ep_steps += 1
        if res.done:
            episode_returns.append(ep_return)
            ep_return, ep_steps = 0.0, 0
            obs = env.reset()
        else:
            obs = res.obs
    if ep_steps > 0:
        episode_returns.append(ep_return)  # the cut tail still yields a return

    obs_batch = JointObs(
        neighbors=np.concatenate(neighbors),
        mask=np.concatenate(masks),
        loc=np.concatenate(locs),
        evaders=np.concatenate(evaders) if evaders else None,
        evader_mask=np.concatenate(evader_masks) if evader_masks else None,
    )
    return Batch(
        obs=obs_batch,
        actions=np.concatenate(actions),
        logp=np.concatenate(logps),
        rewards=np.concatenate(rewards),
        dones=np.concatenate(dones),
        t_index=np.concatenate(t_idx),
        agent_ids=np.tile(np.arange(n), steps),
        worker_ids=np.zeros(steps * n, dtype=int),
        episode_returns=np.array(episode_returns),
    )


def _run_one(args):
    worker_id, kwargs = args
    batch = _worker_payload(**kwargs)
    batch.worker_ids[:] = worker_id
    return batch


def collect_rollouts(task, world, embedding, hidden, params, workers, steps_per_worker,
                     seed, iteration=0) -> Batch:
    """Collect workers x steps_per_worker environment steps (N transitions each)."""
    jobs = []
    for w in range(workers):
        key = (int(seed), int(iteration), int(w))
        jobs.append(
            (
                w,
                dict(
                    task=task,
                    world=world,
                    embedding=embedding,
                    hidden=hidden,
                    params=params,
                    steps=steps_per_worker,
                    seed_key=key,
                ),
            )
        )
    n_procs = int(os.environ.get(WORKER_ENV_VAR, "1") or "1")
    if n_procs > 1 and workers > 1:
        with ProcessPoolExecutor(max_workers=min(n_procs, workers)) as pool:
            batches = list(pool.map(_run_one, jobs))
    else:
        batches = [_run_one(j) for j in jobs]
    return merge_batches(batches)
