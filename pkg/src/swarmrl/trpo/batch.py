"""Transition batches collected under parameter sharing.

All agents contribute indistinguishable transitions; arrays are flat over
(worker, step, agent) with bookkeeping indices kept for episode grouping and
per-worker agent subsampling.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..env.observe import JointObs


@dataclass
class Batch:
    obs: JointObs                # batch axis = transitions
    actions: np.ndarray          # [T, A]
    logp: np.ndarray             # [T] behavior log-probabilities
    rewards: np.ndarray          # [T]
    dones: np.ndarray            # [T] episode ends after this transition
    t_index: np.ndarray          # [T] step index within the worker stream
    agent_ids: np.ndarray        # [T]
    worker_ids: np.ndarray       # [T]
    episode_returns: np.ndarray  # undiscounted sums, one per (possibly cut) episode
    returns: np.ndarray | None = None
    advantages: np.ndarray | None = None

    def __len__(self):
        return len(self.actions)

    def select(self, idx):
        obs = JointObs(
            neighbors=self.obs.neighbors[idx],
            mask=self.obs.mask[idx],
            loc=self.obs.loc[idx],
            evaders=None if self.obs.evaders is None else self.obs.evaders[idx],
            evader_mask=None if self.obs.evader_mask is None else self.obs.evader_mask[idx],
        )
        return Batch(
            obs=obs,
            actions=self.actions[idx],
            logp=self.logp[idx],
            rewards=self.rewards[idx],
            dones=self.dones[idx],
            t_index=self.t_index[idx],
            agent_ids=self.agent_ids[idx],
            worker_ids=self.worker_ids[idx],
            episode_returns=self.episode_returns,
            returns=None if self.returns is None else self.returns[idx],
            advantages=None if self.advantages is None else self.advantages[idx],
        )


def merge_batches(batches) -> Batch:
    obs = JointObs(
        neighbors=np.concatenate([b.obs.neighbors for b in batches]),
        mask=np.concatenate([b.obs.mask for b in batches]),
        loc=np.concatenate([b.obs.loc for b in batches]),
        evaders=(
            None
            if batches[0].obs.evaders is None
            else np.concatenate([b.obs.evaders for b in batches])
        ),
        evader_mask=(
            None
            if batches[0].obs.evader_mask is None
            else np.concatenate([b.obs.evader_mask for b in batches])
        ),
    )
    return Batch(
        obs=obs,
        actions=np.concatenate([b.actions for b in batches]),
        logp=np.concatenate([b.logp for b in batches]),
        rewards=np.concatenate([b.rewards for b in batches]),
        dones=np.concatenate([b.dones for b in batches]),
        t_index=np.concatenate([b.t_index for b in batches]),
        agent_ids=np.concatenate([b.agent_ids for b in batches]),
        worker_ids=np.concatenate([b.worker_ids for b in batches]),
        episode_returns=np.concatenate([b.episode_returns for b in batches]),
    )


def subsample_agents(batch: Batch, k: int, rng: np.random.Generator) -> Batch:
    """Keep all transitions of k uniformly drawn agents per worker."""
    if k < 1:
        raise ValueError("k must be >= 1")
    keep = np.zeros(len(batch), dtype=bool)
    for w in np.unique(batch.worker_ids):
        in_worker = batch.worker_ids == w
        agents = np.unique(batch.agent_ids[in_worker])
        if k >= len(agents):
            keep |= in_worker
            continue
        chosen = rng.choice(agents, size=k, replace=False)
        keep |= in_worker & np.isin(batch.agent_ids, chosen)
    if keep.all():
        return batch
    return batch.select(np.flatnonzero(keep))


def compute_returns(batch: Batch, gamma: float) -> Batch:
    """Discounted returns within episode boundaries, per agent stream."""
    order = np.lexsort((batch.t_index, batch.agent_ids, batch.worker_ids))
    returns = np.zeros(len(batch))
    running = 0.0
    prev_key = None
    for idx in order[::-1]:
        key = (batch.worker_ids[idx], batch.agent_ids[idx])
        if key != prev_key or batch.dones[idx]:
            running = 0.0
        running = batch.rewards[idx] + gamma * running
        returns[idx] = running
        prev_key = key
    return replace(batch, returns=returns)


def compute_advantages(batch: Batch, value_net, value_params) -> Batch:
    """Monte-Carlo advantage estimates, standardized over the batch."""
    if batch.returns is None:
        raise ValueError("compute returns first")
    values = value_net.values(batch.obs, value_params)
    adv = batch.returns - values
    std = adv.std()
    if std > 0.0:
        adv = (adv - adv.mean()) / std
    return replace(batch, advantages=adv)
