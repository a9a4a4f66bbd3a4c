"""Team reward functions for the three swarm tasks."""

from __future__ import annotations

import numpy as np

from .graph import pairwise_distances
from .tasks import TaskConfig
from .world import WorldConfig, displacement, max_distance


def rendezvous_cutoff(task: TaskConfig, world: WorldConfig) -> float:
    """Distance saturation for the rendezvous reward.

    Under global observability the cut-off is widened to the maximum of the
    world extents so that the normalization covers the whole arena.
    """
    if task.observability == "global":
        return float(max(world.x_max, world.y_max))
    return task.d_c


def pursuit_radius(task: TaskConfig, world: WorldConfig) -> float:
    if task.observability == "global":
        return max_distance(world)
    return task.d_o


def reward_rendezvous(states, actions, task: TaskConfig, world: WorldConfig) -> float:
    """Normalized negative sum of saturated pairwise distances plus an
    action-magnitude penalty; 0 when all agents coincide and act idle."""
    n = task.n_agents
    d_c = rendezvous_cutoff(task, world)
    dmat = pairwise_distances(np.asarray(states)[:, :2], world)
    iu = np.triu_indices(n, k=1)
    alpha = -1.0 / (n * (n - 1) / 2.0 * d_c)
    pair_term = alpha * np.minimum(dmat[iu], d_c).sum()
    return float(pair_term + task.action_penalty * np.linalg.norm(np.asarray(actions)))


def _closest_pursuer_distances(states, evaders, world: WorldConfig):
    """[E] distances from each evader to its closest pursuer."""
    pos = np.asarray(states)[:, :2]
    diff = displacement(pos[:, None, :], np.asarray(evaders)[None, :, :], world)
    return np.sqrt(np.sum(diff * diff, axis=-1)).min(axis=0)


def reward_pursuit(states, evader_xy, task: TaskConfig, world: WorldConfig) -> float:
    """-min(d_min, d_o) / d_o for the single-evader chase; in [-1, 0]."""
    d_o = pursuit_radius(task, world)
    d_min = _closest_pursuer_distances(states, np.asarray(evader_xy)[None, :], world)[0]
    return float(-min(d_min, d_o) / d_o)


def reward_multi_evader(states, evaders, task: TaskConfig, world: WorldConfig) -> float:
    """Number of evaders whose closest pursuer is within the capture threshold."""
    d_min = _closest_pursuer_distances(states, evaders, world)
    return float(np.count_nonzero(d_min <= task.d_t))
