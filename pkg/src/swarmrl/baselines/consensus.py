"""Consensus protocol with a PD tracking controller for unicycle agents."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..env.tasks import TaskConfig
from ..env.world import WorldConfig, displacement, wrap_angle


@dataclass(frozen=True)
class PDGains:
    """Tracking gains; defaults come from scripts/tune_pd_gains.py (20-agent
    rendezvous, closed world, default kinematic limits)."""

    k1: float = 2.0
    k2: float = 1.5
    d2: float = 2.0

    def __post_init__(self):
        if min(self.k1, self.k2, self.d2) <= 0:
            raise ValueError("all gains must be positive")


def consensus_velocity(i, positions, neighbors, world: WorldConfig):
    """Desired velocity of agent i: negative sum of displacements to its
    neighbors (minimal-image on the torus); empty neighborhoods hold still."""
    positions = np.asarray(positions, dtype=np.float64)
    idx = np.asarray(neighbors, dtype=int)
    if idx.size == 0:
        return np.zeros(2)
    return displacement(positions[i][None, :], positions[idx], world).sum(axis=0)


def consensus_velocities(positions, adj, world: WorldConfig):
    """Vectorized consensus protocol for every agent ([N, 2])."""
    positions = np.asarray(positions, dtype=np.float64)
    diff = displacement(positions[:, None, :], positions[None, :, :], world)
    return (diff * adj[..., None]).sum(axis=1)


def _heading_targets(desired, phi):
    """Desired speed and wrapped heading error; zero command holds heading."""
    v_d = np.linalg.norm(desired, axis=-1)
    phi_d = np.where(v_d > 0.0, np.arctan2(desired[..., 1], desired[..., 0]), phi)
    return v_d, wrap_angle(phi_d - phi)


def pd_control(state, desired, gains: PDGains, task: TaskConfig):
    """Acceleration commands tracking a desired velocity vector.

    a_v = K1 (v_d - v), a_omega = K2 * heading error + D2 (0 - omega), with
    v_d the desired speed and the heading error wrapped to (-pi, pi].
    """
    state = np.asarray(state, dtype=np.float64)
    v_d, err = _heading_targets(np.asarray(desired, dtype=np.float64), state[..., 2])
    a_v = gains.k1 * (v_d - state[..., 3])
    a_om = gains.k2 * err + gains.d2 * (0.0 - state[..., 4])
    a_v = np.clip(a_v, -task.a_v_max, task.a_v_max)
    a_om = np.clip(a_om, -task.a_omega_max, task.a_omega_max)
    return np.stack([a_v, a_om], axis=-1)


def single_integrator_tracking(states, desired, gains: PDGains, task: TaskConfig):
    """Velocity commands tracking a desired velocity under direct control."""
    states = np.asarray(states, dtype=np.float64)
    v_d, err = _heading_targets(np.asarray(desired, dtype=np.float64), states[..., 2])
    v = np.clip(v_d, -task.v_max, task.v_max)
    om = np.clip(gains.k2 * err, -task.omega_max, task.omega_max)
    return np.stack([v, om], axis=-1)


def consensus_pd_policy(states, adj, world: WorldConfig, task: TaskConfig,
                        gains: PDGains = PDGains()):
    """Joint consensus actions for the active dynamics ([N, 2])."""
    states = np.asarray(states, dtype=np.float64)
    desired = consensus_velocities(states[:, :2], adj, world)
    if task.dynamics == "single":
        return single_integrator_tracking(states, desired, gains, task)
    return pd_control(states, desired, gains, task)
