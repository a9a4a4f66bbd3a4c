"""Unicycle kinematics under single (velocity) or double (acceleration) control.

States are rows [x, y, phi, v, omega]; discrete time with explicit Euler
steps.  Under double-integrator control the velocities are updated first and
the pose then advances with the new velocities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tasks import TaskConfig
from .world import WorldConfig, apply_boundary, wrap_heading

STATE_DIM = 5  # x, y, phi, v, omega


@dataclass
class AgentState:
    x: float
    y: float
    phi: float
    v: float = 0.0
    omega: float = 0.0

    def as_array(self):
        return np.array([self.x, self.y, self.phi, self.v, self.omega])

    @classmethod
    def from_array(cls, a):
        return cls(*(float(u) for u in a))


def clamp_action(actions, task: TaskConfig):
    """Clip actions to the symmetric per-dimension bounds of the dynamics."""
    bounds = task.action_bounds
    actions = np.asarray(actions, dtype=np.float64)
    if not np.all(np.isfinite(actions)):
        raise ValueError("non-finite action")
    return np.clip(actions, -bounds, bounds)


def step_kinematics(states, actions, world: WorldConfig, task: TaskConfig):
    """Advance one or many unicycle states by one Euler step.

    Expects pre-clamped actions; returns new states with headings wrapped to
    [0, 2*pi) and positions folded back into the world.
    """
    single_row = np.asarray(states).ndim == 1
    states = np.atleast_2d(np.asarray(states, dtype=np.float64))
    actions = np.atleast_2d(np.asarray(actions, dtype=np.float64))
    dt = world.dt
    out = states.copy()
    if task.dynamics == "single":
        v = actions[:, 0]
        omega = actions[:, 1]
    else:
        v = np.clip(states[:, 3] + actions[:, 0] * dt, -task.v_max, task.v_max)
        omega = np.clip(
            states[:, 4] + actions[:, 1] * dt, -task.omega_max, task.omega_max
        )
    phi = states[:, 2]
    out[:, 0] = states[:, 0] + v * np.cos(phi) * dt
    out[:, 1] = states[:, 1] + v * np.sin(phi) * dt
    out[:, 2] = wrap_heading(phi + omega * dt)
    out[:, 3] = v
    out[:, 4] = omega
    out[:, :2] = apply_boundary(out[:, :2], world)
    return out[0] if single_row else out
