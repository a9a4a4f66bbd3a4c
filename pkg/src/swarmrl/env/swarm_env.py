"""The swarm MDP: joint reset/step loop over agents and scripted evaders."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evader import evader_action
from .graph import build_adjacency
from .kinematics import clamp_action, step_kinematics
from .observe import FeatureSpec, JointObs, observe_all
from .rewards import reward_multi_evader, reward_pursuit, reward_rendezvous
from .tasks import TaskConfig
from .world import WorldConfig, apply_boundary


@dataclass
class StepResult:
    obs: JointObs
    reward: float
    done: bool
    captured: bool
    t: int


class SwarmEnv:
    """Single-owner mutable environment; one seeded random stream per instance."""

    def __init__(self, task: TaskConfig, world: WorldConfig | None = None, seed=0):
        task.check()
        self.task = task
        self.world = world if world is not None else WorldConfig()
        self.rng = np.random.default_rng(seed)
        self.feature_spec = FeatureSpec.from_task(task, self.world)
        self.states = None
        self.evaders = None
        self.adj = None
        self.t = 0

    # ------------------------------------------------------------- lifecycle

    def _sample_positions(self, n):
        return self.rng.uniform(0.0, self.world.extent, size=(n, 2))

    def _spawn_evader(self):
        # keep respawned evaders outside the capture threshold of every pursuer
        for _ in range(1000):
            xy = self.rng.uniform(0.0, self.world.extent, size=2)
            d = np.linalg.norm(
                np.atleast_2d(self.states[:, :2]) - xy, axis=-1
            )
            if self.world.boundary == "toroidal":
                diff = self.states[:, :2] - xy
                diff -= self.world.extent * np.round(diff / self.world.extent)
                d = np.linalg.norm(diff, axis=-1)
            if (d > self.task.d_t).all():
                return xy
        raise RuntimeError("could not place evader away from all pursuers")

    def reset(self, seed=None) -> JointObs:
        if seed is not None:
            self.rng = np.random.default_rng(seed)
        n = self.task.n_agents
        self.states = np.zeros((n, 5))
        self.states[:, :2] = self._sample_positions(n)
        self.states[:, 2] = self.rng.uniform(0.0, 2.0 * np.pi, size=n)
        if self.task.n_evaders > 0:
            self.evaders = np.stack(
                [self._spawn_evader() for _ in range(self.task.n_evaders)]
            )
        else:
            self.evaders = np.zeros((0, 2))
        self.t = 0
        self.adj = build_adjacency(
            self.states[:, :2], self.world, self.task.observability, self.task.d_c
        )
        return self.observe()

    def set_state(self, states, evaders=None, t=0):
        """Inject an explicit joint state (testing hook)."""
        self.states = np.array(states, dtype=np.float64)
        self.evaders = (
            np.array(evaders, dtype=np.float64) if evaders is not None else np.zeros((0, 2))
        )
        self.t = t
        self.adj = build_adjacency(
            self.states[:, :2], self.world, self.task.observability, self.task.d_c
        )
        return self.observe()

    def observe(self) -> JointObs:
        return observe_all(self.states, self.evaders, self.adj, self.task, self.world)

    # ------------------------------------------------------------------ step

    def step(self, actions) -> StepResult:
        task = self.task
        actions = np.asarray(actions, dtype=np.float64)
        if actions.shape != (task.n_agents, 2):
            raise ValueError(
                f"expected actions of shape {(task.n_agents, 2)}, got {actions.shape}"
            )
        clamped = clamp_action(actions, task)

        # evaders decide on the pre-step pursuer configuration (simultaneous move)
        if task.n_evaders > 0:
            speed = task.evader_speed_factor * task.v_max
            vels = np.stack(
                [
                    evader_action(e, self.states, self.world, speed, task.voronoi_grid)
                    for e in self.evaders
                ]
            )
        self.states = step_kinematics(self.states, clamped, self.world, task)
        if task.n_evaders > 0:
            self.evaders = apply_boundary(self.evaders + vels * self.world.dt, self.world)
        self.t += 1
        self.adj = build_adjacency(
            self.states[:, :2], self.world, task.observability, task.d_c
        )

        captured = False
        if task.task == "rendezvous":
            reward = reward_rendezvous(self.states, clamped, task, self.world)
        elif task.task == "pursuit":
            reward = reward_pursuit(self.states, self.evaders[0], task, self.world)
            diff = self.states[:, :2] - self.evaders[0]
            if self.world.boundary == "toroidal":
                diff -= self.world.extent * np.round(diff / self.world.extent)
            captured = bool((np.linalg.norm(diff, axis=-1) <= task.d_t).any())
        else:
            reward = reward_multi_evader(self.states, self.evaders, task, self.world)
            diff = self.states[:, None, :2] - self.evaders[None, :, :]
            if self.world.boundary == "toroidal":
                diff -= self.world.extent * np.round(diff / self.world.extent)
            caught = (np.linalg.norm(diff, axis=-1) <= task.d_t).any(axis=0)
            captured = bool(caught.any())
            for e in np.flatnonzero(caught):
                self.evaders[e] = self._spawn_evader()

        done = self.t >= task.episode_len
        if task.task == "pursuit":
            done = done or captured
        return StepResult(self.observe(), reward, done, captured, self.t)
