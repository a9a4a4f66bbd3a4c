"""Task configuration: everything the swarm MDP needs beyond world geometry."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

TASKS = ("rendezvous", "pursuit", "multi-pursuit")
DYNAMICS = ("single", "double")
OBSERVABILITY = ("global", "local")
FEATURE_SETS = ("basic", "extended", "comm")


@dataclass(frozen=True)
class TaskConfig:
    task: str = "rendezvous"
    n_agents: int = 10
    n_evaders: int = 0
    dynamics: str = "single"
    observability: str = "global"
    feature_set: str = "basic"
    d_c: float = 40.0           # communication cut-off
    d_o: float = 20.0           # evader observation radius
    d_t: float = 3.0            # capture threshold
    episode_len: int = 512
    v_max: float = 0.5
    omega_max: float = float(np.pi / 4)
    a_v_max: float = 0.05
    a_omega_max: float = float(np.pi / 16)
    evader_speed_factor: float = 2.0
    action_penalty: float = -1e-3
    voronoi_grid: int = 128

    def validate(self):
        """Return a list of violated constraints (empty when consistent)."""
        errs = []
        if self.task not in TASKS:
            errs.append(f"task must be one of {TASKS}, got {self.task!r}")
        if self.dynamics not in DYNAMICS:
            errs.append(f"dynamics must be one of {DYNAMICS}, got {self.dynamics!r}")
        if self.observability not in OBSERVABILITY:
            errs.append(f"observability must be one of {OBSERVABILITY}")
        if self.feature_set not in FEATURE_SETS:
            errs.append(f"feature_set must be one of {FEATURE_SETS}")
        if self.n_agents < 2:
            errs.append(f"need at least 2 agents, got {self.n_agents}")
        if self.task in ("pursuit", "multi-pursuit") and self.n_evaders < 1:
            errs.append("pursuit tasks need at least one evader")
        if self.task == "rendezvous" and self.n_evaders != 0:
            errs.append("rendezvous has no evaders")
        for name in ("d_c", "d_o", "d_t"):
            if getattr(self, name) <= 0:
                errs.append(f"{name} must be positive")
        if self.episode_len < 1:
            errs.append("episode_len must be >= 1")
        for name in ("v_max", "omega_max", "a_v_max", "a_omega_max"):
            if getattr(self, name) <= 0:
                errs.append(f"{name} must be positive")
        if self.evader_speed_factor <= 0:
            errs.append("evader_speed_factor must be positive")
        if self.voronoi_grid < 8:
            errs.append("voronoi_grid must be >= 8")
        if self.feature_set == "comm" and self.observability != "local":
            errs.append("comm features presuppose local observability")
        return errs

    def check(self):
        errs = self.validate()
        if errs:
            raise ValueError("invalid task config: " + "; ".join(errs))
        return self

    @property
    def action_bounds(self):
        """Per-dimension symmetric action bounds for the active dynamics."""
        if self.dynamics == "single":
            return np.array([self.v_max, self.omega_max])
        return np.array([self.a_v_max, self.a_omega_max])


def rendezvous_task(**kw) -> TaskConfig:
    return replace(TaskConfig(task="rendezvous", n_agents=20, dynamics="double"), **kw)


def pursuit_task(**kw) -> TaskConfig:
    return replace(
        TaskConfig(task="pursuit", n_agents=10, n_evaders=1, dynamics="single"), **kw
    )


def multi_pursuit_task(**kw) -> TaskConfig:
    return replace(
        TaskConfig(task="multi-pursuit", n_agents=50, n_evaders=5, dynamics="single"),
        **kw,
    )
