"""Experiment configuration: one JSON document holding every knob of a run."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, replace

from ..env.tasks import TaskConfig
from ..env.world import WorldConfig
from ..policy.spec import EmbeddingSpec
from ..trpo.trainer import TrainerConfig


@dataclass(frozen=True)
class EvalConfig:
    episodes: int = 100
    horizon: int | None = None   # None: 1000 (rendezvous) or 1024 (pursuit)
    greedy: bool = True
    seed: int = 0
    trajectories: int = 1        # episodes exported as JSONL

    def validate(self):
        errs = []
        if self.episodes < 1:
            errs.append("eval.episodes must be >= 1")
        if self.horizon is not None and self.horizon < 1:
            errs.append("eval.horizon must be >= 1")
        if self.trajectories < 0:
            errs.append("eval.trajectories must be >= 0")
        return errs

    def resolved_horizon(self, task: TaskConfig) -> int:
        if self.horizon is not None:
            return self.horizon
        return 1000 if task.task == "rendezvous" else 1024


@dataclass(frozen=True)
class ExperimentConfig:
    task: TaskConfig = TaskConfig()
    world: WorldConfig = WorldConfig()
    embedding: EmbeddingSpec = EmbeddingSpec()
    trainer: TrainerConfig = TrainerConfig()
    eval: EvalConfig = EvalConfig()
    hidden: tuple = (64,)
    include_relative_velocity: bool | None = None  # None: derived from dynamics
    trials: int = 1
    out_dir: str = "runs/experiment"

    def validate(self):
        """Collect every violated constraint across the nested configs."""
        errs = []
        errs += self.task.validate()
        errs += self.trainer.validate()
        errs += self.embedding.validate()
        errs += self.eval.validate()
        if any(h < 1 for h in self.hidden):
            errs.append("hidden sizes must be positive")
        if self.trials < 1:
            errs.append("trials must be >= 1")
        if self.include_relative_velocity and self.task.dynamics != "double":
            errs.append("relative velocities require double-integrator dynamics")
        if self.embedding.kind in ("histogram", "rbf") and self.task.feature_set != "basic":
            errs.append(
                f"{self.embedding.kind} embeddings are restricted to the basic feature set"
            )
        return errs

    def check(self):
        errs = self.validate()
        if errs:
            raise ConfigError(errs)
        return self

    def resolved_embedding(self) -> EmbeddingSpec:
        """Pin the concat capacity so checkpoints rebuild at any agent count."""
        if self.embedding.kind == "concat" and self.embedding.max_neighbors is None:
            return replace(self.embedding, max_neighbors=self.task.n_agents - 1)
        return self.embedding

    def to_dict(self):
        return {
            "task": dataclasses.asdict(self.task),
            "world": dataclasses.asdict(self.world),
            "embedding": self.embedding.to_dict(),
            "trainer": dataclasses.asdict(self.trainer),
            "eval": dataclasses.asdict(self.eval),
            "hidden": list(self.hidden),
            "include_relative_velocity": self.include_relative_velocity,
            "trials": self.trials,
            "out_dir": self.out_dir,
        }

    def to_json(self) -> str:
        """Canonical form: sorted keys, stable indentation, trailing newline."""
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d) -> "ExperimentConfig":
        return cls(
            task=TaskConfig(**d.get("task", {})),
            world=WorldConfig(**d.get("world", {})),
            embedding=EmbeddingSpec.from_dict(d["embedding"]) if "embedding" in d else EmbeddingSpec(),
            trainer=TrainerConfig(**d.get("trainer", {})),
            eval=EvalConfig(**d.get("eval", {})),
            hidden=tuple(d.get("hidden", (64,))),
            include_relative_velocity=d.get("include_relative_velocity"),
            trials=d.get("trials", 1),
            out_dir=d.get("out_dir", "runs/experiment"),
        )

    @classmethod
    def from_json(cls, text) -> "ExperimentConfig":
        return cls.from_dict(json.loads(text))


class ConfigError(ValueError):
    """Invalid configuration; carries the full list of violations."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid configuration:\n" + "\n".join(f"  - {v}" for v in self.violations))
