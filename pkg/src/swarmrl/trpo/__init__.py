from .batch import Batch, compute_advantages, compute_returns, merge_batches, subsample_agents
from .rollout import WORKER_ENV_VAR, collect_rollouts
from .trainer import (
    CURVE_HEADER,
    IterationRecord,
    TrainResult,
    TrainerConfig,
    read_curve,
    train,
    write_curve,
)
from .update import (
    UpdateStats,
    fisher_vector_product,
    fit_value,
    mean_kl,
    surrogate_gradient,
    surrogate_loss,
    trpo_update,
)

__all__ = [
    "Batch",
    "CURVE_HEADER",
    "IterationRecord",
    "TrainResult",
    "TrainerConfig",
    "UpdateStats",
    "WORKER_ENV_VAR",
    "collect_rollouts",
    "compute_advantages",
    "compute_returns",
    "fisher_vector_product",
    "fit_value",
    "mean_kl",
    "merge_batches",
    "read_curve",
    "subsample_agents",
    "surrogate_gradient",
    "surrogate_loss",
    "train",
    "trpo_update",
    "write_curve",
]
