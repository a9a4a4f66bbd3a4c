from .artifacts import (
    read_aggregated_csv,
    read_profile_csv,
    read_returns_csv,
    write_aggregated_csv,
    write_eval_report,
    write_profile_csv,
    write_returns_csv,
)
from .config import ConfigError, EvalConfig, ExperimentConfig
from .evaluate import (
    BASELINE_POLICIES,
    ConsensusPolicy,
    EvalReport,
    GreedyChasePolicy,
    RandomPolicy,
    StillPolicy,
    SurroundPolicy,
    TrainedPolicy,
    VoronoiPursuitPolicy,
    cross_scale_task,
    evaluate_capture,
    evaluate_mean_distance,
    mean_pairwise_distance,
    run_episode,
    run_episodes,
    top_q_median,
)

__all__ = [
    "BASELINE_POLICIES",
    "ConfigError",
    "ConsensusPolicy",
    "EvalConfig",
    "EvalReport",
    "ExperimentConfig",
    "GreedyChasePolicy",
    "RandomPolicy",
    "StillPolicy",
    "SurroundPolicy",
    "TrainedPolicy",
    "VoronoiPursuitPolicy",
    "cross_scale_task",
    "evaluate_capture",
    "evaluate_mean_distance",
    "mean_pairwise_distance",
    "read_aggregated_csv",
    "read_profile_csv",
    "read_returns_csv",
    "run_episode",
    "run_episodes",
    "top_q_median",
    "write_aggregated_csv",
    "write_eval_report",
    "write_profile_csv",
    "write_returns_csv",
]
