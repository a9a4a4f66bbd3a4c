from .evader import evader_action, voronoi_cell_centroid_offset
from .graph import (
    build_adjacency,
    disconnected_sentinel,
    pairwise_distances,
    shortest_path_to_evader,
)
from .kinematics import AgentState, clamp_action, step_kinematics
from .observe import (
    FeatureSpec,
    JointObs,
    NeighborFeatures,
    ObservationSet,
    observe_all,
    pair_features,
    pairwise_geometry,
)
from .rewards import (
    pursuit_radius,
    rendezvous_cutoff,
    reward_multi_evader,
    reward_pursuit,
    reward_rendezvous,
)
from .swarm_env import StepResult, SwarmEnv
from .tasks import TaskConfig, multi_pursuit_task, pursuit_task, rendezvous_task
from .world import (
    WorldConfig,
    apply_boundary,
    displacement,
    distance,
    max_distance,
    wall_features,
    wrap_angle,
    wrap_heading,
)

__all__ = [
    "AgentState",
    "FeatureSpec",
    "JointObs",
    "NeighborFeatures",
    "ObservationSet",
    "StepResult",
    "SwarmEnv",
    "TaskConfig",
    "WorldConfig",
    "apply_boundary",
    "build_adjacency",
    "clamp_action",
    "disconnected_sentinel",
    "displacement",
    "distance",
    "evader_action",
    "max_distance",
    "multi_pursuit_task",
    "observe_all",
    "pair_features",
    "pairwise_distances",
    "pairwise_geometry",
    "pursuit_radius",
    "pursuit_task",
    "rendezvous_cutoff",
    "rendezvous_task",
    "reward_multi_evader",
    "reward_pursuit",
    "reward_rendezvous",
    "shortest_path_to_evader",
    "step_kinematics",
    "voronoi_cell_centroid_offset",
    "wall_features",
    "wrap_angle",
    "wrap_heading",
]
