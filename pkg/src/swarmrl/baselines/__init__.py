from .consensus import (
    PDGains,
    consensus_pd_policy,
    consensus_velocities,
    consensus_velocity,
    pd_control,
    single_integrator_tracking,
)
from .pursuit import (
    greedy_chase_actions,
    shared_boundary_target,
    surround_actions,
    voronoi_pursuit_actions,
    voronoi_pursuit_targets,
)

__all__ = [
    "PDGains",
    "consensus_pd_policy",
    "consensus_velocities",
    "consensus_velocity",
    "greedy_chase_actions",
    "pd_control",
    "shared_boundary_target",
    "single_integrator_tracking",
    "surround_actions",
    "voronoi_pursuit_actions",
    "voronoi_pursuit_targets",
]
