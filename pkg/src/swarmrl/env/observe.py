"""Local observation models: which features each agent senses, and how the
variable-size neighbor sets are laid out as padded arrays.

Feature order is fixed and documented by name so that policies and
checkpoints agree with the environment:

  neighbor features: dist, bearing [, orient] [, dvx, dvy] [, nbr_count | evader_path]
  local features:    [wall_dist, wall_bearing] [, v, omega]
                     [, evader_dist, evader_bearing] [, evader_path] [, nbr_count]
  evader-set features (multi-pursuit): dist, bearing
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import shortest_path_to_evader
from .tasks import TaskConfig
from .world import WorldConfig, displacement, wall_features, wrap_angle


@dataclass(frozen=True)
class FeatureSpec:
    neighbor_names: tuple
    loc_names: tuple
    evader_names: tuple = ()

    @property
    def neighbor_dim(self):
        return len(self.neighbor_names)

    @property
    def loc_dim(self):
        return len(self.loc_names)

    @property
    def evader_dim(self):
        return len(self.evader_names)

    @property
    def has_evader_set(self):
        return bool(self.evader_names)

    def to_dict(self):
        return {
            "neighbor_names": list(self.neighbor_names),
            "loc_names": list(self.loc_names),
            "evader_names": list(self.evader_names),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            tuple(d["neighbor_names"]),
            tuple(d["loc_names"]),
            tuple(d.get("evader_names", ())),
        )

    @classmethod
    def from_task(cls, task: TaskConfig, world: WorldConfig) -> "FeatureSpec":
        nbr = ["dist", "bearing"]
        if task.feature_set in ("extended", "comm"):
            nbr.append("orient")
            if task.dynamics == "double":
                nbr += ["dvx", "dvy"]
        if task.feature_set == "comm":
            nbr.append("nbr_count" if task.task == "rendezvous" else "evader_path")
        loc = []
        if world.boundary == "closed":
            loc += ["wall_dist", "wall_bearing"]
        if task.dynamics == "double":
            loc += ["v", "omega"]
        evader = ()
        if task.task == "pursuit":
            loc += ["evader_dist", "evader_bearing"]
            if task.feature_set == "comm":
                loc.append("evader_path")
        elif task.task == "multi-pursuit":
            evader = ("dist", "bearing")
        if task.feature_set == "comm" and task.task == "rendezvous":
            loc.append("nbr_count")
        return cls(tuple(nbr), tuple(loc), evader)


@dataclass
class ObservationSet:
    """One agent's view: local features plus a variable-size neighbor set."""

    loc: np.ndarray
    neighbors: np.ndarray               # [n_i, F], possibly zero rows
    evaders: np.ndarray | None = None   # [n_vis, 2] for multi-pursuit


@dataclass
class JointObs:
    """Padded per-agent observations for a whole swarm at one time step."""

    neighbors: np.ndarray               # [N, M, F]
    mask: np.ndarray                    # [N, M] bool
    loc: np.ndarray                     # [N, L]
    evaders: np.ndarray | None = None   # [N, E, 2]
    evader_mask: np.ndarray | None = None

    def per_agent(self, i) -> ObservationSet:
        ev = None
        if self.evaders is not None:
            ev = self.evaders[i][self.evader_mask[i]]
        return ObservationSet(
            loc=self.loc[i],
            neighbors=self.neighbors[i][self.mask[i]],
            evaders=ev,
        )

    @property
    def n_agents(self):
        return self.loc.shape[0]


def pairwise_geometry(states, world: WorldConfig, include_velocities=False):
    """All-pairs interaction geometry.

    Returns dist [N, N], bearing [N, N] (direction of j in i's frame),
    orient [N, N] (j's heading seen from i via the reciprocal ray) and,
    optionally, the relative velocity vectors dvel [N, N, 2].  Coincident
    pairs get bearing and orientation 0 by convention.
    """
    states = np.asarray(states, dtype=np.float64)
    pos = states[:, :2]
    phi = states[:, 2]
    diff = displacement(pos[:, None, :], pos[None, :, :], world)  # diff[i,j] = j - i
    dist = np.sqrt(np.sum(diff * diff, axis=-1))
    coincident = dist == 0.0
    ray = np.arctan2(diff[..., 1], diff[..., 0])
    bearing = wrap_angle(ray - phi[:, None])
    orient = wrap_angle(wrap_angle(ray + np.pi) - phi[None, :])
    bearing = np.where(coincident, 0.0, bearing)
    orient = np.where(coincident, 0.0, orient)
    out = {"dist": dist, "bearing": bearing, "orient": orient}
    if include_velocities:
        vel = states[:, 3, None] * np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        out["dvel"] = vel[:, None, :] - vel[None, :, :]  # nu_i - nu_j
    return out


@dataclass
class NeighborFeatures:
    dist: float
    bearing: float
    orient: float
    dvel: np.ndarray


def pair_features(state_i, state_j, world: WorldConfig) -> NeighborFeatures:
    """Interaction features of a single ordered pair (i observes j)."""
    geo = pairwise_geometry(np.stack([state_i, state_j]), world, include_velocities=True)
    return NeighborFeatures(
        dist=float(geo["dist"][0, 1]),
        bearing=float(geo["bearing"][0, 1]),
        orient=float(geo["orient"][0, 1]),
        dvel=geo["dvel"][0, 1],
    )


def _evader_geometry(states, evaders, world: WorldConfig):
    """Distance and bearing from every agent to every evader ([N, E] each)."""
    pos = np.asarray(states)[:, :2]
    phi = np.asarray(states)[:, 2]
    diff = displacement(pos[:, None, :], np.asarray(evaders)[None, :, :], world)
    dist = np.sqrt(np.sum(diff * diff, axis=-1))
    bearing = wrap_angle(np.arctan2(diff[..., 1], diff[..., 0]) - phi[:, None])
    bearing = np.where(dist == 0.0, 0.0, bearing)
    return dist, bearing


def observe_all(states, evaders, adj, task: TaskConfig, world: WorldConfig) -> JointObs:
    """Assemble every agent's ObservationSet for the current swarm state."""
    spec = FeatureSpec.from_task(task, world)
    states = np.asarray(states, dtype=np.float64)
    n = len(states)
    geo = pairwise_geometry(states, world, include_velocities=task.dynamics == "double")
    columns = {"dist": geo["dist"], "bearing": geo["bearing"]}
    if "orient" in spec.neighbor_names:
        columns["orient"] = geo["orient"]
    if "dvx" in spec.neighbor_names:
        columns["dvx"] = geo["dvel"][..., 0]
        columns["dvy"] = geo["dvel"][..., 1]
    if "nbr_count" in spec.neighbor_names:
        counts = adj.sum(axis=1).astype(np.float64)
        columns["nbr_count"] = np.broadcast_to(counts[None, :], (n, n))
    path = None
    if task.feature_set == "comm" and task.task == "pursuit":
        path = shortest_path_to_evader(states[:, :2], evaders[0], adj, world, task.d_o)
        columns["evader_path"] = np.broadcast_to(path[None, :], (n, n))
    full = np.stack([columns[name] for name in spec.neighbor_names], axis=-1)

    off_diag = ~np.eye(n, dtype=bool)
    neighbors = full[off_diag].reshape(n, n - 1, spec.neighbor_dim)
    mask = adj[off_diag].reshape(n, n - 1)
    neighbors = neighbors * mask[..., None]

    loc_cols = {}
    if "wall_dist" in spec.loc_names:
        d_wall, phi_wall = wall_features(states[:, 0], states[:, 1], states[:, 2], world)
        loc_cols["wall_dist"] = d_wall
        loc_cols["wall_bearing"] = phi_wall
    if "v" in spec.loc_names:
        loc_cols["v"] = states[:, 3]
        loc_cols["omega"] = states[:, 4]
    ev_arr = ev_mask = None
    if task.task == "pursuit":
        d_ev, b_ev = _evader_geometry(states, evaders, world)
        d_ev, b_ev = d_ev[:, 0], b_ev[:, 0]
        if task.observability == "local":
            # unseen evader saturates to (d_o, 0): no directional information
            seen = d_ev <= task.d_o
            d_ev = np.where(seen, d_ev, task.d_o)
            b_ev = np.where(seen, b_ev, 0.0)
        loc_cols["evader_dist"] = d_ev
        loc_cols["evader_bearing"] = b_ev
        if "evader_path" in spec.loc_names:
            loc_cols["evader_path"] = path
    elif task.task == "multi-pursuit":
        d_ev, b_ev = _evader_geometry(states, evaders, world)
        ev_arr = np.stack([d_ev, b_ev], axis=-1)
        if task.observability == "local":
            ev_mask = d_ev <= task.d_o
        else:
            ev_mask = np.ones_like(d_ev, dtype=bool)
        ev_arr = ev_arr * ev_mask[..., None]
    if "nbr_count" in spec.loc_names:
        loc_cols["nbr_count"] = adj.sum(axis=1).astype(np.float64)
    if spec.loc_names:
        loc = np.stack([loc_cols[name] for name in spec.loc_names], axis=-1)
    else:
        loc = np.zeros((n, 0))
    return JointObs(neighbors=neighbors, mask=mask, loc=loc, evaders=ev_arr, evader_mask=ev_mask)
