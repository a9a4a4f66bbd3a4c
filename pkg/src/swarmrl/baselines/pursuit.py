"""Scripted pursuer policies: a Voronoi-region heuristic, a greedy chaser and
a surround-then-close ring."""

from __future__ import annotations

import numpy as np

from ..env.evader import _sample_grid
from ..env.tasks import TaskConfig
from ..env.world import WorldConfig, displacement, wrap_angle
from .consensus import PDGains, single_integrator_tracking


def shared_boundary_target(i, pursuers_xy, evader_xy, world: WorldConfig, resolution=128):
    """Estimated midpoint of the Voronoi boundary shared by pursuer i and the
    evader: mean of grid points whose two closest sites are i and the evader
    and that lie within one grid cell of the bisector.  None when the cells
    are not adjacent."""
    pursuers_xy = np.atleast_2d(np.asarray(pursuers_xy, dtype=np.float64))
    evader_xy = np.asarray(evader_xy, dtype=np.float64)
    grid = _sample_grid(world, resolution)
    sites = np.vstack([pursuers_xy, evader_xy[None, :]])
    d2 = np.sum(
        displacement(sites[:, None, :], grid[None, :, :], world) ** 2, axis=-1
    )
    d = np.sqrt(d2)
    order = np.argsort(d, axis=0)
    first, second = order[0], order[1]
    e = len(pursuers_xy)
    on_pair = ((first == i) & (second == e)) | ((first == e) & (second == i))
    cell = np.hypot(world.x_max / resolution, world.y_max / resolution)
    near = np.abs(d[i] - d[e]) <= cell
    pts = grid[on_pair & near]
    if len(pts) == 0:
        return None
    # average displacements from the evader so the torus seam cannot split the segment
    offsets = displacement(evader_xy[None, :], pts, world)
    return evader_xy + offsets.mean(axis=0)


def voronoi_pursuit_targets(states, evader_xy, world: WorldConfig, resolution=128):
    """Per-pursuer target points of the shared-boundary heuristic."""
    states = np.asarray(states, dtype=np.float64)
    n = len(states)
    targets = np.empty((n, 2))
    for i in range(n):
        if n == 1:
            targets[i] = evader_xy  # a lone pursuer reduces to pure pursuit
            continue
        t = shared_boundary_target(i, states[:, :2], evader_xy, world, resolution)
        targets[i] = evader_xy if t is None else t
    return targets


def _track_points(states, targets, world, task, gains):
    desired = displacement(np.asarray(states)[:, :2], targets, world)
    return single_integrator_tracking(states, desired, gains, task)


def voronoi_pursuit_actions(states, evader_xy, world: WorldConfig, task: TaskConfig,
                            gains: PDGains = PDGains(), resolution=128):
    """Move each pursuer at full speed toward its shared-boundary midpoint."""
    targets = voronoi_pursuit_targets(states, evader_xy, world, resolution)
    return _track_points(states, targets, world, task, gains)


def greedy_chase_actions(states, evader_xy, world: WorldConfig, task: TaskConfig,
                         gains: PDGains = PDGains()):
    """Every pursuer heads straight for the evader."""
    states = np.asarray(states, dtype=np.float64)
    targets = np.broadcast_to(np.asarray(evader_xy), (len(states), 2))
    return _track_points(states, targets, world, task, gains)


def surround_actions(states, evader_xy, world: WorldConfig, task: TaskConfig,
                     gains: PDGains = PDGains(), ring_shrink=0.8):
    """Surround-then-close ring: pursuers take evenly spaced bearing slots
    around the evader (rank-preserving, so paths do not cross) on a common
    radius that shrinks as the team closes in."""
    states = np.asarray(states, dtype=np.float64)
    n = len(states)
    offsets = displacement(np.asarray(evader_xy)[None, :], states[:, :2], world)
    dist = np.linalg.norm(offsets, axis=-1)
    angles = np.arctan2(offsets[:, 1], offsets[:, 0])
    ranks = np.argsort(np.argsort(angles))
    slot_base = 2.0 * np.pi * ranks / n
    # common rotation: circular mean of the per-agent slot misalignment
    delta = wrap_angle(angles - slot_base)
    rotation = np.arctan2(np.sin(delta).sum(), np.cos(delta).sum())
    slots = slot_base + rotation
    radius = max(task.d_t, ring_shrink * float(np.median(dist)))
    targets = np.asarray(evader_xy) + radius * np.stack([np.cos(slots), np.sin(slots)], axis=-1)
    return _track_points(states, targets, world, task, gains)
