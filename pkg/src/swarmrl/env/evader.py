"""Evader strategy: enlarge the own Voronoi region.

The evader's Voronoi cell against the pursuer set is estimated by assigning a
fixed grid of sample points to their nearest entity; the evader then moves at
full speed toward the centroid of its cell.  Sampling handles the closed and
the toroidal topology uniformly (minimal-image metric on the torus).  The
grid is axis-separable, so all distances are built from per-axis pieces.
"""

from __future__ import annotations

import numpy as np

from .world import WorldConfig, displacement

_AXES_CACHE = {}


def _grid_axes(world: WorldConfig, resolution: int):
    key = (world.x_max, world.y_max, resolution)
    if key not in _AXES_CACHE:
        xs = (np.arange(resolution) + 0.5) * (world.x_max / resolution)
        ys = (np.arange(resolution) + 0.5) * (world.y_max / resolution)
        _AXES_CACHE[key] = (xs, ys)
    return _AXES_CACHE[key]


def _sample_grid(world: WorldConfig, resolution: int):
    xs, ys = _grid_axes(world, resolution)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    return np.stack([gx.ravel(), gy.ravel()], axis=-1)


def _axis_offsets(coords, axis, length, toroidal):
    """Signed displacement from each coordinate to every axis sample."""
    off = axis[None, :] - np.asarray(coords, dtype=np.float64)[:, None]
    if toroidal:
        off -= length * np.round(off / length)
    return off


def voronoi_cell_centroid_offset(evader_xy, pursuers_xy, world: WorldConfig, resolution=128):
    """Centroid of the evader's estimated Voronoi cell, as an offset from the
    evader (minimal-image displacements on the torus)."""
    evader_xy = np.asarray(evader_xy, dtype=np.float64)
    pursuers_xy = np.atleast_2d(np.asarray(pursuers_xy, dtype=np.float64))[:, :2]
    xs, ys = _grid_axes(world, resolution)
    toroidal = world.boundary == "toroidal"

    ex = _axis_offsets(evader_xy[:1], xs, world.x_max, toroidal)[0]
    ey = _axis_offsets(evader_xy[1:2], ys, world.y_max, toroidal)[0]
    e_d2 = ex[:, None] ** 2 + ey[None, :] ** 2

    px = _axis_offsets(pursuers_xy[:, 0], xs, world.x_max, toroidal)
    py = _axis_offsets(pursuers_xy[:, 1], ys, world.y_max, toroidal)
    p_d2 = np.amin(px[:, :, None] ** 2 + py[:, None, :] ** 2, axis=0)

    owned = e_d2 <= p_d2
    count = owned.sum()
    if count == 0:
        return np.zeros(2)
    # axis-separable centroid: weight each row/column of the mask
    off_x = float(owned.sum(axis=1) @ ex) / count
    off_y = float(owned.sum(axis=0) @ ey) / count
    return np.array([off_x, off_y])


def evader_action(evader_xy, pursuer_states, world: WorldConfig, speed, resolution=128):
    """Velocity command of the Voronoi evader: full speed toward the centroid
    of its own cell, zero once the centroid coincides with its position."""
    offset = voronoi_cell_centroid_offset(
        evader_xy, np.asarray(pursuer_states)[:, :2], world, resolution
    )
    norm = np.linalg.norm(offset)
    if norm <= 1e-9:
        return np.zeros(2)
    return speed * offset / norm
