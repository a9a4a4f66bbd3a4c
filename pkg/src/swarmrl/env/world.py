"""World geometry: bounded rectangle with closed (walled) or toroidal topology."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


def wrap_angle(a):
    """Wrap angles to (-pi, pi]."""
    w = np.mod(a, TWO_PI)
    return np.where(w > np.pi, w - TWO_PI, w)


def wrap_heading(a):
    """Wrap headings to [0, 2*pi)."""
    return np.mod(a, TWO_PI)


@dataclass(frozen=True)
class WorldConfig:
    x_max: float = 100.0
    y_max: float = 100.0
    boundary: str = "closed"  # closed | toroidal
    dt: float = 1.0

    def __post_init__(self):
        if self.x_max <= 0 or self.y_max <= 0:
            raise ValueError("world extents must be positive")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.boundary not in ("closed", "toroidal"):
            raise ValueError(f"unknown boundary {self.boundary!r}")

    @property
    def extent(self):
        return np.array([self.x_max, self.y_max])


def apply_boundary(xy, world: WorldConfig):
    """Clamp into the closed world or wrap around the torus."""
    xy = np.asarray(xy, dtype=np.float64)
    if world.boundary == "toroidal":
        return np.mod(xy, world.extent)
    return np.clip(xy, 0.0, world.extent)


def displacement(from_xy, to_xy, world: WorldConfig):
    """Displacement to_xy - from_xy, minimal-image on toroidal worlds."""
    d = np.asarray(to_xy, dtype=np.float64) - np.asarray(from_xy, dtype=np.float64)
    if world.boundary == "toroidal":
        d = d - world.extent * np.round(d / world.extent)
    return d


def distance(from_xy, to_xy, world: WorldConfig):
    d = displacement(from_xy, to_xy, world)
    return np.sqrt(np.sum(d * d, axis=-1))


def max_distance(world: WorldConfig) -> float:
    """Largest possible separation between two points in the world."""
    ext = world.extent
    if world.boundary == "toroidal":
        ext = ext / 2.0
    return float(np.sqrt(np.sum(ext**2)))


def wall_features(x, y, phi, world: WorldConfig):
    """Distance and relative orientation to the closest wall.

    Ties are broken in the fixed order x-min, y-min, x-max, y-max.  Only
    defined for closed worlds; toroidal worlds have no walls.
    """
    if world.boundary != "closed":
        raise ValueError("wall features are undefined in a toroidal world")
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    dists = np.stack([x, y, world.x_max - x, world.y_max - y], axis=-1)
    idx = np.argmin(dists, axis=-1)  # argmin takes the first minimum: tie order
    d_wall = np.take_along_axis(dists, idx[..., None], axis=-1)[..., 0]
    # absolute bearing of the perpendicular ray toward each wall
    wall_dirs = np.array([np.pi, -np.pi / 2.0, 0.0, np.pi / 2.0])
    phi_wall = wrap_angle(wall_dirs[idx] - np.asarray(phi, dtype=np.float64))
    return d_wall, phi_wall
