"""Policy and value network assembly.

Architecture: the neighbor set runs through a permutation-invariant encoder;
the embedding is concatenated with the local features and one empty-set
indicator per embedded set, then a hidden trunk layer feeds the output head
(action mean, or a scalar value).  The action log standard deviation is a
free state-independent parameter vector of the policy.

Inputs to the learned layers are divided by fixed per-feature ranges so all
network inputs are O(1); histogram and RBF feature spaces keep raw values
because their grids are laid out over the raw feature ranges.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from ..env.observe import FeatureSpec, JointObs, ObservationSet
from ..env.rewards import pursuit_radius
from ..env.tasks import TaskConfig
from ..env.world import WorldConfig, max_distance
from ..numkit import (
    DiagGaussian,
    MlpSpec,
    ParamLayout,
    mlp_backward,
    mlp_forward,
    mlp_init,
    mlp_jvp,
    mlp_layout,
)
from .encoders import build_encoder
from .spec import EmbeddingSpec

LOG_STD_INIT = float(np.log(0.6))

RAW_INPUT_KINDS = ("histogram", "rbf")


def feature_scales(fs: FeatureSpec, task: TaskConfig, world: WorldConfig):
    """Per-feature normalization ranges for the learned network inputs."""
    from ..env.graph import disconnected_sentinel
    from ..env.rewards import pursuit_radius

    ranges = {
        "dist": neighbor_range(task, world),
        "bearing": np.pi,
        "orient": np.pi,
        "dvx": 2.0 * task.v_max,
        "dvy": 2.0 * task.v_max,
        "nbr_count": float(max(task.n_agents - 1, 1)),
        "evader_path": disconnected_sentinel(world),
        "wall_dist": min(world.x_max, world.y_max) / 2.0,
        "wall_bearing": np.pi,
        "v": task.v_max,
        "omega": task.omega_max,
        "evader_dist": pursuit_radius(task, world),
        "evader_bearing": np.pi,
    }
    nbr = np.array([ranges[n] for n in fs.neighbor_names])
    loc = np.array([ranges[n] for n in fs.loc_names])
    ev = np.array(
        [pursuit_radius(task, world) if n == "dist" else np.pi for n in fs.evader_names]
    )
    return nbr, loc, ev


def _ensure_min_width(neighbors, mask):
    """Give the padded axis at least one column so reductions stay defined."""
    if mask.shape[1] == 0:
        b = mask.shape[0]
        neighbors = np.zeros((b, 1, neighbors.shape[2]))
        mask = np.zeros((b, 1), dtype=bool)
    return neighbors, mask


def batch_from_sets(sets, feature_spec: FeatureSpec) -> JointObs:
    """Stack per-agent ObservationSets into one padded batch."""
    b = len(sets)
    m = max((len(s.neighbors) for s in sets), default=0)
    neighbors = np.zeros((b, max(m, 1), feature_spec.neighbor_dim))
    mask = np.zeros((b, max(m, 1)), dtype=bool)
    loc = np.zeros((b, feature_spec.loc_dim))
    evaders = evader_mask = None
    if feature_spec.has_evader_set:
        e = max((0 if s.evaders is None else len(s.evaders)) for s in sets)
        evaders = np.zeros((b, max(e, 1), feature_spec.evader_dim))
        evader_mask = np.zeros((b, max(e, 1)), dtype=bool)
    for i, s in enumerate(sets):
        k = len(s.neighbors)
        if k:
            neighbors[i, :k] = s.neighbors
            mask[i, :k] = True
        loc[i] = s.loc
        if evaders is not None and s.evaders is not None and len(s.evaders):
            evaders[i, : len(s.evaders)] = s.evaders
            evader_mask[i, : len(s.evaders)] = True
    return JointObs(neighbors, mask, loc, evaders, evader_mask)


class PolicyNetwork:
    """Encoder + trunk + head over one flat parameter vector."""

    def __init__(
        self,
        feature_spec: FeatureSpec,
        embedding_spec: EmbeddingSpec,
        out_dim=2,
        hidden=(64,),
        activation="relu",
        d_range=100.0,
        evader_d_range=None,
        max_neighbors=None,
        max_evaders=None,
        with_log_std=True,
        neighbor_scale=None,
        loc_scale=None,
        evader_scale=None,
    ):
        self.feature_spec = feature_spec
        self.embedding_spec = embedding_spec
        self.neighbor_scale = (
            np.ones(feature_spec.neighbor_dim) if neighbor_scale is None
            else np.asarray(neighbor_scale, dtype=np.float64)
        )
        self.loc_scale = (
            np.ones(feature_spec.loc_dim) if loc_scale is None
            else np.asarray(loc_scale, dtype=np.float64)
        )
        self.evader_scale = (
            np.ones(feature_spec.evader_dim) if evader_scale is None
            else np.asarray(evader_scale, dtype=np.float64)
        )
        self.scale_encoder_inputs = embedding_spec.kind not in RAW_INPUT_KINDS
        self.out_dim = out_dim
        self.hidden = tuple(hidden)
        self.activation = activation
        self.encoder = build_encoder(
            embedding_spec, feature_spec.neighbor_dim, d_range, max_neighbors
        )
        self.evader_encoder = None
        if feature_spec.has_evader_set:
            ev_spec = replace(embedding_spec, max_neighbors=None)
            self.evader_encoder = build_encoder(
                ev_spec,
                feature_spec.evader_dim,
                evader_d_range if evader_d_range is not None else d_range,
                max_evaders,
            )
        trunk_in = self.encoder.out_dim + feature_spec.loc_dim + 1
        if self.evader_encoder is not None:
            trunk_in += self.evader_encoder.out_dim + 1
        self.trunk = MlpSpec((trunk_in, *self.hidden, out_dim), activation)
        slots = [("enc", (self.encoder.n_params,))]
        if self.evader_encoder is not None:
            slots.append(("enc_e", (self.evader_encoder.n_params,)))
        slots.append(("trunk", (mlp_layout(self.trunk).size,)))
        self.with_log_std = with_log_std
        if with_log_std:
            slots.append(("log_std", (out_dim,)))
        self.layout = ParamLayout(slots)

    @property
    def n_params(self):
        return self.layout.size

    def init_params(self, rng, final_scale=0.01):
        params = self.layout.zeros()
        self.layout.view(params, "enc")[:] = self.encoder.init(rng)
        if self.evader_encoder is not None:
            self.layout.view(params, "enc_e")[:] = self.evader_encoder.init(rng)
        scale = final_scale if self.with_log_std else 1.0
        self.layout.view(params, "trunk")[:] = mlp_init(self.trunk, rng, final_scale=scale)
        if self.with_log_std:
            self.layout.view(params, "log_std")[:] = LOG_STD_INIT
        return params

    # ----------------------------------------------------------------- passes

    def _trunk_input(self, obs: JointObs, params):
        neighbors, mask = _ensure_min_width(obs.neighbors, obs.mask)
        if self.scale_encoder_inputs:
            neighbors = neighbors / self.neighbor_scale
        emb, enc_cache = self.encoder.forward(neighbors, mask, self.layout.view(params, "enc"))
        cols = [emb]
        caches = {"enc": enc_cache}
        indicator = [(~mask.any(axis=1)).astype(np.float64)[:, None]]
        if self.evader_encoder is not None:
            ev, ev_mask = _ensure_min_width(obs.evaders, obs.evader_mask)
            if self.scale_encoder_inputs:
                ev = ev / self.evader_scale
            emb_e, cache_e = self.evader_encoder.forward(
                ev, ev_mask, self.layout.view(params, "enc_e")
            )
            cols.append(emb_e)
            caches["enc_e"] = cache_e
            indicator.append((~ev_mask.any(axis=1)).astype(np.float64)[:, None])
        x = np.concatenate(cols + [obs.loc / self.loc_scale] + indicator, axis=1)
        return x, caches

    def forward(self, obs: JointObs, params, return_cache=False):
        """Head outputs for a batch of observations ([B, out_dim])."""
        x, caches = self._trunk_input(obs, params)
        out, trunk_cache = mlp_forward(
            self.trunk, self.layout.view(params, "trunk"), x, return_cache=True
        )
        if return_cache:
            caches["trunk"] = trunk_cache
            caches["params"] = params
            return out, caches
        return out

    def backward(self, cache, upstream):
        """Flat parameter gradient of sum_batch(upstream . output)."""
        params = cache["params"]
        grad = self.layout.zeros()
        trunk_grad, dx = mlp_backward(
            self.trunk, self.layout.view(params, "trunk"), cache["trunk"], upstream
        )
        self.layout.view(grad, "trunk")[:] = trunk_grad
        k = self.encoder.out_dim
        self.layout.view(grad, "enc")[:] = self.encoder.backward(cache["enc"], dx[:, :k])
        if self.evader_encoder is not None:
            ke = self.evader_encoder.out_dim
            self.layout.view(grad, "enc_e")[:] = self.evader_encoder.backward(
                cache["enc_e"], dx[:, k : k + ke]
            )
        return grad

    def jvp(self, cache, v):
        """Directional derivative of the head output along parameter tangent v."""
        params = cache["params"]
        batch = cache["trunk"][0][0].shape[0]
        denc = self.encoder.jvp(cache["enc"], self.layout.view(v, "enc"))
        parts = [denc]
        if self.evader_encoder is not None:
            parts.append(self.evader_encoder.jvp(cache["enc_e"], self.layout.view(v, "enc_e")))
        pad = self.trunk.in_dim - sum(p.shape[1] for p in parts)
        parts.append(np.zeros((batch, pad)))
        dx = np.concatenate(parts, axis=1)
        return mlp_jvp(
            self.trunk, self.layout.view(params, "trunk"), cache["trunk"],
            self.layout.view(v, "trunk"), dx=dx,
        )

    # ------------------------------------------------------------ conveniences

    def distribution(self, obs, params) -> DiagGaussian:
        if isinstance(obs, ObservationSet):
            obs = batch_from_sets([obs], self.feature_spec)
            return DiagGaussian(self.forward(obs, params)[0], self.log_std(params))
        return DiagGaussian(self.forward(obs, params), self.log_std(params))

    def log_std(self, params):
        if not self.with_log_std:
            raise ValueError("value networks have no action distribution")
        return self.layout.view(params, "log_std")

    def values(self, obs: JointObs, params):
        return self.forward(obs, params)[:, 0]


def sample_action(dist: DiagGaussian, rng, bounds):
    """Draw mean + std * z and clamp to the symmetric action bounds."""
    bounds = np.asarray(bounds)
    raw = dist.mean + dist.std * rng.standard_normal(dist.mean.shape)
    return np.clip(raw, -bounds, bounds)


def neighbor_range(task: TaskConfig, world: WorldConfig) -> float:
    """Distance range of the neighbor feature space (histogram/RBF grids)."""
    if task.observability == "local":
        return task.d_c
    return max_distance(world)


def build_policy(task: TaskConfig, world: WorldConfig, embedding_spec: EmbeddingSpec,
                 hidden=(64,), value=False) -> PolicyNetwork:
    """Assemble a policy (or value) network matching a task's feature spec."""
    fs = FeatureSpec.from_task(task, world)
    nbr_scale, loc_scale, ev_scale = feature_scales(fs, task, world)
    return PolicyNetwork(
        fs,
        embedding_spec,
        out_dim=1 if value else 2,
        hidden=hidden,
        activation=embedding_spec.activation,
        d_range=neighbor_range(task, world),
        evader_d_range=pursuit_radius(task, world),
        max_neighbors=task.n_agents - 1,
        max_evaders=task.n_evaders,
        with_log_std=not value,
        neighbor_scale=nbr_scale,
        loc_scale=loc_scale,
        evader_scale=ev_scale,
    )
