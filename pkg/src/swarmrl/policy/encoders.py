"""Permutation-invariant set encoders.

Every encoder maps a padded neighbor array [B, M, F] with validity mask
[B, M] to a fixed-size embedding [B, K] whose width is independent of the
set size.  Learned encoders (feature-network pooling, concatenation) expose
hand-derived backward and tangent passes; the fixed feature spaces
(histogram, RBF, moments) carry no parameters.

Empty sets embed to the zero vector; the policy assembly appends a
companion empty-set indicator to the local features.
"""

from __future__ import annotations

import numpy as np

from ..numkit import (
    ACTIVATIONS,
    MlpSpec,
    mlp_backward,
    mlp_forward,
    mlp_init,
    mlp_jvp,
    mlp_layout,
)
from .spec import EmbeddingSpec

# ------------------------------------------------------------------- pooling


def _masked_mean(phi, mask):
    cnt = mask.sum(axis=1)
    safe = np.maximum(cnt, 1)
    emb = np.einsum("bmk,bm->bk", phi, mask.astype(np.float64)) / safe[:, None]
    return emb, cnt


def embed_mean(vectors) -> np.ndarray:
    """Arithmetic mean of a set of equally sized vectors; an empty [0, K]
    set embeds to the K zeros (the assembly raises the empty-set flag)."""
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2:
        raise ValueError("expected a [n, K] stack of feature vectors")
    if len(vectors) == 0:
        return np.zeros(vectors.shape[1])
    return vectors.mean(axis=0)


def _softmax_pool(phi, mask, alpha):
    """Per-dimension softmax-weighted average over the masked set.

    Numerically stabilized by subtracting the per-dimension maximum of
    alpha*phi before exponentiation; reduces to the mean at alpha = 0.
    """
    valid = mask[..., None]
    scores = np.where(valid, alpha * phi, -np.inf)
    c = scores.max(axis=1, keepdims=True)
    c = np.where(np.isfinite(c), c, 0.0)
    w = np.where(valid, np.exp(np.where(valid, scores - c, 0.0)), 0.0)
    W = w.sum(axis=1)
    safeW = np.where(W > 0.0, W, 1.0)
    psi = (w * phi).sum(axis=1) / safeW
    # d psi_k / d phi_jk, reused by both the backward and the tangent pass
    G = w / safeW[:, None, :] * (1.0 + alpha * (phi - psi[:, None, :]))
    return psi, G


def pool_softmax(vectors, alpha) -> np.ndarray:
    vectors = np.asarray(vectors, dtype=np.float64)
    if len(vectors) == 0:
        return embed_mean(vectors)
    psi, _ = _softmax_pool(vectors[None], np.ones((1, len(vectors)), dtype=bool), alpha)
    return psi[0]


def pool_max(vectors) -> np.ndarray:
    vectors = np.asarray(vectors, dtype=np.float64)
    if len(vectors) == 0:
        return embed_mean(vectors)
    return vectors.max(axis=0)


def moment_features(vectors, orders=("mean", "std", "skew", "kurtosis")) -> np.ndarray:
    """Population moments per feature dimension, concatenated order-major.

    Standard deviation, skew and kurtosis of sets smaller than 2/3/4 elements
    are emitted as 0, as are skew/kurtosis of degenerate sets (std < 1e-12).
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2:
        raise ValueError("expected a [n, K] stack of feature vectors")
    if len(vectors) == 0:
        return np.zeros(len(orders) * vectors.shape[1])
    emb, _ = _moments_masked(
        vectors[None], np.ones((1, len(vectors)), dtype=bool), orders
    )
    return emb[0]


def _moments_masked(x, mask, orders):
    m = mask[..., None].astype(np.float64)
    cnt = mask.sum(axis=1).astype(np.float64)
    safe = np.maximum(cnt, 1.0)[:, None]
    mean = (x * m).sum(axis=1) / safe
    centered = (x - mean[:, None, :]) * m
    var = (centered**2).sum(axis=1) / safe
    std = np.sqrt(np.maximum(var, 0.0))
    std_ok = std >= 1e-12
    safe_std = np.where(std_ok, std, 1.0)
    parts = []
    for order in orders:
        if order == "mean":
            parts.append(mean)
        elif order == "std":
            parts.append(np.where(cnt[:, None] >= 2, std, 0.0))
        elif order == "skew":
            m3 = (centered**3).sum(axis=1) / safe
            val = np.where(std_ok, m3 / safe_std**3, 0.0)
            parts.append(np.where(cnt[:, None] >= 3, val, 0.0))
        elif order == "kurtosis":
            m4 = (centered**4).sum(axis=1) / safe
            val = np.where(std_ok, m4 / safe_std**4, 0.0)
            parts.append(np.where(cnt[:, None] >= 4, val, 0.0))
        else:
            raise ValueError(f"unknown moment order {order!r}")
    return np.concatenate(parts, axis=-1), cnt


def _canonical_stack(neighbors, mask, cap):
    """Sort valid rows by ascending distance (first feature), keep the
    nearest `cap`, zero-pad, and flatten to [B, cap*F]."""
    b, m, f = neighbors.shape
    if m < cap:
        neighbors = np.concatenate([neighbors, np.zeros((b, cap - m, f))], axis=1)
        mask = np.concatenate([mask, np.zeros((b, cap - m), dtype=bool)], axis=1)
    key = np.where(mask, neighbors[..., 0], np.inf)
    order = np.argsort(key, axis=1, kind="stable")[:, :cap]
    chosen = np.take_along_axis(neighbors, order[..., None], axis=1)
    valid = np.take_along_axis(mask, order, axis=1)
    return (chosen * valid[..., None]).reshape(b, cap * f)


def concat_features(vectors, max_neighbors, pad_value=0.0) -> np.ndarray:
    """Fixed-length canonical concatenation: neighbors sorted by ascending
    distance (first feature), nearest-first truncation, padded tail."""
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2:
        raise ValueError("expected a [n, K] stack of feature vectors")
    n, f = vectors.shape
    flat = _canonical_stack(vectors[None], np.ones((1, n), dtype=bool), max_neighbors)[0]
    if pad_value != 0.0 and n < max_neighbors:
        flat[n * f :] = pad_value
    return flat


# --------------------------------------------------------------- feature maps


def histogram_bin_index(values, width, n_bins):
    """Right-closed binning: bin m covers (m*width, (m+1)*width], edge values
    fall into the lower bin, everything is clipped into range."""
    idx = np.ceil(np.asarray(values) / width).astype(int) - 1
    return np.clip(idx, 0, n_bins - 1)


def feature_map_histogram(obs, bins, d_range) -> np.ndarray:
    """One-hot over the (distance-bin, bearing-bin) grid for one observation."""
    d = min(max(float(obs[0]), 0.0), d_range)
    i = histogram_bin_index(d, d_range / bins, bins)
    j = histogram_bin_index(float(obs[1]) + np.pi, 2.0 * np.pi / bins, bins)
    out = np.zeros(bins * bins)
    out[i * bins + j] = 1.0
    return out


def rbf_centers(grid, d_range):
    """Evenly spaced center grid and widths over distance x bearing space."""
    sig_d = d_range / grid
    sig_b = 2.0 * np.pi / grid
    mu_d = (np.arange(grid) + 0.5) * sig_d
    mu_b = -np.pi + (np.arange(grid) + 0.5) * sig_b
    return mu_d, mu_b, sig_d, sig_b


def feature_map_rbf(obs, grid, d_range) -> np.ndarray:
    """Gaussian activations of one observation over the center grid."""
    mu_d, mu_b, sig_d, sig_b = rbf_centers(grid, d_range)
    qd = ((float(obs[0]) - mu_d) / sig_d) ** 2
    qb = ((float(obs[1]) - mu_b) / sig_b) ** 2
    return np.exp(-0.5 * (qd[:, None] + qb[None, :])).ravel()


# ------------------------------------------------------------ encoder classes


class FixedEncoder:
    """Parameter-free feature space pooled over the set."""

    n_params = 0

    def init(self, rng):
        return np.zeros(0)

    def backward(self, cache, upstream):
        return np.zeros(0)

    def jvp(self, cache, v):
        batch = cache
        return np.zeros((batch, self.out_dim))


class HistogramEncoder(FixedEncoder):
    def __init__(self, spec: EmbeddingSpec, feature_dim, d_range):
        if feature_dim != 2:
            raise ValueError("histogram embeddings require the 2-feature basic set")
        self.bins = spec.bins
        self.d_range = d_range
        self.out_dim = spec.bins**2

    def forward(self, neighbors, mask, params):
        bins = self.bins
        d = np.clip(neighbors[..., 0], 0.0, self.d_range)
        i = histogram_bin_index(d, self.d_range / bins, bins)
        j = histogram_bin_index(neighbors[..., 1] + np.pi, 2.0 * np.pi / bins, bins)
        flat = i * bins + j
        b, m = mask.shape
        onehot = np.zeros((b, m, self.out_dim))
        np.put_along_axis(onehot, flat[..., None], 1.0, axis=2)
        emb, _ = _masked_mean(onehot, mask)
        return emb, b


class RbfEncoder(FixedEncoder):
    def __init__(self, spec: EmbeddingSpec, feature_dim, d_range):
        if feature_dim != 2:
            raise ValueError("RBF embeddings require the 2-feature basic set")
        self.grid = spec.rbf_grid
        self.d_range = d_range
        self.normalize = spec.normalize
        self.out_dim = spec.rbf_grid**2

    def forward(self, neighbors, mask, params):
        mu_d, mu_b, sig_d, sig_b = rbf_centers(self.grid, self.d_range)
        qd = ((neighbors[..., 0, None] - mu_d) / sig_d) ** 2  # [B, M, G]
        qb = ((neighbors[..., 1, None] - mu_b) / sig_b) ** 2
        act = np.exp(-0.5 * (qd[..., :, None] + qb[..., None, :]))
        act = act.reshape(*mask.shape, self.out_dim)
        if self.normalize:
            emb, _ = _masked_mean(act, mask)
        else:
            emb = (act * mask[..., None]).sum(axis=1)
        return emb, mask.shape[0]


class MomentsEncoder(FixedEncoder):
    def __init__(self, spec: EmbeddingSpec, feature_dim, d_range=None):
        self.orders = spec.moments
        self.out_dim = len(spec.moments) * feature_dim

    def forward(self, neighbors, mask, params):
        emb, _ = _moments_masked(neighbors, mask, self.orders)
        return emb, mask.shape[0]


class PooledNetEncoder:
    """Feature network applied per neighbor, then mean/softmax/max pooled.

    The feature network is an MLP with activated hidden layers and a linear
    output layer; pooling over the set keeps the output width fixed in the
    set size.
    """

    def __init__(self, spec: EmbeddingSpec, feature_dim, d_range=None):
        self.kind = spec.kind
        self.alpha = spec.alpha if spec.kind == "softmax" else 0.0
        self.net = MlpSpec((feature_dim, *spec.nn_layers, spec.embed_dim), spec.activation)
        self.n_params = mlp_layout(self.net).size
        self.out_dim = spec.embed_dim

    def init(self, rng):
        return mlp_init(self.net, rng)

    def forward(self, neighbors, mask, params):
        b, m, f = neighbors.shape
        phi_flat, net_cache = mlp_forward(
            self.net, params, neighbors.reshape(b * m, f), return_cache=True
        )
        phi = phi_flat.reshape(b, m, self.out_dim)
        if self.kind == "nn_mean":
            emb, _ = _masked_mean(phi, mask)
            pool_cache = None
        elif self.kind == "softmax":
            emb, G = _softmax_pool(phi, mask, self.alpha)
            pool_cache = G
        else:  # max
            scores = np.where(mask[..., None], phi, -np.inf)
            idx = scores.argmax(axis=1)  # first maximum on ties
            emb = np.take_along_axis(phi, idx[:, None, :], axis=1)[:, 0, :]
            emb = np.where(mask.any(axis=1)[:, None], emb, 0.0)
            pool_cache = idx
        return emb, (params, mask, net_cache, pool_cache)

    def _pool_upstream(self, cache, upstream):
        """Distribute an embedding gradient back onto the per-neighbor map."""
        _, mask, _, pool_cache = cache
        b, m = mask.shape
        if self.kind == "nn_mean":
            cnt = np.maximum(mask.sum(axis=1), 1)[:, None]
            dphi = (upstream / cnt)[:, None, :] * mask[..., None]
        elif self.kind == "softmax":
            dphi = upstream[:, None, :] * pool_cache
        else:
            dphi = np.zeros((b, m, self.out_dim))
            np.put_along_axis(dphi, pool_cache[:, None, :], upstream[:, None, :], axis=1)
            dphi *= mask.any(axis=1)[:, None, None]
        return dphi

    def backward(self, cache, upstream):
        params, mask, net_cache, _ = cache
        b, m = mask.shape
        dphi = self._pool_upstream(cache, upstream)
        grad, _ = mlp_backward(self.net, params, net_cache, dphi.reshape(b * m, self.out_dim))
        return grad

    def jvp(self, cache, v):
        params, mask, net_cache, pool_cache = cache
        b, m = mask.shape
        dphi = mlp_jvp(self.net, params, net_cache, v).reshape(b, m, self.out_dim)
        if self.kind == "nn_mean":
            demb, _ = _masked_mean(dphi, mask)
        elif self.kind == "softmax":
            demb = (pool_cache * dphi).sum(axis=1)
        else:
            demb = np.take_along_axis(dphi, pool_cache[:, None, :], axis=1)[:, 0, :]
            demb = np.where(mask.any(axis=1)[:, None], demb, 0.0)
        return demb


class ConcatEncoder:
    """Canonical sort-pad concatenation followed by one activated layer."""

    def __init__(self, spec: EmbeddingSpec, feature_dim, d_range=None, max_neighbors=None):
        cap = spec.max_neighbors if spec.max_neighbors is not None else max_neighbors
        if cap is None or cap < 1:
            raise ValueError("concat encoder needs a max_neighbors capacity")
        self.max_neighbors = int(cap)
        self.feature_dim = feature_dim
        self.layer = MlpSpec((self.max_neighbors * feature_dim, spec.embed_dim))
        self.n_params = mlp_layout(self.layer).size
        self.out_dim = spec.embed_dim
        self.activation = spec.activation

    def init(self, rng):
        return mlp_init(self.layer, rng)

    def forward(self, neighbors, mask, params):
        x = _canonical_stack(neighbors, mask, self.max_neighbors)
        z, net_cache = mlp_forward(self.layer, params, x, return_cache=True)
        act, _ = ACTIVATIONS[self.activation]
        return act(z), (params, net_cache, z)

    def backward(self, cache, upstream):
        params, net_cache, z = cache
        act, act_grad = ACTIVATIONS[self.activation]
        dz = upstream * act_grad(z, act(z))
        grad, _ = mlp_backward(self.layer, params, net_cache, dz)
        return grad

    def jvp(self, cache, v):
        params, net_cache, z = cache
        act, act_grad = ACTIVATIONS[self.activation]
        dz = mlp_jvp(self.layer, params, net_cache, v)
        return act_grad(z, act(z)) * dz


def build_encoder(spec: EmbeddingSpec, feature_dim, d_range, max_neighbors=None):
    errs = spec.validate()
    if errs:
        raise ValueError("invalid embedding spec: " + "; ".join(errs))
    if spec.kind in ("nn_mean", "softmax", "max"):
        return PooledNetEncoder(spec, feature_dim, d_range)
    if spec.kind == "histogram":
        return HistogramEncoder(spec, feature_dim, d_range)
    if spec.kind == "rbf":
        return RbfEncoder(spec, feature_dim, d_range)
    if spec.kind == "moments":
        return MomentsEncoder(spec, feature_dim)
    return ConcatEncoder(spec, feature_dim, max_neighbors=max_neighbors)
