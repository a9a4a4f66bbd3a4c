"""Diagonal-Gaussian distribution math for stochastic policies.

Means may be batched ([B, k]); the log standard deviation is a single
state-independent vector shared across the batch.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LOG_2PI = np.log(2.0 * np.pi)


@dataclass
class DiagGaussian:
    mean: np.ndarray
    log_std: np.ndarray

    def __post_init__(self):
        self.mean = np.asarray(self.mean, dtype=np.float64)
        self.log_std = np.asarray(self.log_std, dtype=np.float64)
        if self.mean.shape[-1] != self.log_std.shape[-1]:
            raise ValueError("mean and log_std dimensions differ")
        if not np.all(np.isfinite(self.log_std)):
            raise ValueError("non-finite log_std")

    @property
    def std(self):
        return np.exp(self.log_std)


def gaussian_logprob(d: DiagGaussian, action) -> np.ndarray:
    """Log density at `action`; broadcasts over leading batch dims."""
    action = np.asarray(action, dtype=np.float64)
    if action.shape[-1] != d.mean.shape[-1]:
        raise ValueError("action dimension mismatch")
    z = (action - d.mean) / d.std
    k = d.mean.shape[-1]
    return -0.5 * np.sum(z * z, axis=-1) - np.sum(d.log_std) - 0.5 * k * LOG_2PI


def gaussian_kl(old: DiagGaussian, new: DiagGaussian) -> np.ndarray:
    """KL(old || new), summed over dimensions; broadcasts over batch dims."""
    if old.mean.shape[-1] != new.mean.shape[-1]:
        raise ValueError("dimension mismatch")
    var_old = np.exp(2.0 * old.log_std)
    var_new = np.exp(2.0 * new.log_std)
    dmu = new.mean - old.mean
    per_dim = new.log_std - old.log_std + (var_old + dmu * dmu) / (2.0 * var_new) - 0.5
    return np.sum(per_dim, axis=-1)


def gaussian_sample(d: DiagGaussian, rng: np.random.Generator) -> np.ndarray:
    return d.mean + d.std * rng.standard_normal(d.mean.shape)
