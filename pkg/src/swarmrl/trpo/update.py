"""The constrained natural-gradient update.

The surrogate objective is the importance-ratio weighted advantage mean; its
gradient and the Fisher-vector products are computed analytically through the
policy's backward and tangent passes.  At the old parameters the Hessian of
the mean KL equals the Gauss-Newton form J' diag(1/sigma^2) J plus a constant
2 per log-std coordinate, which is what `fisher_vector_product` implements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..numkit import DiagGaussian, conjugate_gradient, gaussian_kl, gaussian_logprob
from .batch import Batch


def surrogate_loss(policy, params, batch: Batch) -> float:
    """Mean over the batch of exp(logpi - logpi_old) * advantage."""
    mean = policy.forward(batch.obs, params)
    logp = gaussian_logprob(DiagGaussian(mean, policy.log_std(params)), batch.actions)
    ratio = np.exp(logp - batch.logp)
    if not np.all(np.isfinite(ratio)):
        raise FloatingPointError("non-finite importance ratio")
    return float(np.mean(ratio * batch.advantages))


def surrogate_gradient(policy, params, batch: Batch, precomputed=None):
    """Analytic gradient of the surrogate at arbitrary params."""
    if precomputed is None:
        mean, cache = policy.forward(batch.obs, params, return_cache=True)
    else:
        mean, cache = precomputed
    log_std = policy.log_std(params)
    std = np.exp(log_std)
    logp = gaussian_logprob(DiagGaussian(mean, log_std), batch.actions)
    ratio = np.exp(logp - batch.logp)
    weight = (ratio * batch.advantages)[:, None]
    z = (batch.actions - mean) / std
    grad = policy.backward(cache, weight * z / std) / len(batch)
    g_logstd = np.mean(weight * (z * z - 1.0), axis=0)
    policy.layout.view(grad, "log_std")[:] += g_logstd
    return grad


def mean_kl(policy, params, old_mean, old_log_std, batch: Batch) -> float:
    """Batch-mean KL(pi_old || pi_theta) at the batch observations."""
    mean = policy.forward(batch.obs, params)
    kl = gaussian_kl(
        DiagGaussian(old_mean, old_log_std),
        DiagGaussian(mean, policy.log_std(params)),
    )
    return float(np.mean(kl))


def fisher_vector_product(policy, params, cache, v, damping):
    """(Hessian of mean KL at the old parameters) @ v, plus damping * v.

    Exact at theta_old: tangent through the mean network, weighted by the
    inverse action variance, pulled back through the backward pass; log-std
    coordinates contribute a constant curvature of 2.
    """
    std = np.exp(policy.log_std(params))
    dmean = policy.jvp(cache, v)
    batch_size = dmean.shape[0]
    fv = policy.backward(cache, dmean / (std * std)) / batch_size
    policy.layout.view(fv, "log_std")[:] += 2.0 * policy.layout.view(v, "log_std")
    if not np.all(np.isfinite(fv)):
        raise FloatingPointError("non-finite Fisher-vector product")
    return fv + damping * v


@dataclass
class UpdateStats:
    accepted: bool
    step_fraction: float
    kl: float
    improvement: float
    grad_norm: float
    cg_residual: float
    expected_improvement: float


def trpo_update(policy, params, batch: Batch, *, kl_delta=0.01, cg_iters=10,
                cg_damping=0.1, backtracks=10, backtrack_factor=0.8, cg_subsample=1):
    """One trust-region step; returns (new_params, stats).

    Fisher-vector products may run on every cg_subsample-th transition (the
    curvature estimate tolerates far smaller batches than the gradient).
    """
    old_mean, cache = policy.forward(batch.obs, params, return_cache=True)
    old_log_std = policy.log_std(params).copy()
    g = surrogate_gradient(policy, params, batch, precomputed=(old_mean, cache))
    g_norm = float(np.linalg.norm(g))
    if g_norm < 1e-12:
        return params, UpdateStats(False, 0.0, 0.0, 0.0, g_norm, 0.0, 0.0)

    if cg_subsample > 1:
        sub = batch.select(np.arange(0, len(batch), cg_subsample))
        _, fvp_cache = policy.forward(sub.obs, params, return_cache=True)
    else:
        fvp_cache = cache
    res = conjugate_gradient(
        lambda v: fisher_vector_product(policy, params, fvp_cache, v, cg_damping),
        g,
        max_iters=cg_iters,
        residual_tol=1e-10,
    )
    step_dir = res.x
    shs = float(step_dir @ fisher_vector_product(policy, params, fvp_cache, step_dir, cg_damping))
    if shs <= 0 or not np.isfinite(shs):
        return params, UpdateStats(False, 0.0, 0.0, 0.0, g_norm, res.residual, 0.0)
    full_step = np.sqrt(2.0 * kl_delta / shs) * step_dir
    expected = float(g @ full_step)

    old_loss = surrogate_loss(policy, params, batch)
    frac = 1.0
    for _ in range(backtracks):
        candidate = params + frac * full_step
        try:
            new_loss = surrogate_loss(policy, candidate, batch)
            kl = mean_kl(policy, candidate, old_mean, old_log_std, batch)
        except FloatingPointError:
            frac *= backtrack_factor
            continue
        improvement = new_loss - old_loss
        if improvement > 0.0 and kl <= kl_delta:
            return candidate, UpdateStats(
                True, frac, kl, improvement, g_norm, res.residual, expected
            )
        frac *= backtrack_factor
    return params, UpdateStats(False, 0.0, 0.0, 0.0, g_norm, res.residual, expected)


# ----------------------------------------------------------------- value fit


def fit_value(value_net, params, batch: Batch, *, epochs=10, lr=1e-2, minibatch=512,
              rng=None):
    """Regress the value network on Monte-Carlo returns with Adam minibatches.

    Returns (params, mse_before, mse_after); zero epochs leave the parameters
    untouched.
    """
    if batch.returns is None:
        raise ValueError("compute returns first")
    rng = rng if rng is not None else np.random.default_rng(0)
    targets = batch.returns
    n = len(batch)

    def mse(p):
        return float(np.mean((value_net.values(batch.obs, p) - targets) ** 2))

    before = mse(params)
    params = params.copy()
    m = np.zeros_like(params)
    v = np.zeros_like(params)
    beta1, beta2, eps = 0.9, 0.999, 1e-8
    step = 0
    for _ in range(epochs):
        order = rng.permutation(n)
        for start in range(0, n, minibatch):
            idx = order[start : start + minibatch]
            sub = batch.select(idx)
            pred, cache = value_net.forward(sub.obs, params, return_cache=True)
            err = pred[:, 0] - targets[idx]
            if not np.all(np.isfinite(err)):
                raise FloatingPointError("value fit diverged")
            grad = value_net.backward(cache, (2.0 * err / len(idx))[:, None])
            step += 1
            m = beta1 * m + (1 - beta1) * grad
            v = beta2 * v + (1 - beta2) * grad * grad
            mhat = m / (1 - beta1**step)
            vhat = v / (1 - beta2**step)
            params -= lr * mhat / (np.sqrt(vhat) + eps)
    return params, before, mse(params)
