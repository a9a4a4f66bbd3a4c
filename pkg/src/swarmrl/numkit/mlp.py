"""Dense multilayer perceptrons with hand-derived backward and tangent passes.

The networks used here are small fixed compositions of affine layers and
elementwise nonlinearities, so reverse-mode gradients are written per layer
instead of going through a general autodiff tape.  All math is float64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .flat import ParamLayout


def _relu(z):
    return np.maximum(z, 0.0)


def _relu_grad(z, a):
    return (z > 0.0).astype(np.float64)


def _tanh(z):
    return np.tanh(z)


def _tanh_grad(z, a):
    return 1.0 - a * a


def _elu(z):
    return np.where(z > 0.0, z, np.expm1(z))


def _elu_grad(z, a):
    return np.where(z > 0.0, 1.0, a + 1.0)


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-z))


def _sigmoid_grad(z, a):
    return a * (1.0 - a)


ACTIVATIONS = {
    "relu": (_relu, _relu_grad),
    "tanh": (_tanh, _tanh_grad),
    "elu": (_elu, _elu_grad),
    "sigmoid": (_sigmoid, _sigmoid_grad),
}


@dataclass(frozen=True)
class MlpSpec:
    """Layer sizes (input first, output last) and the hidden activation.

    The output layer is always linear.
    """

    sizes: tuple
    activation: str = "relu"

    def __post_init__(self):
        if len(self.sizes) < 2:
            raise ValueError("need at least one layer (input and output size)")
        if any(s < 1 for s in self.sizes):
            raise ValueError("all layer sizes must be >= 1")
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}")

    @property
    def n_layers(self):
        return len(self.sizes) - 1

    @property
    def in_dim(self):
        return self.sizes[0]

    @property
    def out_dim(self):
        return self.sizes[-1]


def mlp_layout(spec: MlpSpec) -> ParamLayout:
    slots = []
    for l in range(spec.n_layers):
        slots.append((f"W{l}", (spec.sizes[l + 1], spec.sizes[l])))
        slots.append((f"b{l}", (spec.sizes[l + 1],)))
    return ParamLayout(slots)


def mlp_init(spec: MlpSpec, rng: np.random.Generator, final_scale=1.0):
    """Uniform fan-in/fan-out init; the last layer can be scaled down."""
    layout = mlp_layout(spec)
    params = layout.zeros()
    for l in range(spec.n_layers):
        fan_in, fan_out = spec.sizes[l], spec.sizes[l + 1]
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        W = rng.uniform(-bound, bound, size=(fan_out, fan_in))
        if l == spec.n_layers - 1:
            W *= final_scale
        layout.view(params, f"W{l}")[:] = W
    return params


def mlp_forward(spec: MlpSpec, params, x, return_cache=False):
    """Evaluate the network on a single vector or a batch of row vectors."""
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    a = x[None, :] if single else x
    if a.shape[-1] != spec.in_dim:
        raise ValueError(f"input dim {a.shape[-1]} != spec input {spec.in_dim}")
    if not np.all(np.isfinite(a)):
        raise ValueError("non-finite input")
    layout = mlp_layout(spec)
    act = ACTIVATIONS[spec.activation][0]
    layers = []  # (input, pre-activation) per layer; input of layer l+1 is act(z_l)
    for l in range(spec.n_layers):
        W = layout.view(params, f"W{l}")
        b = layout.view(params, f"b{l}")
        z = a @ W.T + b
        layers.append((a, z))
        a = act(z) if l < spec.n_layers - 1 else z
    out = a[0] if single else a
    if return_cache:
        return out, layers
    return out


def mlp_backward(spec: MlpSpec, params, cache, upstream):
    """Gradient of sum_batch(upstream . output) w.r.t. params and input.

    `cache` is the layer cache from mlp_forward(..., return_cache=True);
    `upstream` has the output's shape.  Returns (flat_grad, input_grad).
    """
    upstream = np.asarray(upstream, dtype=np.float64)
    single = upstream.ndim == 1
    delta = upstream[None, :] if single else upstream
    if delta.shape[-1] != spec.out_dim:
        raise ValueError(f"upstream dim {delta.shape[-1]} != output {spec.out_dim}")
    layout = mlp_layout(spec)
    grad = layout.zeros()
    act_grad = ACTIVATIONS[spec.activation][1]
    delta = delta.copy()
    for l in reversed(range(spec.n_layers)):
        a_in, z = cache[l]
        if l < spec.n_layers - 1:
            delta = delta * act_grad(z, cache[l + 1][0])
        layout.view(grad, f"W{l}")[:] += delta.T @ a_in
        layout.view(grad, f"b{l}")[:] += delta.sum(axis=0)
        W = layout.view(params, f"W{l}")
        delta = delta @ W
    dx = delta[0] if single else delta
    return grad, dx


def mlp_jvp(spec: MlpSpec, params, cache, v, dx=None):
    """Directional derivative of the output along parameter tangent `v`.

    Optionally also propagates an input tangent `dx` (same shape as the input),
    which is needed when the network sits downstream of other layers.
    """
    layout = mlp_layout(spec)
    act_grad = ACTIVATIONS[spec.activation][1]
    batch = cache[0][0].shape[0]
    da = np.zeros((batch, spec.in_dim)) if dx is None else np.atleast_2d(dx).astype(np.float64)
    for l in range(spec.n_layers):
        a_in, z = cache[l]
        W = layout.view(params, f"W{l}")
        dW = layout.view(v, f"W{l}")
        db = layout.view(v, f"b{l}")
        dz = a_in @ dW.T + da @ W.T + db
        da = dz * act_grad(z, cache[l + 1][0]) if l < spec.n_layers - 1 else dz
    return da


def mlp_gradient(spec: MlpSpec, params, x, upstream):
    """Flat gradient of (upstream . output) w.r.t. params, matching the
    layout of `params`."""
    _, cache = mlp_forward(spec, params, x, return_cache=True)
    grad, _ = mlp_backward(spec, params, cache, upstream)
    return grad
