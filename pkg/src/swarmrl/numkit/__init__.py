from .cg import CGResult, conjugate_gradient
from .flat import ParamLayout
from .gaussian import DiagGaussian, gaussian_kl, gaussian_logprob, gaussian_sample
from .mlp import (
    ACTIVATIONS,
    MlpSpec,
    mlp_backward,
    mlp_forward,
    mlp_gradient,
    mlp_init,
    mlp_jvp,
    mlp_layout,
)

__all__ = [
    "ACTIVATIONS",
    "CGResult",
    "DiagGaussian",
    "MlpSpec",
    "ParamLayout",
    "conjugate_gradient",
    "gaussian_kl",
    "gaussian_logprob",
    "gaussian_sample",
    "mlp_backward",
    "mlp_forward",
    "mlp_gradient",
    "mlp_init",
    "mlp_jvp",
    "mlp_layout",
]
