from ..env.observe import FeatureSpec, ObservationSet
from .checkpoint import Checkpoint, load_checkpoint, save_checkpoint
from .encoders import (
    build_encoder,
    concat_features,
    embed_mean,
    feature_map_histogram,
    feature_map_rbf,
    moment_features,
    pool_max,
    pool_softmax,
    rbf_centers,
)
from .network import (
    PolicyNetwork,
    batch_from_sets,
    build_policy,
    neighbor_range,
    sample_action,
)
from .spec import EMBEDDING_KINDS, EmbeddingSpec

__all__ = [
    "Checkpoint",
    "EMBEDDING_KINDS",
    "EmbeddingSpec",
    "FeatureSpec",
    "ObservationSet",
    "PolicyNetwork",
    "batch_from_sets",
    "build_encoder",
    "build_policy",
    "concat_features",
    "embed_mean",
    "feature_map_histogram",
    "feature_map_rbf",
    "load_checkpoint",
    "moment_features",
    "neighbor_range",
    "pool_max",
    "pool_softmax",
    "rbf_centers",
    "sample_action",
    "save_checkpoint",
]
