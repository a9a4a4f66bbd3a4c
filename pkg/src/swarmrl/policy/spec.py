"""Embedding specification: which set encoder a policy uses and its knobs."""

from __future__ import annotations

from dataclasses import dataclass, field

EMBEDDING_KINDS = ("nn_mean", "histogram", "rbf", "softmax", "max", "concat", "moments")
MOMENT_ORDERS = ("mean", "std", "skew", "kurtosis")


@dataclass(frozen=True)
class EmbeddingSpec:
    kind: str = "nn_mean"
    embed_dim: int = 64            # output width of learned feature maps
    nn_layers: tuple = (64,)       # hidden layers of the feature network
    activation: str = "relu"
    bins: int = 8                  # histogram bins per feature
    rbf_grid: int = 8              # RBF centers per feature dimension
    alpha: float = 1.0             # softmax pooling temperature
    max_neighbors: int | None = None   # concat capacity; None: N-1 at build time
    moments: tuple = MOMENT_ORDERS
    normalize: bool = True         # mean over the set (False: raw sum) for rbf

    def validate(self):
        errs = []
        if self.kind not in EMBEDDING_KINDS:
            errs.append(f"embedding kind must be one of {EMBEDDING_KINDS}")
        if self.embed_dim < 1:
            errs.append("embed_dim must be >= 1")
        if any(h < 1 for h in self.nn_layers):
            errs.append("nn_layers must be positive")
        if self.bins < 1 or self.rbf_grid < 1:
            errs.append("bins and rbf_grid must be >= 1")
        if self.kind == "concat" and self.max_neighbors is not None and self.max_neighbors < 1:
            errs.append("max_neighbors must be >= 1")
        if self.kind == "moments":
            bad = set(self.moments) - set(MOMENT_ORDERS)
            if bad or not self.moments:
                errs.append(f"moments must be a non-empty subset of {MOMENT_ORDERS}")
        return errs

    def to_dict(self):
        return {
            "kind": self.kind,
            "embed_dim": self.embed_dim,
            "nn_layers": list(self.nn_layers),
            "activation": self.activation,
            "bins": self.bins,
            "rbf_grid": self.rbf_grid,
            "alpha": self.alpha,
            "max_neighbors": self.max_neighbors,
            "moments": list(self.moments),
            "normalize": self.normalize,
        }

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["nn_layers"] = tuple(d.get("nn_layers", (64,)))
        d["moments"] = tuple(d.get("moments", MOMENT_ORDERS))
        return cls(**d)
