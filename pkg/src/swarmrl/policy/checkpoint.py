"""Versioned binary checkpoint container.

Byte layout (documented contract, all integers little-endian):

  bytes 0..7    magic b"SWRMCKPT"
  bytes 8..11   format version, uint32 (currently 1)
  bytes 12..15  header length H, uint32
  bytes 16..16+H-1   header, UTF-8 JSON
  then          policy parameters, float64 little-endian
  then          value parameters, float64 little-endian

The header holds the task/world configuration, the embedding and feature
specs, the trunk shape, both parameter layout tables and both vector lengths,
so a checkpoint can be rebuilt without any other context.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

import numpy as np

from ..env.observe import FeatureSpec
from ..env.tasks import TaskConfig
from ..env.world import WorldConfig
from .network import PolicyNetwork, build_policy
from .spec import EmbeddingSpec

MAGIC = b"SWRMCKPT"
VERSION = 1


def _task_to_dict(task: TaskConfig):
    return dataclasses.asdict(task)


def _world_to_dict(world: WorldConfig):
    return dataclasses.asdict(world)


@dataclass
class Checkpoint:
    task: TaskConfig
    world: WorldConfig
    embedding: EmbeddingSpec
    feature_spec: FeatureSpec
    hidden: tuple
    policy_params: np.ndarray
    value_params: np.ndarray

    def build_networks(self):
        policy = build_policy(self.task, self.world, self.embedding, hidden=self.hidden)
        value = build_policy(
            self.task, self.world, self.embedding, hidden=self.hidden, value=True
        )
        if policy.n_params != len(self.policy_params):
            raise ValueError("checkpoint does not match the rebuilt policy layout")
        if value.n_params != len(self.value_params):
            raise ValueError("checkpoint does not match the rebuilt value layout")
        return policy, value


def save_checkpoint(path, task, world, embedding, hidden, policy_params, value_params):
    policy = build_policy(task, world, embedding, hidden=hidden)
    value = build_policy(task, world, embedding, hidden=hidden, value=True)
    header = {
        "task": _task_to_dict(task),
        "world": _world_to_dict(world),
        "embedding": embedding.to_dict(),
        "feature_spec": FeatureSpec.from_task(task, world).to_dict(),
        "hidden": list(hidden),
        "policy_layout": policy.layout.to_table(),
        "value_layout": value.layout.to_table(),
        "policy_len": int(policy.n_params),
        "value_len": int(value.n_params),
    }
    blob = json.dumps(header, sort_keys=True).encode("utf-8")
    policy_params = np.ascontiguousarray(policy_params, dtype="<f8")
    value_params = np.ascontiguousarray(value_params, dtype="<f8")
    if policy_params.size != policy.n_params or value_params.size != value.n_params:
        raise ValueError("parameter vector lengths do not match the network layouts")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(np.uint32(VERSION).tobytes())
        fh.write(np.uint32(len(blob)).tobytes())
        fh.write(blob)
        fh.write(policy_params.tobytes())
        fh.write(value_params.tobytes())


def load_checkpoint(path) -> Checkpoint:
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw[:8] != MAGIC:
        raise ValueError("not a checkpoint file (bad magic)")
    version = int(np.frombuffer(raw[8:12], dtype="<u4")[0])
    if version != VERSION:
        raise ValueError(f"unsupported checkpoint version {version}")
    hlen = int(np.frombuffer(raw[12:16], dtype="<u4")[0])
    header = json.loads(raw[16 : 16 + hlen].decode("utf-8"))
    off = 16 + hlen
    p_len = header["policy_len"]
    v_len = header["value_len"]
    expected = off + 8 * (p_len + v_len)
    if len(raw) != expected:
        raise ValueError(f"checkpoint truncated: {len(raw)} bytes, expected {expected}")
    policy_params = np.frombuffer(raw, dtype="<f8", count=p_len, offset=off).copy()
    value_params = np.frombuffer(raw, dtype="<f8", count=v_len, offset=off + 8 * p_len).copy()
    return Checkpoint(
        task=TaskConfig(**header["task"]),
        world=WorldConfig(**header["world"]),
        embedding=EmbeddingSpec.from_dict(header["embedding"]),
        feature_spec=FeatureSpec.from_dict(header["feature_spec"]),
        hidden=tuple(header["hidden"]),
        policy_params=policy_params,
        value_params=value_params,
    )
