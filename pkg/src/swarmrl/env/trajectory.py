"""Line-delimited trajectory export.

One JSON record per agent per step:
  {"t", "agent_id", "x", "y", "phi", "v", "omega", "reward", "done"}
and one per evader per step:
  {"t", "evader_id", "x", "y", "caught"}
"""

from __future__ import annotations

import json

import numpy as np


def step_records(t, states, reward, done, evaders=None, caught=None):
    recs = []
    for i, s in enumerate(np.atleast_2d(states)):
        recs.append(
            {
                "t": int(t),
                "agent_id": int(i),
                "x": float(s[0]),
                "y": float(s[1]),
                "phi": float(s[2]),
                "v": float(s[3]),
                "omega": float(s[4]),
                "reward": float(reward),
                "done": bool(done),
            }
        )
    if evaders is not None:
        for e, xy in enumerate(np.atleast_2d(evaders)):
            recs.append(
                {
                    "t": int(t),
                    "evader_id": int(e),
                    "x": float(xy[0]),
                    "y": float(xy[1]),
                    "caught": bool(caught[e]) if caught is not None else False,
                }
            )
    return recs


def write_jsonl(path, records):
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def read_jsonl(path):
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]
