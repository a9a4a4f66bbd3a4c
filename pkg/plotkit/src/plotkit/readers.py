"""Readers for the experiment artifact schemas.

Consumed file formats (produced by the swarmrl CLI):

  curve.csv                 iter,samples,avg_return,mean_kl,surrogate_improvement,value_loss,wall_time_s
  distance_profile.csv      t,mean_distance
  capture_curve.csv         t,capture_fraction
  aggregated.csv            iter,median_avg_return
  episode_*.jsonl           per-step agent records {t, agent_id, x, y, phi, v, omega,
                            reward, done} and evader records {t, evader_id, x, y, caught}
  config.snapshot           canonical JSON of the producing experiment
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

CURVE_COLUMNS = [
    "iter",
    "samples",
    "avg_return",
    "mean_kl",
    "surrogate_improvement",
    "value_loss",
    "wall_time_s",
]


class SchemaError(ValueError):
    """An artifact file does not match its documented schema."""


def read_curve(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CURVE_COLUMNS:
            raise SchemaError(
                f"{path}: expected columns {CURVE_COLUMNS}, found {reader.fieldnames}"
            )
        rows = []
        for row in reader:
            rows.append(
                {
                    "iter": int(row["iter"]),
                    "samples": int(row["samples"]),
                    "avg_return": float(row["avg_return"]),
                    "mean_kl": float(row["mean_kl"]),
                    "surrogate_improvement": float(row["surrogate_improvement"]),
                    "value_loss": float(row["value_loss"]),
                    "wall_time_s": float(row["wall_time_s"]),
                }
            )
    if not rows:
        raise SchemaError(f"{path}: empty learning curve")
    return rows


def _read_two_column(path, value_column):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ["t", value_column]:
            raise SchemaError(
                f"{path}: expected columns ['t', {value_column!r}], found {reader.fieldnames}"
            )
        ts, vals = [], []
        for row in reader:
            ts.append(int(row["t"]))
            vals.append(float(row[value_column]))
    if not ts:
        raise SchemaError(f"{path}: empty profile")
    return ts, vals


def read_distance_profile(path):
    return _read_two_column(path, "mean_distance")


def read_capture_curve(path):
    return _read_two_column(path, "capture_fraction")


def read_aggregated(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ["iter", "median_avg_return"]:
            raise SchemaError(f"{path}: unexpected columns {reader.fieldnames}")
        return [
            {"iter": int(r["iter"]), "median_avg_return": float(r["median_avg_return"])}
            for r in reader
        ]


def read_trajectory(path):
    agents, evaders = {}, {}
    with open(path) as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            rec = json.loads(line)
            if "agent_id" in rec:
                missing = {"t", "x", "y", "phi", "v", "omega", "reward", "done"} - set(rec)
                if missing:
                    raise SchemaError(f"{path}:{line_no}: agent record missing {sorted(missing)}")
                agents.setdefault(rec["agent_id"], []).append(rec)
            elif "evader_id" in rec:
                missing = {"t", "x", "y", "caught"} - set(rec)
                if missing:
                    raise SchemaError(f"{path}:{line_no}: evader record missing {sorted(missing)}")
                evaders.setdefault(rec["evader_id"], []).append(rec)
            else:
                raise SchemaError(f"{path}:{line_no}: record is neither agent nor evader")
    if not agents:
        raise SchemaError(f"{path}: no agent records")
    for recs in list(agents.values()) + list(evaders.values()):
        recs.sort(key=lambda r: r["t"])
    return agents, evaders


def curve_label(path):
    """Legend label for a curve file: embedding/feature info from the run's
    config snapshot when present, the parent directory name otherwise."""
    snap = Path(path).parent / "config.snapshot"
    if snap.exists():
        try:
            cfg = json.loads(snap.read_text())
            kind = cfg.get("embedding", {}).get("kind", "?")
            feats = cfg.get("task", {}).get("feature_set", "?")
            return f"{kind} ({feats})"
        except (json.JSONDecodeError, AttributeError):
            pass
    parent = Path(path).resolve().parent.name
    return parent or Path(path).stem
