"""Artifact files written under an experiment's output directory.

  config.snapshot          canonical JSON of the full configuration
  curve.csv                learning curve (see trpo.trainer.CURVE_HEADER)
  checkpoints/*.ckpt       policy/value containers
  eval/distance_profile.csv   t,mean_distance
  eval/capture_curve.csv      t,capture_fraction
  eval/returns.csv            episode,return
  eval/summary.json           scalar summary statistics
  aggregated.csv              iter,median_avg_return (aggregate subcommand)
  traj/episode_*.jsonl        trajectory records
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np


def write_profile_csv(path, header, values):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", header])
        for t, v in enumerate(values):
            writer.writerow([t, f"{v:.10g}"])


def read_profile_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if len(header) != 2 or header[0] != "t":
            raise ValueError(f"unexpected profile header {header}")
        return header[1], np.array([float(row[1]) for row in reader])


def write_returns_csv(path, returns):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["episode", "return"])
        for e, r in enumerate(returns):
            writer.writerow([e, f"{r:.10g}"])


def read_returns_csv(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return np.array([float(row["return"]) for row in reader])


def write_aggregated_csv(path, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["iter", "median_avg_return"])
        for row in rows:
            writer.writerow([row["iter"], f"{row['median_avg_return']:.10g}"])


def read_aggregated_csv(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return [
            {"iter": int(r["iter"]), "median_avg_return": float(r["median_avg_return"])}
            for r in reader
        ]


def write_summary(path, summary):
    Path(path).write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")


def write_eval_report(out_dir, report, results):
    out = Path(out_dir)
    (out / "eval").mkdir(parents=True, exist_ok=True)
    if report.kind == "distance":
        write_profile_csv(out / "eval" / "distance_profile.csv", "mean_distance", report.profile)
    else:
        write_profile_csv(out / "eval" / "capture_curve.csv", "capture_fraction", report.profile)
    write_returns_csv(out / "eval" / "returns.csv", report.episode_returns)
    write_summary(out / "eval" / "summary.json", report.summary())
    traj_dir = out / "traj"
    from ..env.trajectory import write_jsonl

    for e, res in enumerate(results):
        if res.records is not None:
            traj_dir.mkdir(parents=True, exist_ok=True)
            write_jsonl(traj_dir / f"episode_{e:03d}.jsonl", res.records)
