#!/usr/bin/env python3
"""Regenerate the shipped test fixtures.

The CSV/JSONL files are written by the swarmrl package itself, so they are
authentic artifact-schema instances; aggregated_q2.csv is the output of
`swarmrl aggregate` over the three synthetic trials.  Rerunning this script
must reproduce the committed fixtures byte for byte.
"""

import json
import subprocess
import sys
from pathlib import Path

import numpy as np

from swarmrl.env.trajectory import step_records, write_jsonl
from swarmrl.trpo.trainer import IterationRecord, write_curve

HERE = Path(__file__).parent
FIX = HERE / "fixtures"


def synthetic_curve(final_return, iters=10):
    rows = []
    for it in range(iters):
        frac = (it + 1) / iters
        rows.append(
            IterationRecord(
                iteration=it,
                samples=4096,
                avg_return=float(-10.0 + frac * (10.0 + final_return)),
                mean_kl=0.008,
                surrogate_improvement=0.002,
                value_loss=float(100.0 * (1.0 - frac) + 1.0),
                wall_time_s=1.5,
            )
        )
    return rows


def main():
    FIX.mkdir(exist_ok=True)
    for trial, final in enumerate([1.0, 2.0, 3.0]):
        d = FIX / f"trial_{trial}"
        d.mkdir(exist_ok=True)
        write_curve(d / "curve.csv", synthetic_curve(final))
    (FIX / "trial_0" / "config.snapshot").write_text(
        json.dumps(
            {"embedding": {"kind": "nn_mean"}, "task": {"feature_set": "basic"}},
            sort_keys=True, indent=2,
        )
        + "\n"
    )
    subprocess.run(
        [
            sys.executable, "-m", "swarmrl.experiments.cli", "aggregate",
            "--in", *[str(FIX / f"trial_{t}" / "curve.csv") for t in range(3)],
            "--q", "2", "--out", str(FIX / "aggregated_q2.csv"),
        ],
        check=True,
    )

    # smooth rendezvous-like distance profile
    ts = np.arange(201)
    dist = 40.0 * np.exp(-ts / 60.0) + 0.5
    with open(FIX / "distance_profile.csv", "w") as fh:
        fh.write("t,mean_distance\n")
        for t, v in zip(ts, dist):
            fh.write(f"{t},{v:.10g}\n")

    # monotone capture curve saturating at 0.9
    frac = np.minimum(0.9, np.maximum(0.0, (ts - 20) / 150.0))
    with open(FIX / "capture_curve.csv", "w") as fh:
        fh.write("t,capture_fraction\n")
        for t, v in zip(ts, frac):
            fh.write(f"{t},{v:.10g}\n")

    # two straight-line agents and one evader
    records = []
    caught = np.array([False])
    for t in range(30):
        states = np.array(
            [
                [10.0 + t, 20.0, 0.0, 1.0, 0.0],
                [10.0 + t, 80.0, 0.0, 1.0, 0.0],
            ]
        )
        evaders = np.array([[60.0, 50.0 + 0.5 * t]])
        records.extend(step_records(t, states, -0.4, t == 29, evaders, caught))
    write_jsonl(FIX / "episode_000.jsonl", records)
    print(f"fixtures written under {FIX}")


if __name__ == "__main__":
    main()
