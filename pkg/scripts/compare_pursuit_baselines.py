#!/usr/bin/env python3
"""Capture-probability comparison of the scripted pursuer policies.

Runs the random, greedy-chase, surround and Voronoi-heuristic pursuers
against the Voronoi evader (2x pursuer speed, toroidal world) under shared
starting conditions and writes one capture curve per policy.
"""

import argparse
from pathlib import Path

from swarmrl.env import WorldConfig, pursuit_task
from swarmrl.experiments import BASELINE_POLICIES, evaluate_capture
from swarmrl.experiments.artifacts import write_profile_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--agents", type=int, default=10)
    ap.add_argument("--episodes", type=int, default=100)
    ap.add_argument("--horizon", type=int, default=1024)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--policies", nargs="+",
                    default=["random", "chase", "surround", "voronoi"])
    ap.add_argument("--out", default="runs/pursuit_baselines")
    args = ap.parse_args()

    world = WorldConfig(100.0, 100.0, "toroidal")
    task = pursuit_task(n_agents=args.agents, episode_len=args.horizon)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in args.policies:
        policy = BASELINE_POLICIES[name]()
        report, _ = evaluate_capture(
            policy, task, world, args.episodes, args.horizon, seed=args.seed
        )
        path = out / f"capture_{name}.csv"
        write_profile_csv(path, "capture_fraction", report.profile)
        print(f"{name:10s} capture@{args.horizon} = {report.profile[-1]:.2f}  -> {path}")


if __name__ == "__main__":
    main()
