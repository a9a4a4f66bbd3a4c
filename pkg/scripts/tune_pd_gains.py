#!/usr/bin/env python3
"""Grid search over the consensus PD gains.

Scores each gain triple by the mean pairwise distance at t=1000 of the
20-agent double-integrator rendezvous task (averaged over seeds).  The best
triple found by this script is baked into PDGains' defaults.
"""

import argparse
import itertools

import numpy as np

from swarmrl.baselines import PDGains, consensus_pd_policy
from swarmrl.env import SwarmEnv, WorldConfig, pairwise_distances, rendezvous_task


def mean_distance(env):
    d = pairwise_distances(env.states[:, :2], env.world)
    iu = np.triu_indices(len(d), k=1)
    return float(d[iu].mean())


def final_distance(gains, task, world, seed, horizon):
    env = SwarmEnv(task, world, seed=seed)
    env.reset()
    for _ in range(horizon):
        env.step(consensus_pd_policy(env.states, env.adj, world, task, gains))
    return mean_distance(env)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--agents", type=int, default=20)
    ap.add_argument("--horizon", type=int, default=1000)
    ap.add_argument("--seeds", type=int, default=4)
    ap.add_argument("--k1", type=float, nargs="+", default=[1.0, 2.0, 4.0])
    ap.add_argument("--k2", type=float, nargs="+", default=[1.0, 1.5, 2.0, 2.5, 4.0])
    ap.add_argument("--d2", type=float, nargs="+", default=[1.0, 1.5, 2.0, 3.0])
    args = ap.parse_args()

    world = WorldConfig(100.0, 100.0, "closed")
    task = rendezvous_task(n_agents=args.agents, episode_len=args.horizon + 1)
    results = []
    for k1, k2, d2 in itertools.product(args.k1, args.k2, args.d2):
        gains = PDGains(k1, k2, d2)
        finals = [
            final_distance(gains, task, world, seed, args.horizon)
            for seed in range(args.seeds)
        ]
        results.append((float(np.mean(finals)), float(np.max(finals)), k1, k2, d2))
        print(f"K1={k1:4.1f} K2={k2:4.1f} D2={d2:4.1f}   "
              f"mean={results[-1][0]:.3f} worst={results[-1][1]:.3f}")
    best = min(results)
    print(f"\nbest: K1={best[2]} K2={best[3]} D2={best[4]} (mean final {best[0]:.3f})")


if __name__ == "__main__":
    main()
