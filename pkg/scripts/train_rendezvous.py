#!/usr/bin/env python3
"""Desk-scale rendezvous training run.

10 agents, single-integrator unicycles, global observability, NN mean
embedding of the basic feature set; 4 workers x 512 steps per iteration with
8-agent subsampling.  This is the configuration the acceptance suite's
learning check uses.
"""

import argparse

from swarmrl.env import WorldConfig, rendezvous_task
from swarmrl.policy import EmbeddingSpec
from swarmrl.trpo import TrainerConfig, train


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gamma", type=float, default=0.95)
    ap.add_argument("--iters", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--episode-len", type=int, default=512)
    ap.add_argument("--agents", type=int, default=10)
    ap.add_argument("--out", default="runs/rendezvous_desk")
    args = ap.parse_args()

    world = WorldConfig(100.0, 100.0, "closed")
    task = rendezvous_task(
        n_agents=args.agents, dynamics="single", observability="global",
        feature_set="basic", episode_len=args.episode_len,
    )
    emb = EmbeddingSpec(kind="nn_mean")
    cfg = TrainerConfig(
        workers=4, steps_per_worker=512, subsample=8,
        iterations=args.iters, seed=args.seed, discount=args.gamma,
        checkpoint_every=20,
    )

    def log(rec, stats):
        print(
            f"{rec.iteration:3d} G={rec.avg_return:9.2f} kl={rec.mean_kl:.4f} "
            f"imp={rec.surrogate_improvement:.4f} vloss={rec.value_loss:8.2f} "
            f"acc={stats.accepted} {rec.wall_time_s:.1f}s",
            flush=True,
        )

    res = train(task, world, emb, cfg, out_dir=args.out, log=log)
    print("init G:", res.records[0].avg_return, "final G:", res.records[-1].avg_return)


if __name__ == "__main__":
    main()
