"""Top-q median aggregation over trial learning curves.

Mirrors the aggregation contract of the swarmrl CLI exactly: pick the q
trials with the highest final average return, report their per-iteration
median.
"""

from __future__ import annotations

import statistics


def top_q_median(curves, q):
    if len(curves) < q:
        raise ValueError(f"need at least q={q} curves, got {len(curves)}")
    if len({len(c) for c in curves}) != 1:
        raise ValueError("curves have different lengths")
    ranked = sorted(curves, key=lambda c: c[-1]["avg_return"], reverse=True)[:q]
    out = []
    for rows in zip(*ranked):
        out.append(
            {
                "iter": rows[0]["iter"],
                "median_avg_return": statistics.median(r["avg_return"] for r in rows),
            }
        )
    return out
