"""Figure builders: pure artifact-file to image-file transformations.

Rendering is pinned (Agg backend, fixed style, fixed dpi, no timestamps), so
identical inputs produce byte-identical images.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .aggregate import top_q_median  # noqa: E402
from .readers import (  # noqa: E402
    curve_label,
    read_capture_curve,
    read_curve,
    read_distance_profile,
    read_trajectory,
)

STYLE = {
    "figure.figsize": (7.0, 4.5),
    "figure.dpi": 120,
    "savefig.dpi": 120,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 10,
}

AGENT_COLOR = "tab:blue"
EVADER_COLOR = "tab:red"


def _new_figure():
    plt.rcParams.update(STYLE)
    return plt.subplots()


def _finish(fig, out_path):
    fig.tight_layout()
    fig.savefig(out_path, format="png")
    plt.close(fig)
    return out_path


def plot_learning_curves(curve_paths, out_path, top_q=None, log_y=False):
    """One line per curve file, or a single top-q median when requested."""
    fig, ax = _new_figure()
    if top_q is not None:
        rows = top_q_median([read_curve(p) for p in curve_paths], top_q)
        ax.plot([r["iter"] for r in rows], [r["median_avg_return"] for r in rows],
                label=f"median of top {top_q}")
    else:
        for path in curve_paths:
            rows = read_curve(path)
            ax.plot([r["iter"] for r in rows], [r["avg_return"] for r in rows],
                    label=curve_label(path))
    if log_y:
        # returns are negative costs; a log scale needs their magnitude
        ax.set_yscale("symlog")
    ax.set_xlabel("iteration")
    ax.set_ylabel("average return")
    ax.legend()
    return _finish(fig, out_path)


def plot_distance_profile(profile_paths, out_path, log_y=False):
    fig, ax = _new_figure()
    for path in profile_paths:
        ts, vals = read_distance_profile(path)
        ax.plot(ts, vals, label=curve_label(path))
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel("time step")
    ax.set_ylabel("mean inter-agent distance")
    ax.legend()
    return _finish(fig, out_path)


def plot_capture_curve(curve_paths, out_path):
    fig, ax = _new_figure()
    for path in curve_paths:
        ts, vals = read_capture_curve(path)
        ax.plot(ts, vals, label=curve_label(path))
    ax.set_xlabel("time step")
    ax.set_ylabel("fraction of episodes with capture")
    ax.set_ylim(-0.02, 1.02)
    ax.legend()
    return _finish(fig, out_path)


def plot_trajectory(traj_path, out_path, bounds=(100.0, 100.0)):
    """Agent paths in blue, evader paths highlighted in red, world box drawn."""
    agents, evaders = read_trajectory(traj_path)
    fig, ax = _new_figure()
    fig.set_size_inches(5.5, 5.5)
    for recs in agents.values():
        ax.plot([r["x"] for r in recs], [r["y"] for r in recs],
                color=AGENT_COLOR, linewidth=0.8, alpha=0.8)
        ax.plot(recs[-1]["x"], recs[-1]["y"], "o", color=AGENT_COLOR, markersize=3)
    for recs in evaders.values():
        ax.plot([r["x"] for r in recs], [r["y"] for r in recs],
                color=EVADER_COLOR, linewidth=1.6)
        ax.plot(recs[-1]["x"], recs[-1]["y"], "s", color=EVADER_COLOR, markersize=5)
    ax.set_xlim(0, bounds[0])
    ax.set_ylim(0, bounds[1])
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    return _finish(fig, out_path)
