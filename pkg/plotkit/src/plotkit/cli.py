"""plotkit command line: render figures from experiment artifacts."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import (
    plot_capture_curve,
    plot_distance_profile,
    plot_learning_curves,
    plot_trajectory,
)
from .readers import SchemaError


def build_parser():
    ap = argparse.ArgumentParser(
        prog="plotkit", description="figure generation from swarmrl artifacts"
    )
    sub = ap.add_subparsers(dest="kind", required=True)

    c = sub.add_parser("curves", help="learning curves (optionally top-q median)")
    c.add_argument("--in", dest="inputs", type=Path, nargs="+", required=True)
    c.add_argument("--out", type=Path, required=True)
    c.add_argument("--top-q", type=int)
    c.add_argument("--log-y", action="store_true")

    d = sub.add_parser("distance", help="mean-distance profiles")
    d.add_argument("--in", dest="inputs", type=Path, nargs="+", required=True)
    d.add_argument("--out", type=Path, required=True)
    d.add_argument("--log-y", action="store_true")

    p = sub.add_parser("capture", help="capture-probability curves")
    p.add_argument("--in", dest="inputs", type=Path, nargs="+", required=True)
    p.add_argument("--out", type=Path, required=True)

    t = sub.add_parser("traj", help="trajectory snapshot")
    t.add_argument("--in", dest="inputs", type=Path, nargs="+", required=True)
    t.add_argument("--out", type=Path, required=True)
    t.add_argument("--bounds", type=float, nargs=2, default=[100.0, 100.0],
                   metavar=("X", "Y"))
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.kind == "curves":
            plot_learning_curves(args.inputs, args.out, top_q=args.top_q, log_y=args.log_y)
        elif args.kind == "distance":
            plot_distance_profile(args.inputs, args.out, log_y=args.log_y)
        elif args.kind == "capture":
            plot_capture_curve(args.inputs, args.out)
        else:
            if len(args.inputs) != 1:
                raise SchemaError("traj takes exactly one input file")
            plot_trajectory(args.inputs[0], args.out, bounds=tuple(args.bounds))
    except (SchemaError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
