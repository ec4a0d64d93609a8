#!/usr/bin/env python3
"""Generate a labeled trajectory dataset ((x, y, t) JSON files) from the
glyph paths, with optional noise, for eval-chars experiments."""

import argparse
from pathlib import Path

import numpy as np

from airwrite.glyphs import LABELS, glyph_trajectory
from airwrite.trajectory import Trajectory


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True)
    parser.add_argument("--samples", type=int, default=3, help="samples per class")
    parser.add_argument("--noise", type=float, default=1.0, help="point jitter, px")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    count = 0
    for label in LABELS:
        for k in range(args.samples):
            traj = glyph_trajectory(label, n=32, variant=k % 3)
            pts = [
                (x + rng.normal(0, args.noise), y + rng.normal(0, args.noise), t)
                for x, y, t in traj.points
            ]
            noisy = Trajectory(points=pts, state="terminated", label=label)
            noisy.save(out / f"{label}_{k}.json")
            count += 1
    print(f"wrote {count} trajectories to {out}")


if __name__ == "__main__":
    main()
