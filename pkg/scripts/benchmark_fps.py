#!/usr/bin/env python3
"""Frame-rate benchmark: full pipeline over a synthetic 640x480 sequence.

Prints per-stage means and writes an fps report JSON.
"""

import argparse
import json

from airwrite.evaluation import report_json
from airwrite.synth import SynthHandSpec, synth_sequence
from airwrite.tracking import AnnotationProvider, PipelineSession


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--frames", type=int, default=60)
    parser.add_argument("--seed", type=int, default=300)
    parser.add_argument("--out", default="reports/throughput.json")
    args = parser.parse_args()

    spec = SynthHandSpec.random(seed=args.seed, fingers=1)
    seq = synth_sequence(spec, motion=[(4, 0)] * (args.frames - 1), frames=args.frames,
                         start=(60, 160))
    entries = [
        {"frame": i, "x": b[0], "y": b[1], "w": b[2], "h": b[3]}
        for i, b in enumerate(seq.boxes)
    ]

    # warm pass compiles jitted kernels
    warm = PipelineSession(AnnotationProvider(entries))
    for f in seq.frames[:3]:
        warm.process(f)

    session = PipelineSession(AnnotationProvider(entries))
    results = [session.process(f) for f in seq.frames]
    proc_ms = sum(r.timing["total_ms"] for r in results)
    fps = len(results) / (proc_ms / 1000.0)
    stages = {
        k: sum(r.timing.get(k, 0.0) for r in results) / len(results)
        for k in results[0].timing
    }
    import pathlib

    pathlib.Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    report_json({"benchmark": f"{args.frames}-frame 640x480", "fps": fps,
                 "per_stage_ms": stages}, args.out)
    print(json.dumps({"fps": round(fps, 1), "per_stage_ms": {k: round(v, 2) for k, v in stages.items()}}, indent=2))


if __name__ == "__main__":
    main()
