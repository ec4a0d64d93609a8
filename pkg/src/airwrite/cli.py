"""Batch command-line entry points over the whole pipeline.

Every command reads shared settings from `--config` (key=value file) and
repeatable `--set dotted.key=value` overrides; outputs are JSON on
stdout (single documents) or JSON-lines files (frame streams). Any
validation failure prints one `error: ...` line on stderr and exits 1.
"""

import argparse
import json
import sys
from pathlib import Path

from . import pnm
from .config import load_config
from .errors import AirwriteError, ConfigError
from .evaluation import (
    Sequence,
    precision_curve,
    report_json,
    run_ope_tre,
)
from .fingertip import detect_fingertip, mask_signature
from .handpose import analyze_hand
from .recognition import (
    classify,
    confusion_matrix,
    accuracy,
    default_templates,
    load_templates,
)
from .synth import SynthHandSpec, load_truth, synth_hand, synth_sequence
from .tracking import (
    AnnotationProvider,
    HandRegion,
    KcfTracker,
    SkinBlobProvider,
    load_frames,
    run_pipeline,
)
from .trajectory import Trajectory, rasterize, smooth


def _common(parser):
    parser.add_argument("--config", help="key=value configuration file")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one configuration key (repeatable)",
    )


def _load_cfg(args):
    overrides = {}
    for item in args.overrides:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, _, value = item.partition("=")
        overrides[key.strip()] = value.strip()
    return load_config(args.config, overrides)


def _templates_for(args):
    if getattr(args, "templates", None):
        return load_templates(args.templates)
    return default_templates()


def cmd_synth_hand(args):
    cfg = _load_cfg(args)
    spec = SynthHandSpec.random(seed=args.seed, fingers=args.fingers)
    mask, truth = synth_hand(spec)
    pnm.write_mask(args.out, mask)
    if args.truth:
        with open(args.truth, "w") as f:
            json.dump(truth, f)
    print(json.dumps({"out": args.out, "finger_count": truth["finger_count"]}))
    return 0


def cmd_synth_seq(args):
    with open(args.spec) as f:
        desc = json.load(f)
    spec = SynthHandSpec.random(
        seed=int(desc.get("seed", 0)), fingers=desc.get("fingers", 1)
    )
    motion = desc.get("motion", [3, 0])
    if motion and isinstance(motion[0], (int, float)):
        motion = [tuple(motion)] * (int(desc.get("frames", 60)) - 1)
    else:
        motion = [tuple(m) for m in motion]
    seq = synth_sequence(
        spec,
        motion=motion,
        frames=int(desc.get("frames", 60)),
        frame_size=tuple(desc.get("frame_size", (640, 480))),
        start=tuple(desc["start"]) if "start" in desc else None,
    )
    out = seq.write(args.out)
    anno = [
        {"frame": i, "x": b[0], "y": b[1], "w": b[2], "h": b[3]}
        for i, b in enumerate(seq.boxes)
    ]
    with open(Path(args.out) / "boxes.json", "w") as f:
        json.dump(anno, f)
    print(json.dumps({"out": str(out), "frames": len(seq)}))
    return 0


def cmd_pose(args):
    cfg = _load_cfg(args)
    mask = pnm.read_mask(args.mask)
    res = analyze_hand(mask, cfg["handpose.magnification"])
    print(
        json.dumps(
            {
                "fingers": None if res.count is None else res.count.fingers,
                "verdict": res.verdict,
            }
        )
    )
    return 0


def cmd_fingertip(args):
    cfg = _load_cfg(args)
    if args.gamma is not None:
        cfg.set("fingertip.gamma", args.gamma)
    if args.samples is not None:
        cfg.set("fingertip.samples", args.samples)
    mask = pnm.read_mask(args.mask)
    sig_cfg = cfg.signature_config()
    if args.dump_signature:
        series = mask_signature(mask, cfg=sig_cfg)
        with open(args.dump_signature, "w") as f:
            f.write(series.to_csv())
    det = detect_fingertip(mask, cfg=sig_cfg)
    print(
        json.dumps(
            {"x": det.position[0], "y": det.position[1], "psi": det.psi_max}
        )
    )
    return 0


def cmd_track(args):
    cfg = _load_cfg(args)
    if args.boxes:
        provider = AnnotationProvider.from_file(args.boxes)
    elif args.fallback_detector:
        provider = SkinBlobProvider(cfg.skin_model())
    else:
        raise ConfigError("track needs --boxes or --fallback-detector")
    count = 0
    with open(args.out, "w") as f:
        for result in run_pipeline(args.frames, provider, cfg.pipeline_config()):
            f.write(json.dumps(result.to_dict()) + "\n")
            count += 1
    print(json.dumps({"out": args.out, "frames": count}))
    return 0


def cmd_write(args):
    cfg = _load_cfg(args)
    traj = Trajectory.load(args.traj)
    smoothed = smooth(traj, cfg.smoothing_config())
    raster = rasterize(smoothed)
    res = classify(raster, _templates_for(args), cfg.recognizer_config())
    print(
        json.dumps(
            {
                "rejected": res.rejected,
                "ranked": [
                    {"label": label, "score": score} for label, score in res.ranked[:5]
                ],
            }
        )
    )
    return 0


def cmd_eval_tracking(args):
    cfg = _load_cfg(args)
    pred = []
    with open(args.pred) as f:
        for line in f:
            rec = json.loads(line)
            tip = rec.get("fingertip")
            pred.append(None if tip is None else (tip["x"], tip["y"]))
    _, tips = load_truth(args.truth)
    curve = precision_curve(pred, tips)
    if args.dump_csv:
        with open(args.dump_csv, "w") as f:
            f.write(curve.to_csv())
    print(
        report_json(
            {
                "precision_at_threshold": curve.at(args.threshold),
                "threshold_px": args.threshold,
                "curve": curve,
            }
        )
    )
    return 0


def _kcf_factory(cfg):
    def factory(seq, start):
        box = HandRegion(*seq.boxes[start])
        tracker = KcfTracker(seq.frames[start], box, cfg.track_config())

        def step(i, frame):
            try:
                return tracker.update(frame)
            except AirwriteError:
                return tracker.bbox

        return step

    return factory


def cmd_eval_ope_tre(args):
    cfg = _load_cfg(args)
    sequences = []
    with open(args.sequences) as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            seq_dir = Path(line)
            frames = list(load_frames(seq_dir))
            boxes, tips = load_truth(seq_dir / "truth.json")
            sequences.append(
                Sequence(frames=frames, boxes=boxes, tips=tips, name=seq_dir.name)
            )
    out = run_ope_tre(_kcf_factory(cfg), sequences, tre_starts=args.tre_starts)
    if args.dump_csv:
        base = Path(args.dump_csv)
        for proto in ("ope", "tre"):
            with open(base.with_suffix(f".{proto}.csv"), "w") as f:
                f.write(out[proto].to_csv())
    print(report_json({"ope": out["ope"], "tre": out["tre"], "fps": out["fps"]}))
    return 0


def cmd_eval_chars(args):
    cfg = _load_cfg(args)
    templates = _templates_for(args)
    results = []
    for path in sorted(Path(args.dataset).glob("*.json")):
        traj = Trajectory.load(path)
        if traj.label is None:
            continue
        smoothed = smooth(traj, cfg.smoothing_config())
        res = classify(rasterize(smoothed), templates, cfg.recognizer_config())
        results.append((traj.label, res))
    counts = confusion_matrix(results)
    print(
        report_json(
            {
                "samples": len(results),
                "accuracy": accuracy(counts),
                "confusion_matrix": counts,
            }
        )
    )
    return 0


def cmd_serve(args):
    cfg = _load_cfg(args)
    from .service import serve

    port = args.port if args.port is not None else cfg["service.port"]
    serve(port=port, config=cfg)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="airwrite", description="Air-writing recognition pipeline"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth-hand", help="render an oracle hand mask")
    p.add_argument("--fingers", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--truth")
    _common(p)
    p.set_defaults(func=cmd_synth_hand)

    p = sub.add_parser("synth-seq", help="render a ground-truthed frame sequence")
    p.add_argument("--spec", required=True, help="JSON sequence description")
    p.add_argument("--out", required=True)
    _common(p)
    p.set_defaults(func=cmd_synth_seq)

    p = sub.add_parser("pose", help="finger count and writing verdict for a mask")
    p.add_argument("--mask", required=True)
    _common(p)
    p.set_defaults(func=cmd_pose)

    p = sub.add_parser("fingertip", help="detect the fingertip in a mask")
    p.add_argument("--mask", required=True)
    p.add_argument("--gamma", type=float)
    p.add_argument("--samples", type=int)
    p.add_argument("--dump-signature", metavar="CSV")
    _common(p)
    p.set_defaults(func=cmd_fingertip)

    p = sub.add_parser("track", help="run the frame pipeline over a directory")
    p.add_argument("--frames", required=True)
    p.add_argument("--boxes", help="annotation JSON with ground-truth boxes")
    p.add_argument("--fallback-detector", action="store_true")
    p.add_argument("--out", required=True, help="JSON-lines output path")
    _common(p)
    p.set_defaults(func=cmd_track)

    p = sub.add_parser("write", help="smooth, rasterize, and classify a trajectory")
    p.add_argument("--traj", required=True)
    p.add_argument("--templates")
    p.add_argument("--recognizer", default="template-nn", choices=["template-nn"])
    _common(p)
    p.set_defaults(func=cmd_write)

    p = sub.add_parser("eval-tracking", help="precision of a pipeline run vs truth")
    p.add_argument("--pred", required=True, help="results.jsonl from track")
    p.add_argument("--truth", required=True, help="truth.json from synth-seq")
    p.add_argument("--threshold", type=int, default=15)
    p.add_argument("--dump-csv", metavar="CSV", help="write the precision curve as CSV")
    _common(p)
    p.set_defaults(func=cmd_eval_tracking)

    p = sub.add_parser("eval-ope-tre", help="tracker success curves (OPE/TRE)")
    p.add_argument("--sequences", required=True, help="text file of sequence dirs")
    p.add_argument("--tre-starts", type=int, default=20)
    p.add_argument("--dump-csv", metavar="BASE", help="write success curves as BASE.ope.csv / BASE.tre.csv")
    _common(p)
    p.set_defaults(func=cmd_eval_ope_tre)

    p = sub.add_parser("eval-chars", help="confusion matrix over a trajectory dataset")
    p.add_argument("--dataset", required=True, help="directory of trajectory JSON files")
    p.add_argument("--templates")
    p.add_argument("--recognizer", default="template-nn", choices=["template-nn"])
    _common(p)
    p.set_defaults(func=cmd_eval_chars)

    p = sub.add_parser("serve", help="start the stroke-session HTTP service")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--host", default="127.0.0.1")
    _common(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AirwriteError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
