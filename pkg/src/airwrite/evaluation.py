"""Tracking and recognition evaluation: point-precision curves, IoU
success curves under the one-pass and temporal-robustness protocols,
and report emission."""

import csv
import io
import json
import time
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatchError

DEFAULT_IOU_THRESHOLDS = np.round(np.arange(0.0, 1.0001, 0.05), 2)
DEFAULT_PRECISION_THRESHOLDS = tuple(range(1, 51))


def iou(a, b):
    """Intersection over union of two (x, y, w, h) boxes; 0 when disjoint."""
    ax, ay, aw, ah = a.as_tuple() if hasattr(a, "as_tuple") else a
    bx, by, bw, bh = b.as_tuple() if hasattr(b, "as_tuple") else b
    ix = max(0.0, min(ax + aw, bx + bw) - max(ax, bx))
    iy = max(0.0, min(ay + ah, by + bh) - max(ay, by))
    inter = ix * iy
    union = aw * ah + bw * bh - inter
    return float(inter / union) if union > 0 else 0.0


@dataclass
class PrecisionCurve:
    thresholds: list
    fraction_correct: list

    def at(self, threshold):
        for t, f in zip(self.thresholds, self.fraction_correct):
            if t == threshold:
                return f
        raise KeyError(f"threshold {threshold} not evaluated")

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["threshold_px", "fraction_correct"])
        for t, f in zip(self.thresholds, self.fraction_correct):
            w.writerow([t, f"{f:.6f}"])
        return buf.getvalue()


def precision_curve(pred, truth, thresholds=DEFAULT_PRECISION_THRESHOLDS):
    """Fraction of frames whose predicted point lies within each pixel
    threshold of ground truth; absent predictions count as failures."""
    if len(pred) != len(truth):
        raise LengthMismatchError(f"{len(pred)} predictions vs {len(truth)} truths")
    dists = []
    for p, t in zip(pred, truth):
        if p is None or t is None:
            dists.append(np.inf)
        else:
            dists.append(float(np.hypot(p[0] - t[0], p[1] - t[1])))
    dists = np.array(dists)
    fracs = [float((dists <= th).mean()) if len(dists) else 0.0 for th in thresholds]
    return PrecisionCurve(thresholds=list(thresholds), fraction_correct=fracs)


@dataclass
class SuccessCurve:
    iou_thresholds: list
    success_rates: list
    auc: float

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["iou_threshold", "success_rate"])
        for t, s in zip(self.iou_thresholds, self.success_rates):
            w.writerow([t, f"{s:.6f}"])
        return buf.getvalue()


def success_curve(ious, thresholds=DEFAULT_IOU_THRESHOLDS):
    """Per-frame success rate at each IoU threshold; AUC is the mean.

    Success is inclusive (IoU >= threshold) so a perfect tracker scores
    1.0 across the whole curve.
    """
    ious = np.asarray(list(ious), np.float64)
    rates = [float((ious >= th).mean()) if len(ious) else 0.0 for th in thresholds]
    return SuccessCurve(
        iou_thresholds=[float(t) for t in thresholds],
        success_rates=rates,
        auc=float(np.mean(rates)) if rates else 0.0,
    )


@dataclass
class Sequence:
    """Frames plus per-frame ground truth for tracker evaluation."""

    frames: list
    boxes: list  # (x, y, w, h) per frame
    tips: list = None
    name: str = ""

    def __len__(self):
        return len(self.frames)


def _run_once(tracker_factory, seq, start):
    tracker = tracker_factory(seq, start)
    ious = [1.0]  # initialization frame scores its own box
    n_updates = 0
    t0 = time.perf_counter()
    for i in range(start + 1, len(seq)):
        box = tracker(i, seq.frames[i])
        n_updates += 1
        ious.append(0.0 if box is None else iou(box, seq.boxes[i]))
    elapsed = time.perf_counter() - t0
    return ious, n_updates, elapsed


def run_ope_tre(tracker_factory, sequences, tre_starts=20,
                thresholds=DEFAULT_IOU_THRESHOLDS):
    """One-pass and temporal-robustness evaluation.

    `tracker_factory(seq, start)` returns a callable
    `(frame_index, frame) -> box or None`, already initialized on
    `seq.boxes[start]`. TRE starting frames are evenly spaced from 0;
    each run continues to the end of the sequence. Returns a dict with
    both SuccessCurves and the mean update rate in fps.
    """
    ope_ious = []
    tre_ious = []
    updates = 0
    elapsed = 0.0
    for seq in sequences:
        ious, n, dt = _run_once(tracker_factory, seq, 0)
        ope_ious.extend(ious)
        updates += n
        elapsed += dt
        n_frames = len(seq)
        starts = sorted({int(round(s)) for s in np.linspace(0, n_frames - 1, tre_starts, endpoint=False)})
        for s in starts:
            ious, n, dt = _run_once(tracker_factory, seq, s)
            tre_ious.extend(ious)
            updates += n
            elapsed += dt
    return {
        "ope": success_curve(ope_ious, thresholds),
        "tre": success_curve(tre_ious, thresholds),
        "fps": updates / elapsed if elapsed > 0 else float("inf"),
    }


def report_json(payload, path=None):
    """Serialize curves / matrices / scalars into one JSON document."""

    def default(obj):
        if isinstance(obj, (PrecisionCurve, SuccessCurve)):
            return obj.__dict__
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, (np.integer, np.floating)):
            return obj.item()
        raise TypeError(f"cannot serialize {type(obj)}")

    text = json.dumps(payload, default=default, indent=2)
    if path is not None:
        with open(path, "w") as f:
            f.write(text)
    return text
