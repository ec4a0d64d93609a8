"""Writing-pose detection from a binary hand mask.

Dual-estimate centroid (distance-transform peak + region moments),
inscribed-circle radius, ring-crossing finger counting, and the
writing / non-writing verdict that gates the rest of the pipeline.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    CenterOnBackgroundError,
    EmptyMaskError,
    OddCrossingsError,
    RingDegenerateError,
)
from .imgproc import distance_transform, moments_centroid

WRITING = "writing"
NON_WRITING = "non_writing"
INDETERMINATE = "indeterminate"

DEFAULT_MAGNIFICATION = 1.5


@dataclass
class CentroidEstimate:
    dt_peak: tuple  # (x, y) ints, distance-transform argmax
    moment: tuple  # (x, y) reals, region moments
    final: tuple  # midpoint of the two


def hand_centroid(mask, field=None):
    """Two centroid estimates and their mean.

    The distance-transform peak takes the smallest row-major index on
    ties. `field` lets callers reuse an already-computed transform.
    """
    mask = np.asarray(mask, bool)
    if not mask.any():
        raise EmptyMaskError("cannot locate the centroid of an empty mask")
    if field is None:
        field = distance_transform(mask)
    flat = int(np.argmax(field))
    y1, x1 = divmod(flat, mask.shape[1])
    x2, y2 = moments_centroid(mask)
    final = ((x1 + x2) / 2.0, (y1 + y2) / 2.0)
    return CentroidEstimate(dt_peak=(x1, y1), moment=(x2, y2), final=final)


def inner_circle_radius(mask, center, field=None):
    """Radius of the largest circle at `center` containing no background
    pixel: the distance-transform value at the (rounded) center."""
    mask = np.asarray(mask, bool)
    h, w = mask.shape
    cx = int(np.floor(center[0] + 0.5))
    cy = int(np.floor(center[1] + 0.5))
    if not (0 <= cx < w and 0 <= cy < h) or not mask[cy, cx]:
        raise CenterOnBackgroundError(f"center ({cx}, {cy}) is not on the hand")
    if field is None:
        field = distance_transform(mask)
    return float(field[cy, cx])


@dataclass
class FingerCount:
    inner_radius: float
    ring_radius: float
    magnification: float
    crossings: int
    fingers: int


def _collapse_short_runs(values, min_run):
    """Merge cyclic runs shorter than `min_run` into their neighbors.

    Where the ring grazes a rasterized boundary tangentially, one physical
    crossing smears into a few alternating samples; collapsing those runs
    makes each crossing count once.
    """
    runs = []  # (value, length)
    cur, length = values[0], 1
    for v in values[1:]:
        if v == cur:
            length += 1
        else:
            runs.append([cur, length])
            cur, length = v, 1
    runs.append([cur, length])
    if len(runs) > 1 and runs[0][0] == runs[-1][0]:  # cyclic wrap
        runs[0][1] += runs.pop()[1]
    while len(runs) > 1:
        shortest = min(range(len(runs)), key=lambda i: runs[i][1])
        if runs[shortest][1] >= min_run:
            break
        nxt = (shortest + 1) % len(runs)
        prv = (shortest - 1) % len(runs)
        if prv == nxt:  # two runs left: keep the longer value everywhere
            runs = [[runs[nxt][0], runs[nxt][1] + runs[shortest][1]]]
            break
        runs[prv][1] += runs[shortest][1] + runs[nxt][1]
        drop = sorted((shortest, nxt), reverse=True)
        for i in drop:
            runs.pop(i)
    return runs


def count_raised_fingers(mask, center, r, magnification=DEFAULT_MAGNIFICATION,
                         min_run=4):
    """Count background/foreground transitions along the magnified ring.

    The ring is walked in 1-degree steps; samples falling outside the
    raster count as background, and alternation shorter than `min_run`
    samples is treated as one smeared crossing. Each finger crosses the
    ring twice and the wrist accounts for one extra pair:
    fingers = crossings / 2 - 1.
    """
    mask = np.asarray(mask, bool)
    h, w = mask.shape
    if r < 2:
        raise RingDegenerateError(f"inner radius {r} too small to build a ring")
    ring_r = magnification * r
    if ring_r < 3:
        raise RingDegenerateError(f"ring radius {ring_r:.1f} below minimum")
    theta = np.deg2rad(np.arange(360))
    xs = np.floor(center[0] + ring_r * np.cos(theta) + 0.5).astype(np.int64)
    ys = np.floor(center[1] + ring_r * np.sin(theta) + 0.5).astype(np.int64)
    inside = (xs >= 0) & (xs < w) & (ys >= 0) & (ys < h)
    values = np.zeros(360, bool)
    values[inside] = mask[ys[inside], xs[inside]]
    runs = _collapse_short_runs(values, min_run)
    crossings = len(runs) if len(runs) > 1 else 0
    if crossings % 2:
        raise OddCrossingsError(f"{crossings} ring crossings")
    return FingerCount(
        inner_radius=float(r),
        ring_radius=float(ring_r),
        magnification=magnification,
        crossings=crossings,
        fingers=crossings // 2 - 1,
    )


@dataclass
class HandPoseResult:
    verdict: str
    centroid: CentroidEstimate | None = None
    inner_radius: float | None = None
    count: FingerCount | None = None


def analyze_hand(mask, magnification=DEFAULT_MAGNIFICATION):
    """Full pose analysis; any geometric failure folds into indeterminate."""
    try:
        mask = np.asarray(mask, bool)
        field = distance_transform(mask) if mask.any() else None
        centroid = hand_centroid(mask, field)
        r = inner_circle_radius(mask, centroid.final, field)
        count = count_raised_fingers(mask, centroid.final, r, magnification)
    except (EmptyMaskError, CenterOnBackgroundError, OddCrossingsError, RingDegenerateError):
        return HandPoseResult(verdict=INDETERMINATE)
    verdict = WRITING if count.fingers == 1 else NON_WRITING
    return HandPoseResult(
        verdict=verdict, centroid=centroid, inner_radius=r, count=count
    )


def is_writing_pose(mask, magnification=DEFAULT_MAGNIFICATION):
    return analyze_hand(mask, magnification).verdict
