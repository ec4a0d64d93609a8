"""Unistroke glyph paths for digits 0-9 and letters a-z.

Each glyph is a single connected pen path (air-writing has no pen-up), as
anchor points in a unit box with y pointing down. Curved glyphs are
interpolated with a Catmull-Rom spline through their anchors; angular
ones stay polylines. Every consumer — template rendering, synthetic
trajectory datasets, the end-to-end service tests — samples the same
paths, so recognition is exercised against geometry it can actually
reproduce.
"""

import numpy as np

from .trajectory import Trajectory

LABELS = "0123456789abcdefghijklmnopqrstuvwxyz"

_A = {
    "0": [(0.5, 0.08), (0.3, 0.26), (0.28, 0.72), (0.5, 0.92), (0.7, 0.72), (0.68, 0.26), (0.5, 0.08)],
    "1": [(0.3, 0.22), (0.55, 0.06), (0.55, 0.94)],
    "2": [(0.22, 0.3), (0.36, 0.1), (0.64, 0.1), (0.78, 0.3), (0.58, 0.55), (0.2, 0.92), (0.82, 0.92)],
    "3": [(0.26, 0.14), (0.52, 0.08), (0.72, 0.24), (0.52, 0.46), (0.72, 0.62), (0.72, 0.76), (0.5, 0.92), (0.26, 0.84)],
    "4": [(0.64, 0.08), (0.22, 0.6), (0.8, 0.6), (0.64, 0.42), (0.64, 0.95)],
    "5": [(0.78, 0.06), (0.28, 0.06), (0.28, 0.42), (0.58, 0.38), (0.78, 0.58), (0.76, 0.76), (0.52, 0.92), (0.26, 0.82)],
    "6": [(0.66, 0.08), (0.42, 0.3), (0.3, 0.58), (0.32, 0.8), (0.52, 0.92), (0.68, 0.78), (0.66, 0.6), (0.48, 0.52), (0.34, 0.62)],
    "7": [(0.2, 0.1), (0.8, 0.1), (0.44, 0.95)],
    "8": [(0.5, 0.5), (0.3, 0.3), (0.5, 0.1), (0.7, 0.3), (0.5, 0.5), (0.28, 0.72), (0.5, 0.92), (0.72, 0.72), (0.5, 0.5)],
    "9": [(0.7, 0.28), (0.5, 0.1), (0.3, 0.28), (0.48, 0.48), (0.7, 0.32), (0.68, 0.6), (0.58, 0.95)],
    "a": [(0.66, 0.34), (0.44, 0.26), (0.28, 0.5), (0.44, 0.76), (0.66, 0.6), (0.68, 0.3), (0.68, 0.74), (0.78, 0.82)],
    "b": [(0.26, 0.06), (0.26, 0.92), (0.3, 0.56), (0.54, 0.44), (0.72, 0.62), (0.56, 0.86), (0.3, 0.86)],
    "c": [(0.74, 0.3), (0.5, 0.2), (0.28, 0.44), (0.3, 0.7), (0.5, 0.86), (0.74, 0.74)],
    "d": [(0.7, 0.5), (0.46, 0.4), (0.3, 0.6), (0.46, 0.84), (0.68, 0.7), (0.7, 0.06), (0.7, 0.92)],
    "e": [(0.3, 0.56), (0.68, 0.5), (0.6, 0.28), (0.36, 0.28), (0.27, 0.58), (0.4, 0.85), (0.7, 0.8)],
    "f": [(0.68, 0.14), (0.5, 0.07), (0.42, 0.28), (0.42, 0.92), (0.42, 0.46), (0.26, 0.44), (0.62, 0.44)],
    "g": [(0.66, 0.3), (0.46, 0.22), (0.3, 0.44), (0.47, 0.6), (0.65, 0.48), (0.66, 0.26), (0.66, 0.74), (0.5, 0.92), (0.32, 0.84)],
    "h": [(0.26, 0.06), (0.26, 0.92), (0.26, 0.5), (0.52, 0.38), (0.74, 0.52), (0.74, 0.92)],
    "i": [(0.46, 0.12), (0.54, 0.16), (0.5, 0.22), (0.5, 0.9)],
    "j": [(0.62, 0.2), (0.62, 0.68), (0.54, 0.88), (0.32, 0.8)],
    "k": [(0.28, 0.06), (0.28, 0.92), (0.28, 0.54), (0.66, 0.24), (0.42, 0.5), (0.7, 0.9)],
    "l": [(0.4, 0.06), (0.4, 0.72), (0.46, 0.86), (0.64, 0.9)],
    "m": [(0.2, 0.92), (0.22, 0.36), (0.36, 0.28), (0.48, 0.4), (0.48, 0.92), (0.5, 0.44), (0.64, 0.3), (0.78, 0.42), (0.78, 0.92)],
    "n": [(0.26, 0.92), (0.28, 0.34), (0.46, 0.26), (0.68, 0.42), (0.7, 0.92)],
    "o": [(0.5, 0.24), (0.3, 0.42), (0.34, 0.74), (0.58, 0.86), (0.72, 0.62), (0.64, 0.32), (0.5, 0.24)],
    "p": [(0.28, 0.34), (0.28, 0.95), (0.28, 0.48), (0.46, 0.3), (0.68, 0.42), (0.66, 0.62), (0.46, 0.72), (0.28, 0.6)],
    "q": [(0.66, 0.34), (0.46, 0.26), (0.3, 0.48), (0.46, 0.68), (0.64, 0.54), (0.66, 0.3), (0.66, 0.9), (0.76, 0.78)],
    "r": [(0.3, 0.9), (0.3, 0.34), (0.36, 0.28), (0.54, 0.26), (0.68, 0.36)],
    "s": [(0.7, 0.26), (0.46, 0.18), (0.3, 0.34), (0.48, 0.5), (0.64, 0.62), (0.52, 0.82), (0.28, 0.78)],
    "t": [(0.44, 0.06), (0.44, 0.84), (0.56, 0.92), (0.44, 0.42), (0.26, 0.38), (0.66, 0.38)],
    "u": [(0.26, 0.28), (0.26, 0.68), (0.4, 0.88), (0.6, 0.82), (0.7, 0.62), (0.7, 0.28), (0.7, 0.9)],
    "v": [(0.22, 0.24), (0.5, 0.92), (0.78, 0.24)],
    "w": [(0.15, 0.24), (0.32, 0.92), (0.5, 0.44), (0.68, 0.92), (0.85, 0.24)],
    "x": [(0.26, 0.22), (0.74, 0.9), (0.74, 0.22), (0.26, 0.9)],
    "y": [(0.25, 0.22), (0.5, 0.55), (0.72, 0.24), (0.36, 0.95)],
    "z": [(0.25, 0.2), (0.75, 0.2), (0.25, 0.9), (0.75, 0.9)],
}

_STRAIGHT = {"1", "4", "7", "i", "k", "v", "w", "x", "y", "z", "t", "l"}


def _catmull_rom(anchors, per_seg=14):
    """Centripetal-flavored Catmull-Rom through all anchors."""
    pts = np.asarray(anchors, np.float64)
    ext = np.vstack([pts[0] + (pts[0] - pts[1]), pts, pts[-1] + (pts[-1] - pts[-2])])
    out = []
    for i in range(1, len(ext) - 2):
        p0, p1, p2, p3 = ext[i - 1], ext[i], ext[i + 1], ext[i + 2]
        t = np.linspace(0, 1, per_seg, endpoint=False)[:, None]
        out.append(
            0.5
            * (
                (2 * p1)
                + (-p0 + p2) * t
                + (2 * p0 - 5 * p1 + 4 * p2 - p3) * t**2
                + (-p0 + 3 * p1 - 3 * p2 + p3) * t**3
            )
        )
    out.append(pts[-1:])
    return np.vstack(out)


def _resample_polyline(pts, n):
    seg = np.diff(pts, axis=0)
    lens = np.hypot(seg[:, 0], seg[:, 1])
    total = lens.sum()
    cum = np.concatenate([[0.0], np.cumsum(lens)])
    targets = np.linspace(0.0, total, n)
    idx = np.clip(np.searchsorted(cum, targets, side="right") - 1, 0, len(lens) - 1)
    denom = np.where(lens[idx] > 0, lens[idx], 1.0)
    frac = ((targets - cum[idx]) / denom)[:, None]
    return pts[idx] + frac * seg[idx]


def glyph_path(label, n=48):
    """(n, 2) arc-length-uniform samples of the glyph in the unit box."""
    if label not in _A:
        raise KeyError(f"no glyph for {label!r}")
    anchors = _A[label]
    pts = np.asarray(anchors, np.float64) if label in _STRAIGHT else _catmull_rom(anchors)
    return _resample_polyline(pts, n)


def _rotated(pts, degrees):
    th = np.deg2rad(degrees)
    c, s = np.cos(th), np.sin(th)
    center = pts.mean(axis=0)
    rel = pts - center
    return np.stack(
        [rel[:, 0] * c - rel[:, 1] * s, rel[:, 0] * s + rel[:, 1] * c], axis=1
    ) + center


VARIANT_ROTATIONS = (0.0, -4.0, 4.0)


def glyph_variant_path(label, variant=0, n=48):
    """Variant 0 is the base path; 1 and 2 are slightly rotated copies."""
    return _rotated(glyph_path(label, n), VARIANT_ROTATIONS[variant % len(VARIANT_ROTATIONS)])


def glyph_trajectory(label, scale=180.0, origin=(30.0, 30.0), dt_ms=33.0,
                     n=24, tail=0, tail_step=0.4, variant=0):
    """Trajectory tracing the glyph, optionally with a slow tail.

    The tail appends nearly-stationary points after the stroke (sub-pixel
    steps) so the velocity criterion can fire naturally.
    """
    pts = glyph_variant_path(label, variant=variant, n=n)
    xs = origin[0] + pts[:, 0] * scale
    ys = origin[1] + pts[:, 1] * scale
    t = Trajectory(label=label)
    clock = 0.0
    for x, y in zip(xs, ys):
        t.append(float(x), float(y), clock)
        clock += dt_ms
    for i in range(tail):
        t.append(float(xs[-1] + tail_step * (i + 1)), float(ys[-1]), clock)
        clock += dt_ms
    return t
