"""Synthetic hands and sequences: the ground-truth oracle for the
geometric pipeline.

A hand is a palm disk, finger capsules radiating from the palm center,
and a wrist stem running to the bottom border of its local canvas (the
canvas plays the role of a detector's hand box, which crops at the
wrist). Finger capsules are rectangles with rounded tips whose apex —
the far-end midpoint — is the ground-truth fingertip.

Sequences composite the hand canvas over a textured static background at
integer per-frame offsets, in the skin tone (200, 140, 120) which sits
safely inside the default chrominance band.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import SpecOutOfBoundsError
from .pnm import write_ppm

SKIN_TONE = (200, 140, 120)
BACKGROUND_TONE = (90, 120, 150)

# smallest palm radius at which n fingers remain separable on the ring
_RADIUS_FLOOR = {0: 16, 1: 16, 2: 17, 3: 19, 4: 21, 5: 23}
_FAN = (-160.0, -20.0)  # screen angles (y down): the upward fan


@dataclass(frozen=True)
class FingerSpec:
    angle_deg: float  # direction from the palm center, y-down screen angle
    length: float  # palm center to tip apex
    width: float


@dataclass(frozen=True)
class SynthHandSpec:
    palm_center: tuple  # (x, y) in the local canvas
    palm_radius: float
    fingers: tuple = ()
    wrist_width: float = 0.0  # 0 -> 0.9 * palm_radius
    canvas: tuple = (0, 0)  # (w, h); 0 -> sized to fit
    seed: int = 0

    def __post_init__(self):
        for f in self.fingers:
            if f.width < 6:
                raise SpecOutOfBoundsError(f"finger width {f.width} below 6 px")
            if f.length < 2.5 * self.palm_radius:
                raise SpecOutOfBoundsError(
                    f"finger length {f.length} below 2.5 x palm radius"
                )

    @classmethod
    def random(cls, seed, fingers=None):
        """Randomized but geometrically countable hand."""
        rng = np.random.default_rng(seed)
        n = int(rng.integers(0, 6)) if fingers is None else int(fingers)
        r = float(rng.uniform(_RADIUS_FLOOR[n], 27.0))
        length = float(rng.uniform(2.5, 2.7)) * r
        width = float(rng.uniform(6.0, min(8.5, 6.0 + 0.35 * (r - 16.0))))
        lo, hi = _FAN
        pitch = (hi - lo) / n if n else 0.0
        specs = tuple(
            FingerSpec(
                angle_deg=lo + pitch * (i + 0.5) + float(rng.uniform(-3, 3)),
                length=length,
                width=width,
            )
            for i in range(n)
        )
        extent = length if n else r
        margin = int(np.ceil(1.7 * r))
        w = int(2 * (extent + 12))
        h = int(extent + 12 + r + margin)
        return cls(
            palm_center=(w / 2.0, float(h - margin)),
            palm_radius=r,
            fingers=specs,
            wrist_width=0.9 * r,
            canvas=(w, h),
            seed=seed,
        )


def _paint_capsule(mask, x0, y0, x1, y1, width):
    h, w = mask.shape
    yy, xx = np.mgrid[0:h, 0:w]
    dx, dy = x1 - x0, y1 - y0
    l2 = dx * dx + dy * dy
    if l2 == 0:
        t = np.zeros((h, w))
    else:
        t = np.clip(((xx - x0) * dx + (yy - y0) * dy) / l2, 0.0, 1.0)
    px, py = x0 + t * dx, y0 + t * dy
    mask |= (xx - px) ** 2 + (yy - py) ** 2 <= (width / 2.0) ** 2


_TIP_RADIUS = 1.6  # rounded-tip cap; small enough to read as high curvature


def _paint_finger(mask, cx, cy, th, length, width):
    """Full-width shaft for 70 % of the length, then a taper into a small
    rounded tip whose apex sits exactly `length` from the palm center."""
    ux, uy = np.cos(th), np.sin(th)
    shaft_end = 0.7 * length
    _paint_capsule(mask, cx, cy, cx + shaft_end * ux, cy + shaft_end * uy, width)
    steps = 8
    taper_end = length - _TIP_RADIUS
    prev = shaft_end
    for i in range(1, steps + 1):
        cur = shaft_end + (taper_end - shaft_end) * i / steps
        wcur = width + (2 * _TIP_RADIUS - width) * i / steps
        _paint_capsule(
            mask,
            cx + prev * ux,
            cy + prev * uy,
            cx + cur * ux,
            cy + cur * uy,
            max(wcur, 2 * _TIP_RADIUS),
        )
        prev = cur


def synth_hand(spec):
    """Render a hand mask; returns (mask, truth).

    truth = {"centroid": palm center, "tips": fingertip apexes in finger
    order, "finger_count": n}.
    """
    cx, cy = spec.palm_center
    r = spec.palm_radius
    if spec.canvas != (0, 0):
        w, h = spec.canvas
    else:
        extent = max([f.length for f in spec.fingers], default=r)
        w = int(2 * (extent + 12))
        h = int(extent + 12 + r + int(np.ceil(1.7 * r)))
    if not (r <= cx <= w - r and r <= cy <= h - r):
        raise SpecOutOfBoundsError("palm does not fit inside the canvas")
    mask = np.zeros((h, w), bool)
    yy, xx = np.mgrid[0:h, 0:w]
    mask |= (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r
    tips = []
    for f in spec.fingers:
        th = np.deg2rad(f.angle_deg)
        tip = (cx + f.length * np.cos(th), cy + f.length * np.sin(th))
        if not (2 <= tip[0] < w - 2 and 2 <= tip[1] < h - 2):
            raise SpecOutOfBoundsError(f"finger tip {tip} leaves the canvas")
        _paint_finger(mask, cx, cy, th, f.length, f.width)
        tips.append((float(tip[0]), float(tip[1])))
    ww = spec.wrist_width or 0.9 * r
    _paint_capsule(mask, cx, cy, cx, h + ww, ww)
    truth = {
        "centroid": (float(cx), float(cy)),
        "tips": tips,
        "finger_count": len(spec.fingers),
    }
    return mask, truth


@dataclass
class SynthSequence:
    frames: list  # (H, W, 3) uint8 arrays
    boxes: list  # (x, y, w, h) per frame
    tips: list  # (x, y) or None per frame
    hand_mask: np.ndarray = None  # local-canvas mask
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.frames)

    def truth_dict(self):
        return {
            "frames": [
                {
                    "frame": i,
                    "box": {
                        "x": int(b[0]),
                        "y": int(b[1]),
                        "w": int(b[2]),
                        "h": int(b[3]),
                    },
                    "tip": None
                    if self.tips[i] is None
                    else {"x": float(self.tips[i][0]), "y": float(self.tips[i][1])},
                }
                for i, b in enumerate(self.boxes)
            ]
        }

    def write(self, out_dir):
        """frame_000001.ppm ... plus truth.json (frame indices 0-based)."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, frame in enumerate(self.frames):
            write_ppm(out / f"frame_{i + 1:06d}.ppm", frame)
        with open(out / "truth.json", "w") as f:
            json.dump(self.truth_dict(), f)
        return out


def synth_sequence(spec, motion, frames, frame_size=(640, 480), start=None,
                   seed=None, box_margin=8):
    """Composite a rigid hand over a static textured background.

    `motion` is a per-frame (dx, dy) integer translation, or a list of
    them; the hand canvas must stay at least 10 px inside the frame.
    Ground-truth boxes are the tight mask bounds padded by `box_margin`,
    the way a detector box would carry margin around the hand.
    """
    fw, fh = frame_size
    mask, truth = synth_hand(spec)
    ch, cw = mask.shape
    rng = np.random.default_rng(spec.seed if seed is None else seed)
    background = np.clip(
        np.array(BACKGROUND_TONE, np.int16)
        + rng.integers(-20, 21, (fh, fw, 3), np.int16),
        0,
        255,
    ).astype(np.uint8)
    hand_tex = np.clip(
        np.array(SKIN_TONE, np.int16) + rng.integers(-10, 11, (ch, cw, 3), np.int16),
        0,
        255,
    ).astype(np.uint8)

    if start is None:
        start = ((fw - cw) // 2, (fh - ch) // 2)
    steps = list(motion) if not isinstance(motion, tuple) else [motion] * (frames - 1)
    if len(steps) < frames - 1:
        steps = steps + [(0, 0)] * (frames - 1 - len(steps))

    ys, xs = np.nonzero(mask)
    x0, x1 = int(xs.min()) - box_margin, int(xs.max()) + box_margin
    y0, y1 = int(ys.min()) - box_margin, int(ys.max()) + box_margin
    local_box = (x0, y0, x1 - x0 + 1, y1 - y0 + 1)
    local_tip = truth["tips"][0] if truth["tips"] else None

    out = SynthSequence(frames=[], boxes=[], tips=[], hand_mask=mask, meta={"truth": truth})
    px, py = int(start[0]), int(start[1])
    for i in range(frames):
        if i > 0:
            px += int(steps[i - 1][0])
            py += int(steps[i - 1][1])
        if not (10 <= px and 10 <= py and px + cw <= fw - 10 and py + ch <= fh - 10):
            raise SpecOutOfBoundsError(f"hand leaves the frame margin at frame {i}")
        frame = background.copy()
        region = frame[py : py + ch, px : px + cw]
        region[mask] = hand_tex[mask]
        out.frames.append(frame)
        out.boxes.append((local_box[0] + px, local_box[1] + py, local_box[2], local_box[3]))
        out.tips.append(
            None if local_tip is None else (local_tip[0] + px, local_tip[1] + py)
        )
    return out


def load_truth(path):
    """Read a ground-truth JSON written by SynthSequence.write."""
    with open(path) as f:
        data = json.load(f)
    boxes = []
    tips = []
    for entry in data["frames"]:
        b = entry["box"]
        boxes.append((b["x"], b["y"], b["w"], b["h"]))
        t = entry.get("tip")
        tips.append(None if t is None else (t["x"], t["y"]))
    return boxes, tips
