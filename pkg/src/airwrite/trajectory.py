"""Fingertip trajectories: accumulation, velocity-based termination,
iterative smoothing, and rasterization for the recognizer.

A trajectory is an ordered list of (x, y, t) with t in milliseconds,
strictly increasing. Velocity between consecutive points is displacement
times instantaneous frame rate: v = d * (1000 / dt_ms), in px/second.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateTrajectoryError,
    NonMonotonicTimeError,
    TooShortError,
)

OPEN = "open"
TERMINATED = "terminated"
CLEARED = "cleared"


@dataclass(frozen=True)
class TerminationConfig:
    tau: float = 40.0  # px/second
    window: int = 5  # consecutive slow steps required
    min_points: int = 10


@dataclass(frozen=True)
class SmoothingConfig:
    lam: float = 5.0  # px gap that triggers neighbor averaging
    epsilon: float = 0.4  # entropy-change tolerance
    max_iterations: int = 50


class Trajectory:
    """Mutable while open; terminated trajectories reject new points."""

    def __init__(self, points=None, state=OPEN, label=None):
        self.points = [tuple(map(float, p)) for p in (points or [])]
        for a, b in zip(self.points, self.points[1:]):
            if b[2] <= a[2]:
                raise NonMonotonicTimeError("timestamps must strictly increase")
        self.state = state
        self.label = label

    def __len__(self):
        return len(self.points)

    def append(self, x, y, t):
        if self.state != OPEN:
            raise ValueError(f"cannot append to a {self.state} trajectory")
        if self.points and t <= self.points[-1][2]:
            raise NonMonotonicTimeError(
                f"t={t} not after previous t={self.points[-1][2]}"
            )
        self.points.append((float(x), float(y), float(t)))

    def terminate(self):
        self.state = TERMINATED

    def clear(self):
        self.points = []
        self.state = CLEARED

    def xy(self):
        return np.array([(p[0], p[1]) for p in self.points], np.float64).reshape(-1, 2)

    def times(self):
        return np.array([p[2] for p in self.points], np.float64)

    def to_dict(self):
        out = {"points": [{"x": x, "y": y, "t": t} for x, y, t in self.points]}
        if self.label is not None:
            out["label"] = self.label
        return out

    @classmethod
    def from_dict(cls, data, state=TERMINATED):
        pts = [(p["x"], p["y"], p["t"]) for p in data["points"]]
        return cls(points=pts, state=state, label=data.get("label"))

    def save(self, path):
        with open(path, "w") as f:
            json.dump(self.to_dict(), f)

    @classmethod
    def load(cls, path, state=TERMINATED):
        with open(path) as f:
            return cls.from_dict(json.load(f), state=state)


def velocity(traj, i):
    """Fingertip speed entering point i, px/second."""
    if i < 1 or i >= len(traj.points):
        raise IndexError(f"velocity needs 1 <= i < {len(traj.points)}")
    x0, y0, t0 = traj.points[i - 1]
    x1, y1, t1 = traj.points[i]
    if t1 <= t0:
        raise NonMonotonicTimeError("timestamps must strictly increase")
    d = float(np.hypot(x1 - x0, y1 - y0))
    return d * (1000.0 / (t1 - t0))


def check_termination(traj, cfg=TerminationConfig()):
    """True when the stroke has settled: at least `min_points` points and
    the last `window` consecutive steps all slower than tau."""
    n = len(traj.points)
    if n < cfg.min_points or n < cfg.window + 1:
        return False
    for i in range(n - cfg.window, n):
        if velocity(traj, i) >= cfg.tau:
            return False
    return True


def _polyline_turning(xy):
    """Unsigned turning angles at interior vertices; zero-length segments
    contribute zero turn (no measurable direction change)."""
    seg = np.diff(xy, axis=0)
    lens = np.hypot(seg[:, 0], seg[:, 1])
    a, b = seg[:-1], seg[1:]
    la, lb = lens[:-1], lens[1:]
    denom = la * lb
    ok = denom > 0
    cosang = np.ones(len(denom))
    cosang[ok] = (a[ok] * b[ok]).sum(axis=1) / denom[ok]
    return np.arccos(np.clip(cosang, -1.0, 1.0))


def trajectory_entropy(traj_or_xy):
    """Mean curvature entropy (1 - cos(turn)) / 2 over interior vertices."""
    xy = traj_or_xy.xy() if isinstance(traj_or_xy, Trajectory) else np.asarray(traj_or_xy, np.float64)
    if len(xy) < 3:
        raise TooShortError("entropy needs at least 3 points")
    alpha = _polyline_turning(xy)
    return float(((1.0 - np.cos(alpha)) / 2.0).mean())


def smooth(traj, cfg=SmoothingConfig()):
    """Iterative neighbor averaging of points whose preceding gap exceeds
    lambda; stops when the trajectory entropy settles within epsilon.

    Endpoints and timestamps never move; point count is preserved. The
    sweep updates in place, so point i sees the already-updated i-1.
    """
    if traj.state != TERMINATED:
        raise ValueError("smooth expects a terminated trajectory")
    if len(traj.points) < 3:
        raise TooShortError("smoothing needs at least 3 points")
    xy = traj.xy()
    u_prev = trajectory_entropy(xy)
    for _ in range(cfg.max_iterations):
        for i in range(1, len(xy) - 1):
            gap = np.hypot(*(xy[i] - xy[i - 1]))
            if gap > cfg.lam:
                xy[i] = (xy[i - 1] + xy[i + 1]) / 2.0
        u = trajectory_entropy(xy)
        if abs(u - u_prev) < cfg.epsilon:
            break
        u_prev = u
    times = traj.times()
    pts = [(float(x), float(y), float(t)) for (x, y), t in zip(xy, times)]
    return Trajectory(points=pts, state=TERMINATED, label=traj.label)


def rasterize(traj, side=28):
    """Scale-and-center the stroke into the central region of a square
    canvas (aspect preserved) and draw it as connected 2-px segments,
    white on black, with anti-aliased edges as in standard handwritten
    digit preprocessing. 28 px canvas keeps a 20 px content box."""
    xy = traj.xy() if isinstance(traj, Trajectory) else np.asarray(traj, np.float64)
    if len(xy) < 2 or (xy == xy[0]).all():
        raise DegenerateTrajectoryError("need at least two distinct points")
    content = side - 8
    lo = xy.min(axis=0)
    hi = xy.max(axis=0)
    extent = float(max(hi[0] - lo[0], hi[1] - lo[1]))
    scale = content / extent
    mid = (lo + hi) / 2.0
    mapped = (xy - mid) * scale + (side - 1) / 2.0
    canvas = np.zeros((side, side), np.float64)
    core = 0.8  # full-intensity half-width
    fade = 1.0  # linear falloff beyond the core
    reach = core + fade
    for p, q in zip(mapped[:-1], mapped[1:]):
        x0 = max(0, int(np.floor(min(p[0], q[0]) - reach)))
        x1 = min(side - 1, int(np.ceil(max(p[0], q[0]) + reach)))
        y0 = max(0, int(np.floor(min(p[1], q[1]) - reach)))
        y1 = min(side - 1, int(np.ceil(max(p[1], q[1]) + reach)))
        if x1 < x0 or y1 < y0:
            continue
        yy, xx = np.mgrid[y0 : y1 + 1, x0 : x1 + 1]
        d = q - p
        l2 = d[0] * d[0] + d[1] * d[1]
        if l2 == 0:
            dist = np.hypot(xx - p[0], yy - p[1])
        else:
            t = np.clip(((xx - p[0]) * d[0] + (yy - p[1]) * d[1]) / l2, 0.0, 1.0)
            dist = np.hypot(xx - (p[0] + t * d[0]), yy - (p[1] + t * d[1]))
        value = np.clip((reach - dist) / fade, 0.0, 1.0)
        np.maximum(canvas[y0 : y1 + 1, x0 : x1 + 1], value, out=canvas[y0 : y1 + 1, x0 : x1 + 1])
    return np.floor(canvas * 255.0 + 0.5).astype(np.uint8)
