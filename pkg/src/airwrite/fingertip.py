"""Fingertip localization on a segmented hand mask.

Per-contour-point curvature entropy weighted by normalized centroid
distance; the argmax of the resulting signature series is the fingertip.

The contour is resampled at n uniform arc-length positions so the turning
angle between successive samples approximates curvature times the sample
interval. Entropy uses the fixed normalization (1 - cos(alpha)) / 2 — a
positive affine image of -cos(alpha) — so distance weighting acts as pure
attenuation and flat faraway points cannot dominate the argmax.
"""

import io
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateContourError
from .handpose import hand_centroid
from .imgproc import resample_contour, trace_contour

MIN_PERIMETER = 16.0


@dataclass(frozen=True)
class SignatureConfig:
    sample_count: int = 128
    gamma: float = 2.5

    def __post_init__(self):
        if self.sample_count < 16:
            raise ValueError("sample_count must be >= 16")
        if not 1.0 <= self.gamma <= 5.0:
            raise ValueError("gamma outside [1, 5]")


def turning_angles(points):
    """Unsigned tangent-direction change at each point of a closed,
    resampled contour; cyclic indexing, values in [0, pi]."""
    pts = np.asarray(points, np.float64)
    prev = pts - np.roll(pts, 1, axis=0)
    nxt = np.roll(pts, -1, axis=0) - pts
    lp = np.hypot(prev[:, 0], prev[:, 1])
    ln = np.hypot(nxt[:, 0], nxt[:, 1])
    if (lp == 0).any() or (ln == 0).any():
        raise DegenerateContourError("coincident consecutive contour points")
    cosang = (prev * nxt).sum(axis=1) / (lp * ln)
    return np.arccos(np.clip(cosang, -1.0, 1.0))


def curvature_entropy(alpha):
    """(1 - cos(alpha)) / 2: 0 on straight runs, 1 at full fold-backs."""
    return (1.0 - np.cos(np.asarray(alpha, np.float64))) / 2.0


@dataclass
class SignatureSeries:
    points: np.ndarray  # (n, 2) resampled contour points
    turning: np.ndarray  # alpha per point, radians
    entropy: np.ndarray  # in [0, 1]
    distance: np.ndarray  # centroid distance, normalized to max 1
    psi: np.ndarray  # entropy * distance**gamma

    def to_csv(self):
        buf = io.StringIO()
        buf.write("index,x,y,alpha,entropy,distance,psi\n")
        for i in range(len(self.points)):
            buf.write(
                f"{i},{self.points[i, 0]:.4f},{self.points[i, 1]:.4f},"
                f"{self.turning[i]:.6f},{self.entropy[i]:.6f},"
                f"{self.distance[i]:.6f},{self.psi[i]:.6f}\n"
            )
        return buf.getvalue()


def signature(points, centroid, cfg=SignatureConfig()):
    """Signature series over an already-resampled closed contour."""
    pts = np.asarray(points, np.float64)
    alpha = turning_angles(pts)
    entropy = curvature_entropy(alpha)
    delta = np.hypot(pts[:, 0] - centroid[0], pts[:, 1] - centroid[1])
    dmax = delta.max()
    if dmax <= 0:
        raise DegenerateContourError("all contour points coincide with the centroid")
    delta = delta / dmax
    psi = entropy * delta**cfg.gamma
    return SignatureSeries(
        points=pts, turning=alpha, entropy=entropy, distance=delta, psi=psi
    )


@dataclass
class FingertipDetection:
    position: tuple  # (x, y)
    psi_max: float
    margin: float  # psi_max minus the strongest competing local max


def _runner_up_margin(psi, best):
    n = len(psi)
    local = [
        i
        for i in range(n)
        if psi[i] >= psi[(i - 1) % n] and psi[i] >= psi[(i + 1) % n] and i != best
    ]
    if not local:
        return float(psi[best])
    return float(psi[best] - max(psi[i] for i in local))


def mask_signature(mask, centroid=None, cfg=SignatureConfig()):
    """Trace, resample, and score the hand boundary. `centroid` defaults
    to the dual-estimate hand centroid of the mask."""
    contour = trace_contour(mask)
    if len(contour) < 3 or contour.perimeter() < MIN_PERIMETER:
        raise DegenerateContourError(
            f"contour too small for fingertip detection ({len(contour)} pts)"
        )
    if centroid is None:
        centroid = hand_centroid(mask).final
    resampled = resample_contour(contour, cfg.sample_count)
    return signature(resampled.points, centroid, cfg)


def detect_fingertip(mask, centroid=None, cfg=SignatureConfig()):
    """Signature argmax point; ties break toward the smallest contour index."""
    series = mask_signature(mask, centroid, cfg)
    best = int(np.argmax(series.psi))
    return FingertipDetection(
        position=(float(series.points[best, 0]), float(series.points[best, 1])),
        psi_max=float(series.psi[best]),
        margin=_runner_up_margin(series.psi, best),
    )
