"""Self-contained pixel kernels the rest of the pipeline builds on.

Array conventions used throughout the package:

* RGB image   — ``np.uint8`` array of shape (H, W, 3)
* gray image  — ``np.uint8`` array of shape (H, W)
* binary mask — ``bool`` array of shape (H, W), True = foreground
* float field — ``np.float64`` array of shape (H, W)
* coordinates — (x, y) pairs with x = column, y = row; arrays index [y, x]

Foreground is 8-connected, background 4-connected.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateContourError, EmptyMaskError, MultipleComponentsError

# RGB -> YCbCr conversion: affine map, outputs kept as unclamped reals
YCBCR_MATRIX = np.array(
    [
        [0.2990, 0.5870, 0.1140],
        [-0.1687, -0.3313, 0.5000],
        [0.5000, -0.4187, -0.0813],
    ]
)
YCBCR_OFFSET = np.array([0.0, 128.0, 128.0])


def rgb_to_ycbcr(rgb):
    """Map 8-bit RGB samples to (Y, Cb, Cr) reals, no rounding or clamping.

    Accepts a single (R, G, B) triple or an (..., 3) array; returns float64
    of the same leading shape. The matrix rows are evaluated left to right
    so results are bit-identical to a scalar evaluation of the same map.
    """
    arr = np.asarray(rgb, np.float64)
    r, g, b = arr[..., 0], arr[..., 1], arr[..., 2]
    out = np.empty(arr.shape, np.float64)
    for i in range(3):
        m = YCBCR_MATRIX[i]
        out[..., i] = r * m[0] + g * m[1] + b * m[2] + YCBCR_OFFSET[i]
    return out


@dataclass(frozen=True)
class MorphKernel:
    """Circular disk structuring element, anchored at its center."""

    radius: int = 3

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError("kernel radius must be >= 1")

    def offsets(self):
        r = self.radius
        out = []
        for dy in range(-r, r + 1):
            for dx in range(-r, r + 1):
                if dx * dx + dy * dy <= r * r:
                    out.append((dx, dy))
        return out


def _shift(mask, dx, dy):
    """Translate a mask by (dx, dy), filling revealed pixels as background."""
    h, w = mask.shape
    out = np.zeros_like(mask)
    ys0, ys1 = max(0, -dy), min(h, h - dy)
    xs0, xs1 = max(0, -dx), min(w, w - dx)
    if ys0 < ys1 and xs0 < xs1:
        out[ys0 + dy : ys1 + dy, xs0 + dx : xs1 + dx] = mask[ys0:ys1, xs0:xs1]
    return out


def dilate(mask, kernel):
    out = np.zeros_like(mask)
    for dx, dy in kernel.offsets():
        out |= _shift(mask, dx, dy)
    return out


def erode(mask, kernel):
    """Erosion; offsets falling outside the raster are ignored, so an
    all-foreground raster erodes to itself and blobs touching the border
    keep their border pixels."""
    out = np.ones_like(mask)
    h, w = mask.shape
    for dx, dy in kernel.offsets():
        shifted = _shift(mask, -dx, -dy)
        # re-mark revealed out-of-raster pixels as foreground
        if dy > 0:
            shifted[h - dy :, :] = True
        elif dy < 0:
            shifted[: -dy, :] = True
        if dx > 0:
            shifted[:, w - dx :] = True
        elif dx < 0:
            shifted[:, : -dx] = True
        out &= shifted
    return out


def morph_filter(mask, kernel=MorphKernel()):
    """Dilate, erode, dilate — fills holes, removes noise, regularizes."""
    return dilate(erode(dilate(mask, kernel), kernel), kernel)


def connected_components(mask):
    """8-connected labels (0 = background, 1..count in scanline order)."""
    labels, count = _kernels.label_components(np.ascontiguousarray(mask, bool))
    return labels, int(count)


def largest_component(mask):
    """Keep only the maximum-area component; ties go to the component whose
    first pixel comes earliest in row-major order."""
    labels, count = connected_components(mask)
    if count == 0:
        raise EmptyMaskError("mask has no foreground")
    areas = np.bincount(labels.ravel())[1:]
    # labels are numbered by first appearance, argmax takes the earliest tie
    keep = int(np.argmax(areas)) + 1
    return labels == keep


def distance_transform(mask):
    """Exact Euclidean distance to the nearest background pixel.

    The raster is treated as surrounded by a one-pixel background ring, so
    foreground touching the border still gets finite distances; background
    pixels hold 0.
    """
    mask = np.asarray(mask, bool)
    h, w = mask.shape
    padded = np.zeros((h + 2, w + 2), bool)
    padded[1:-1, 1:-1] = mask
    sq = _kernels.edt_sq_padded(padded)[1:-1, 1:-1]
    return np.sqrt(sq.astype(np.float64))


def moments_centroid(mask):
    """Region centroid (M10/M00, M01/M00) of a binary mask."""
    ys, xs = np.nonzero(mask)
    if xs.size == 0:
        raise EmptyMaskError("zero-area mask has no centroid")
    return float(xs.mean()), float(ys.mean())


@dataclass
class Contour:
    """Ordered boundary points; consecutive traced points are 8-adjacent."""

    points: np.ndarray  # (N, 2) float64 (x, y)
    closed: bool = True

    def __len__(self):
        return len(self.points)

    def perimeter(self):
        if len(self.points) < 2:
            return 0.0
        pts = self.points
        seg = np.diff(pts, axis=0)
        total = float(np.hypot(seg[:, 0], seg[:, 1]).sum())
        if self.closed:
            total += float(np.hypot(*(pts[0] - pts[-1])))
        return total


def trace_contour(mask):
    """Closed clockwise boundary of the single foreground component."""
    mask = np.ascontiguousarray(mask, bool)
    if not mask.any():
        raise EmptyMaskError("cannot trace an empty mask")
    _, count = connected_components(mask)
    if count > 1:
        raise MultipleComponentsError(f"expected one component, found {count}")
    pts = _kernels.trace_boundary(mask)
    return Contour(points=pts.astype(np.float64), closed=True)


def resample_contour(contour, count):
    """Resample a closed contour at `count` uniform arc-length positions.

    The first output point coincides with the first input point.
    """
    if count < 8:
        raise ValueError("resample count must be >= 8")
    pts = contour.points
    if len(pts) < 3:
        raise DegenerateContourError("need at least 3 points to resample")
    loop = np.vstack([pts, pts[:1]])
    seg = np.diff(loop, axis=0)
    lens = np.hypot(seg[:, 0], seg[:, 1])
    total = float(lens.sum())
    if total <= 0.0:
        raise DegenerateContourError("contour has zero perimeter")
    cum = np.concatenate([[0.0], np.cumsum(lens)])
    targets = np.arange(count) * (total / count)
    idx = np.searchsorted(cum, targets, side="right") - 1
    idx = np.clip(idx, 0, len(lens) - 1)
    denom = np.where(lens[idx] > 0, lens[idx], 1.0)
    frac = (targets - cum[idx]) / denom
    out = loop[idx] + frac[:, None] * seg[idx]
    out[0] = pts[0]
    return Contour(points=out, closed=True)
