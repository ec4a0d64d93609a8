"""Binary hand-mask extraction inside a candidate hand box.

Chrominance skin filter, adaptive Gaussian-mixture background
subtraction, logical-AND fusion, disk morphology, largest component.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatchError, EmptyMaskError
from .imgproc import MorphKernel, largest_component, morph_filter, rgb_to_ycbcr


@dataclass(frozen=True)
class SkinModel:
    """Static chrominance band; luminance is computed and discarded."""

    cb_min: float = 77.0
    cb_max: float = 127.0
    cr_min: float = 133.0
    cr_max: float = 173.0

    def __post_init__(self):
        if self.cb_min > self.cb_max or self.cr_min > self.cr_max:
            raise ValueError("skin band bounds out of order")


def skin_mask(roi, model=SkinModel()):
    """Foreground where both chrominance components fall inside the band
    (inclusive); comparisons run on unrounded reals."""
    roi = np.asarray(roi)
    if roi.ndim != 3 or roi.shape[2] != 3:
        raise ValueError("skin_mask expects an (H, W, 3) RGB image")
    ycbcr = rgb_to_ycbcr(roi)
    cb = ycbcr[..., 1]
    cr = ycbcr[..., 2]
    return (
        (model.cb_min <= cb)
        & (cb <= model.cb_max)
        & (model.cr_min <= cr)
        & (cr <= model.cr_max)
    )


@dataclass(frozen=True)
class GmmConfig:
    max_components: int = 5
    learning_rate: float = 0.005
    variance_threshold: float = 2.5  # standard deviations
    initial_variance: float = 15.0**2
    variance_floor: float = 4.0
    background_ratio: float = 0.9
    warmup_frames: int = 10


class GmmBackground:
    """Per-pixel adaptive mixture background model (online, stateful).

    One instance belongs to one pipeline session; callers serialize
    updates. Weights stay normalized to 1 per pixel after every update.
    """

    def __init__(self, width, height, config=GmmConfig()):
        self.config = config
        self.width = width
        self.height = height
        k = config.max_components
        self.weights = np.zeros((height, width, k), np.float32)
        self.means = np.zeros((height, width, k, 3), np.float32)
        self.variances = np.zeros((height, width, k), np.float32)
        self.ncomp = np.zeros((height, width), np.int64)
        self.frames_seen = 0

    def update(self, frame):
        """Fold one frame into the model, return its raw foreground mask."""
        frame = np.asarray(frame)
        if frame.shape[:2] != (self.height, self.width):
            raise DimensionMismatchError(
                f"frame is {frame.shape[1]}x{frame.shape[0]}, "
                f"model is {self.width}x{self.height}"
            )
        out = np.empty((self.height, self.width), bool)
        cfg = self.config
        _kernels.gmm_update(
            np.ascontiguousarray(frame, np.float32),
            self.weights,
            self.means,
            self.variances,
            self.ncomp,
            cfg.learning_rate,
            cfg.variance_threshold,
            cfg.initial_variance,
            cfg.variance_floor,
            cfg.background_ratio,
            out,
        )
        self.frames_seen += 1
        return out

    def foreground(self, frame):
        """Update plus warm-up policy: during the first `warmup_frames`
        frames everything counts as foreground, so the skin filter alone
        governs early segmentation."""
        raw = self.update(frame)
        if self.frames_seen <= self.config.warmup_frames:
            return np.ones_like(raw)
        return raw


def segment_hand(roi, skin, fg, kernel=MorphKernel()):
    """Skin AND foreground, disk morphology, then the largest component.

    `fg` is the background-subtraction mask already cropped to the ROI.
    Raises EmptyMaskError when nothing survives the fusion.
    """
    roi = np.asarray(roi)
    fg = np.asarray(fg, bool)
    if fg.shape != roi.shape[:2]:
        raise DimensionMismatchError("foreground mask does not match ROI size")
    fused = skin_mask(roi, skin) & fg
    if not fused.any():
        raise EmptyMaskError("no skin-colored foreground inside the box")
    filtered = morph_filter(fused, kernel)
    if not filtered.any():
        raise EmptyMaskError("morphology erased every candidate pixel")
    return largest_component(filtered)
