"""Hand-region acquisition and tracking, and the per-frame pipeline.

The hand box comes from a pluggable provider (ground-truth annotations or
a skin-blob fallback) and is carried between provider calls by a
Gaussian-kernel correlation filter over the raw grayscale patch. The
tracker is re-initialized from the provider on a fixed schedule (every
`reinit_interval` frames) and whenever the response peak-to-sidelobe
ratio collapses.
"""

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    AnnotationMissingError,
    BoxOutOfFrameError,
    DegenerateContourError,
    EmptyMaskError,
    LowConfidenceError,
    MultipleComponentsError,
)
from .fingertip import SignatureConfig, detect_fingertip
from .handpose import DEFAULT_MAGNIFICATION, INDETERMINATE, WRITING, analyze_hand
from .imgproc import MorphKernel, connected_components
from .pnm import read_ppm
from .segmentation import GmmBackground, GmmConfig, SkinModel, segment_hand, skin_mask
from .trajectory import TerminationConfig, Trajectory


@dataclass(frozen=True)
class HandRegion:
    x: int
    y: int
    w: int
    h: int
    confidence: float = 1.0

    def clamped(self, frame_shape):
        """Clip to frame bounds, keeping at least an 8x8 box."""
        fh, fw = frame_shape[:2]
        x = max(0, min(self.x, fw - 8))
        y = max(0, min(self.y, fh - 8))
        w = max(8, min(self.w, fw - x))
        h = max(8, min(self.h, fh - y))
        return HandRegion(x, y, w, h, self.confidence)

    def as_tuple(self):
        return (self.x, self.y, self.w, self.h)


class AnnotationProvider:
    """Ground-truth boxes keyed by frame index."""

    def __init__(self, entries):
        # entries: iterable of {frame, x, y, w, h}
        self.boxes = {
            int(e["frame"]): HandRegion(int(e["x"]), int(e["y"]), int(e["w"]), int(e["h"]))
            for e in entries
        }
        self.last = max(self.boxes) if self.boxes else -1

    @classmethod
    def from_file(cls, path):
        with open(path) as f:
            return cls(json.load(f))

    def __call__(self, frame_index, frame):
        if frame_index > self.last:
            raise AnnotationMissingError(
                f"frame {frame_index} beyond annotated range (last {self.last})"
            )
        return self.boxes.get(frame_index)


class SkinBlobProvider:
    """Bounding box of the largest skin component, grown by 20 %; absent
    when that component is smaller than `min_area` pixels."""

    def __init__(self, skin=SkinModel(), min_area=400, grow=0.2):
        self.skin = skin
        self.min_area = min_area
        self.grow = grow

    def __call__(self, frame_index, frame):
        mask = skin_mask(frame, self.skin)
        if not mask.any():
            return None
        labels, count = connected_components(mask)
        if count == 0:
            return None
        areas = np.bincount(labels.ravel())[1:]
        best = int(np.argmax(areas)) + 1
        if areas[best - 1] < self.min_area:
            return None
        ys, xs = np.nonzero(labels == best)
        x0, x1 = int(xs.min()), int(xs.max())
        y0, y1 = int(ys.min()), int(ys.max())
        w, h = x1 - x0 + 1, y1 - y0 + 1
        gx, gy = w * self.grow / 2.0, h * self.grow / 2.0
        box = HandRegion(
            int(round(x0 - gx)), int(round(y0 - gy)),
            int(round(w * (1 + self.grow))), int(round(h * (1 + self.grow))),
        )
        return box.clamped(frame.shape)


@dataclass(frozen=True)
class TrackConfig:
    reinit_interval: int = 50
    padding: float = 1.5
    kernel_sigma: float = 0.5
    regularization: float = 1e-4
    model_learning_rate: float = 0.02
    psr_floor: float = 5.0
    output_sigma_factor: float = 0.1


def _grayscale(frame):
    f = np.asarray(frame, np.float64)
    if f.ndim == 2:
        return f
    return 0.299 * f[..., 0] + 0.587 * f[..., 1] + 0.114 * f[..., 2]


def _subwindow(gray, cx, cy, w, h):
    """Patch centered at (cx, cy) with replicated borders."""
    xs = np.clip(np.arange(cx - w // 2, cx - w // 2 + w), 0, gray.shape[1] - 1)
    ys = np.clip(np.arange(cy - h // 2, cy - h // 2 + h), 0, gray.shape[0] - 1)
    return gray[np.ix_(ys, xs)]


class KcfTracker:
    """Gaussian-kernel correlation filter over a cosine-windowed grayscale
    patch; translation only, scale restored at provider re-inits."""

    def __init__(self, frame, bbox, cfg=TrackConfig()):
        fh, fw = frame.shape[:2]
        if bbox.x < 0 or bbox.y < 0 or bbox.x + bbox.w > fw or bbox.y + bbox.h > fh:
            raise BoxOutOfFrameError(f"{bbox} outside {fw}x{fh} frame")
        self.cfg = cfg
        self.bbox = bbox
        self.frames_since_init = 0
        self.psr = float("inf")
        self._cx = bbox.x + bbox.w // 2
        self._cy = bbox.y + bbox.h // 2
        pw = max(16, int(round(bbox.w * cfg.padding)) & ~1)
        ph = max(16, int(round(bbox.h * cfg.padding)) & ~1)
        self._pw, self._ph = pw, ph
        self._hann = np.outer(np.hanning(ph), np.hanning(pw))
        sigma = np.sqrt(bbox.w * bbox.h) * cfg.output_sigma_factor
        ys = np.arange(ph) - ph // 2
        xs = np.arange(pw) - pw // 2
        yy, xx = np.meshgrid(ys, xs, indexing="ij")
        y = np.exp(-0.5 * (xx**2 + yy**2) / sigma**2)
        # circular shift so the target peak sits at the origin
        y = np.roll(y, (-(ph // 2), -(pw // 2)), axis=(0, 1))
        self._yf = np.fft.rfft2(y)
        x = self._features(frame)
        self._model_xf = np.fft.rfft2(x)
        self._model_x_energy = float((x * x).sum())
        kf = self._kernel_correlation(self._model_xf, self._model_xf,
                                      self._model_x_energy, self._model_x_energy)
        self._model_alphaf = self._yf / (kf + cfg.regularization)

    def _features(self, frame):
        patch = _subwindow(_grayscale(frame), self._cx, self._cy, self._pw, self._ph)
        return (patch / 255.0 - 0.5) * self._hann

    def _kernel_correlation(self, xf, zf, x_energy, z_energy):
        corr = np.fft.irfft2(xf * np.conj(zf), s=(self._ph, self._pw))
        n = self._pw * self._ph
        d = np.maximum((x_energy + z_energy - 2.0 * corr) / n, 0.0)
        return np.fft.rfft2(np.exp(-d / (self.cfg.kernel_sigma**2)))

    def _response(self, frame):
        z = self._features(frame)
        zf = np.fft.rfft2(z)
        z_energy = float((z * z).sum())
        kf = self._kernel_correlation(zf, self._model_xf, z_energy, self._model_x_energy)
        return np.fft.irfft2(self._model_alphaf * kf, s=(self._ph, self._pw)), zf, z_energy

    @staticmethod
    def _psr(response, py, px, exclude=5):
        h, w = response.shape
        peak = response[py, px]
        yy = (np.arange(h)[:, None] - py + h // 2) % h - h // 2
        xx = (np.arange(w)[None, :] - px + w // 2) % w - w // 2
        side = response[(np.abs(yy) > exclude) | (np.abs(xx) > exclude)]
        std = side.std()
        if std == 0:
            return float("inf")
        return float((peak - side.mean()) / std)

    def update(self, frame):
        """Track one frame; raises LowConfidenceError without moving the
        box or touching the model when the response is too weak."""
        response, zf, z_energy = self._response(frame)
        py, px = np.unravel_index(int(np.argmax(response)), response.shape)
        psr = self._psr(response, py, px)
        self.psr = psr
        if psr < self.cfg.psr_floor:
            raise LowConfidenceError(psr)
        dy = py if py <= self._ph // 2 else py - self._ph
        dx = px if px <= self._pw // 2 else px - self._pw
        fh, fw = frame.shape[:2]
        self._cx = int(np.clip(self._cx + dx, self.bbox.w // 2, fw - 1 - self.bbox.w // 2))
        self._cy = int(np.clip(self._cy + dy, self.bbox.h // 2, fh - 1 - self.bbox.h // 2))
        self.bbox = HandRegion(
            self._cx - self.bbox.w // 2,
            self._cy - self.bbox.h // 2,
            self.bbox.w,
            self.bbox.h,
            confidence=min(1.0, psr / (2 * self.cfg.psr_floor)),
        ).clamped(frame.shape)
        # learn the new appearance at the updated position
        x = self._features(frame)
        xf = np.fft.rfft2(x)
        x_energy = float((x * x).sum())
        kf = self._kernel_correlation(xf, xf, x_energy, x_energy)
        alphaf = self._yf / (kf + self.cfg.regularization)
        lr = self.cfg.model_learning_rate
        self._model_xf = (1 - lr) * self._model_xf + lr * xf
        self._model_alphaf = (1 - lr) * self._model_alphaf + lr * alphaf
        self._model_x_energy = (1 - lr) * self._model_x_energy + lr * x_energy
        self.frames_since_init += 1
        return self.bbox


@dataclass
class FrameResult:
    frame_index: int
    hand: HandRegion | None
    pose: str
    fingertip: tuple | None  # (x, y) in frame coordinates, writing pose only
    timing: dict
    error: str | None = None

    def to_dict(self):
        return {
            "frame_index": self.frame_index,
            "hand": None if self.hand is None else {
                "x": self.hand.x, "y": self.hand.y,
                "w": self.hand.w, "h": self.hand.h,
                "confidence": self.hand.confidence,
            },
            "pose": self.pose,
            "fingertip": None if self.fingertip is None else
                {"x": self.fingertip[0], "y": self.fingertip[1]},
            "timing": self.timing,
            "error": self.error,
        }


@dataclass
class PipelineConfig:
    skin: SkinModel = field(default_factory=SkinModel)
    gmm: GmmConfig = field(default_factory=GmmConfig)
    kernel: MorphKernel = field(default_factory=MorphKernel)
    track: TrackConfig = field(default_factory=TrackConfig)
    signature: SignatureConfig = field(default_factory=SignatureConfig)
    termination: TerminationConfig = field(default_factory=TerminationConfig)
    magnification: float = DEFAULT_MAGNIFICATION
    frame_period_ms: float = 1000.0 / 30.0


class PipelineSession:
    """One tracking session: owns the tracker, background model, and the
    open trajectory. Frames must arrive sequentially."""

    def __init__(self, provider, config=None):
        self.provider = provider
        self.config = config or PipelineConfig()
        self.tracker = None
        self.gmm = None
        self.trajectory = Trajectory()
        self.completed = []
        self.reinit_frames = []
        self._frame_index = 0

    def _clear_trajectory(self):
        if len(self.trajectory.points):
            self.trajectory = Trajectory()

    def _finish_trajectory(self):
        self.trajectory.terminate()
        self.completed.append(self.trajectory)
        self.trajectory = Trajectory()

    def process(self, frame):
        cfg = self.config
        i = self._frame_index
        self._frame_index += 1
        timing = {}
        t_total = time.perf_counter()

        if self.gmm is None:
            self.gmm = GmmBackground(frame.shape[1], frame.shape[0], cfg.gmm)
        t0 = time.perf_counter()
        fg_full = self.gmm.foreground(frame)
        timing["background_ms"] = (time.perf_counter() - t0) * 1000

        # --- hand box: scheduled provider re-init, else tracker update
        t0 = time.perf_counter()
        box = None
        error = None
        scheduled = i % cfg.track.reinit_interval == 0
        if scheduled or self.tracker is None:
            box = self.provider(i, frame)
            if box is not None:
                box = box.clamped(frame.shape)
                self.tracker = KcfTracker(frame, box, cfg.track)
                self.reinit_frames.append(i)
            else:
                self.tracker = None  # suspend until the provider recovers
        else:
            try:
                box = self.tracker.update(frame)
            except LowConfidenceError as exc:
                error = str(exc)
                box = self.provider(i, frame)
                if box is not None:
                    box = box.clamped(frame.shape)
                    self.tracker = KcfTracker(frame, box, cfg.track)
                    self.reinit_frames.append(i)
                else:
                    self.tracker = None
        timing["track_ms"] = (time.perf_counter() - t0) * 1000

        if box is None:
            self._clear_trajectory()
            timing["total_ms"] = (time.perf_counter() - t_total) * 1000
            return FrameResult(i, None, INDETERMINATE, None, timing, error)

        # --- segment inside the box
        t0 = time.perf_counter()
        roi = frame[box.y : box.y + box.h, box.x : box.x + box.w]
        fg_roi = fg_full[box.y : box.y + box.h, box.x : box.x + box.w]
        try:
            mask = segment_hand(roi, cfg.skin, fg_roi, cfg.kernel)
        except EmptyMaskError as exc:
            timing["segment_ms"] = (time.perf_counter() - t0) * 1000
            self._clear_trajectory()
            timing["total_ms"] = (time.perf_counter() - t_total) * 1000
            return FrameResult(i, box, INDETERMINATE, None, timing, str(exc))
        timing["segment_ms"] = (time.perf_counter() - t0) * 1000

        # --- pose gate
        t0 = time.perf_counter()
        pose = analyze_hand(mask, cfg.magnification)
        timing["pose_ms"] = (time.perf_counter() - t0) * 1000

        fingertip = None
        if pose.verdict == WRITING:
            t0 = time.perf_counter()
            try:
                det = detect_fingertip(mask, pose.centroid.final, cfg.signature)
                fingertip = (det.position[0] + box.x, det.position[1] + box.y)
            except (DegenerateContourError, EmptyMaskError, MultipleComponentsError) as exc:
                error = str(exc)
            timing["fingertip_ms"] = (time.perf_counter() - t0) * 1000

        # --- trajectory state machine
        if pose.verdict == WRITING and fingertip is not None:
            self.trajectory.append(fingertip[0], fingertip[1], i * cfg.frame_period_ms)
            from .trajectory import check_termination

            if check_termination(self.trajectory, cfg.termination):
                self._finish_trajectory()
        else:
            self._clear_trajectory()

        timing["total_ms"] = (time.perf_counter() - t_total) * 1000
        return FrameResult(i, box, pose.verdict, fingertip, timing, error)


def load_frames(path):
    """Frames from a directory of numbered PPM files, in sorted order."""
    files = sorted(Path(path).glob("*.ppm"))
    for f in files:
        yield read_ppm(f)


def run_pipeline(frames, provider, config=None):
    """Generator of FrameResult over an ordered frame source.

    `frames` is an iterable of RGB arrays or a directory of PPM files.
    Per-frame errors are recorded in the results; the stream continues.
    """
    if isinstance(frames, (str, Path)):
        frames = load_frames(frames)
    session = PipelineSession(provider, config)
    for frame in frames:
        yield session.process(frame)
