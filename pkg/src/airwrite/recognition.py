"""Pluggable character recognition over 28x28 stroke rasters.

The default recognizer is template nearest-neighbor with an RBF score:
score = exp(-||raster - template||^2 / (2 sigma^2)) on the 0-255 pixel
scale, max-pooled per label. The interface — raster in, ranked labels
out — keeps a learned model swappable without touching callers.
"""

import logging
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import glyphs
from .errors import EmptyTemplateSetError, NoTemplatesError
from .pnm import read_pgm, write_pgm
from .trajectory import rasterize

log = logging.getLogger(__name__)

LABELS = glyphs.LABELS
LABEL_INDEX = {c: i for i, c in enumerate(LABELS)}
REJECTED_COLUMN = len(LABELS)  # extra confusion-matrix column


@dataclass(frozen=True)
class RecognizerConfig:
    sigma: float = 2000.0
    reject_threshold: float = 0.05


@dataclass
class TemplateSet:
    labels: list  # label per entry
    rasters: np.ndarray  # (N, 28, 28) uint8

    def __len__(self):
        return len(self.labels)


@dataclass
class RecognitionResult:
    ranked: list  # (label, score) descending; empty when rejected
    rejected: bool

    @property
    def top(self):
        return self.ranked[0][0] if self.ranked else None


def classify(raster, templates, cfg=RecognizerConfig()):
    """Score against every template, max per label, rank descending.

    Deterministic and independent of template ordering: ties in score
    break alphabetically.
    """
    if len(templates) == 0:
        raise EmptyTemplateSetError("no templates to classify against")
    raster = np.asarray(raster, np.float64)
    flat = templates.rasters.reshape(len(templates), -1).astype(np.float64)
    d2 = ((flat - raster.reshape(-1)) ** 2).sum(axis=1)
    scores = np.exp(-d2 / (2.0 * cfg.sigma**2))
    best = {}
    for label, s in zip(templates.labels, scores):
        if s > best.get(label, -1.0):
            best[label] = float(s)
    ranked = sorted(best.items(), key=lambda kv: (-kv[1], kv[0]))
    if ranked[0][1] < cfg.reject_threshold:
        return RecognitionResult(ranked=[], rejected=True)
    return RecognitionResult(ranked=ranked, rejected=False)


_TEMPLATE_NAME = re.compile(r"^(?P<label>[0-9a-z])_(?P<index>\d+)\.pgm$")


def load_templates(path):
    """Read <label>_<index>.pgm files; malformed files are logged and
    skipped. Raises NoTemplatesError when nothing valid is found."""
    path = Path(path)
    labels = []
    rasters = []
    for entry in sorted(path.glob("*.pgm")):
        m = _TEMPLATE_NAME.match(entry.name)
        if not m:
            log.warning("skipping template with unrecognized name: %s", entry.name)
            continue
        try:
            raster = read_pgm(entry)
        except ValueError as exc:
            log.warning("skipping malformed template %s: %s", entry.name, exc)
            continue
        if raster.shape != (28, 28):
            log.warning("skipping template %s: shape %s", entry.name, raster.shape)
            continue
        labels.append(m.group("label"))
        rasters.append(raster)
    if not labels:
        raise NoTemplatesError(f"no valid templates under {path}")
    return TemplateSet(labels=labels, rasters=np.stack(rasters))


def save_templates(templates, path):
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    counter = {}
    for label, raster in zip(templates.labels, templates.rasters):
        i = counter.get(label, 0)
        counter[label] = i + 1
        write_pgm(path / f"{label}_{i}.pgm", raster)
    return path


def render_template(label, variant=0):
    """One machine-rendered exemplar, drawn with the stroke rasterizer."""
    traj = glyphs.glyph_trajectory(label, n=40, variant=variant)
    traj.terminate()
    return rasterize(traj)


_default_cache = None


def default_templates():
    """Three rendered exemplars per class (base plus two slight rotations)."""
    global _default_cache
    if _default_cache is None:
        labels = []
        rasters = []
        for label in LABELS:
            for variant in range(len(glyphs.VARIANT_ROTATIONS)):
                labels.append(label)
                rasters.append(render_template(label, variant))
        _default_cache = TemplateSet(labels=labels, rasters=np.stack(rasters))
    return _default_cache


def confusion_matrix(results):
    """counts[true][predicted-top]; rejections land in the final column.

    `results` is an iterable of (true_label, RecognitionResult).
    """
    counts = np.zeros((len(LABELS), len(LABELS) + 1), np.int64)
    for true_label, res in results:
        row = LABEL_INDEX[true_label]
        if res.rejected or not res.ranked:
            counts[row, REJECTED_COLUMN] += 1
        else:
            counts[row, LABEL_INDEX[res.ranked[0][0]]] += 1
    return counts


def accuracy(counts):
    total = counts.sum()
    if total == 0:
        return 0.0
    return float(np.trace(counts[:, : len(LABELS)])) / float(total)
