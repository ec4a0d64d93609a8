"""Layered configuration: defaults < key=value config file < CLI flags.

Every tunable is addressable by a dotted key (e.g. fingertip.gamma).
Unknown keys are rejected at parse time.
"""

from dataclasses import dataclass, field

from .errors import ConfigError
from .fingertip import SignatureConfig
from .handpose import DEFAULT_MAGNIFICATION
from .imgproc import MorphKernel
from .recognition import RecognizerConfig
from .segmentation import GmmConfig, SkinModel
from .tracking import PipelineConfig, TrackConfig
from .trajectory import SmoothingConfig, TerminationConfig

DEFAULTS = {
    "segmentation.cb_min": 77.0,
    "segmentation.cb_max": 127.0,
    "segmentation.cr_min": 133.0,
    "segmentation.cr_max": 173.0,
    "segmentation.kernel_radius": 3,
    "segmentation.gmm_components": 5,
    "segmentation.gmm_learning_rate": 0.005,
    "segmentation.gmm_variance_threshold": 2.5,
    "segmentation.gmm_background_ratio": 0.9,
    "segmentation.gmm_warmup_frames": 10,
    "handpose.magnification": DEFAULT_MAGNIFICATION,
    "fingertip.samples": 128,
    "fingertip.gamma": 2.5,
    "tracking.reinit_interval": 50,
    "tracking.padding": 1.5,
    "tracking.kernel_sigma": 0.5,
    "tracking.regularization": 1e-4,
    "tracking.model_learning_rate": 0.02,
    "tracking.psr_floor": 5.0,
    "tracking.frame_period_ms": 1000.0 / 30.0,
    "trajectory.tau": 40.0,
    "trajectory.window": 5,
    "trajectory.min_points": 10,
    "trajectory.lambda": 5.0,
    "trajectory.epsilon": 0.4,
    "trajectory.max_iterations": 50,
    "recognition.sigma": 2000.0,
    "recognition.reject_threshold": 0.05,
    "service.port": 8790,
}


@dataclass
class Config:
    values: dict = field(default_factory=lambda: dict(DEFAULTS))

    def __getitem__(self, key):
        return self.values[key]

    def set(self, key, raw):
        if key not in DEFAULTS:
            raise ConfigError(f"unknown configuration key: {key}")
        kind = type(DEFAULTS[key])
        try:
            self.values[key] = kind(raw)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {key}: {raw!r} ({exc})") from exc

    def skin_model(self):
        v = self.values
        return SkinModel(
            cb_min=v["segmentation.cb_min"],
            cb_max=v["segmentation.cb_max"],
            cr_min=v["segmentation.cr_min"],
            cr_max=v["segmentation.cr_max"],
        )

    def morph_kernel(self):
        return MorphKernel(radius=self.values["segmentation.kernel_radius"])

    def gmm_config(self):
        v = self.values
        return GmmConfig(
            max_components=v["segmentation.gmm_components"],
            learning_rate=v["segmentation.gmm_learning_rate"],
            variance_threshold=v["segmentation.gmm_variance_threshold"],
            background_ratio=v["segmentation.gmm_background_ratio"],
            warmup_frames=v["segmentation.gmm_warmup_frames"],
        )

    def signature_config(self):
        return SignatureConfig(
            sample_count=self.values["fingertip.samples"],
            gamma=self.values["fingertip.gamma"],
        )

    def track_config(self):
        v = self.values
        return TrackConfig(
            reinit_interval=v["tracking.reinit_interval"],
            padding=v["tracking.padding"],
            kernel_sigma=v["tracking.kernel_sigma"],
            regularization=v["tracking.regularization"],
            model_learning_rate=v["tracking.model_learning_rate"],
            psr_floor=v["tracking.psr_floor"],
        )

    def termination_config(self):
        v = self.values
        return TerminationConfig(
            tau=v["trajectory.tau"],
            window=v["trajectory.window"],
            min_points=v["trajectory.min_points"],
        )

    def smoothing_config(self):
        v = self.values
        return SmoothingConfig(
            lam=v["trajectory.lambda"],
            epsilon=v["trajectory.epsilon"],
            max_iterations=v["trajectory.max_iterations"],
        )

    def recognizer_config(self):
        return RecognizerConfig(
            sigma=self.values["recognition.sigma"],
            reject_threshold=self.values["recognition.reject_threshold"],
        )

    def pipeline_config(self):
        return PipelineConfig(
            skin=self.skin_model(),
            gmm=self.gmm_config(),
            kernel=self.morph_kernel(),
            track=self.track_config(),
            signature=self.signature_config(),
            termination=self.termination_config(),
            magnification=self.values["handpose.magnification"],
            frame_period_ms=self.values["tracking.frame_period_ms"],
        )


def parse_config_file(path):
    """key=value lines; blank lines and #-comments ignored."""
    out = {}
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def load_config(path=None, overrides=None):
    """Merge defaults, optional config file, and explicit overrides."""
    cfg = Config()
    if path is not None:
        for key, value in parse_config_file(path).items():
            cfg.set(key, value)
    for key, value in (overrides or {}).items():
        cfg.set(key, value)
    return cfg
