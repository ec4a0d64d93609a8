"""Exception types shared across the pipeline."""


class AirwriteError(Exception):
    """Base class for every pipeline error."""


class ConfigError(AirwriteError):
    """Unknown or malformed configuration key/value."""


class EmptyMaskError(AirwriteError):
    """Operation requires at least one foreground pixel."""


class MultipleComponentsError(AirwriteError):
    """Mask holds more than one 8-connected foreground component."""


class DegenerateContourError(AirwriteError):
    """Contour too short, zero-perimeter, or has coincident points."""


class DimensionMismatchError(AirwriteError):
    pass


class CenterOnBackgroundError(AirwriteError):
    pass


class OddCrossingsError(AirwriteError):
    """Ring walk produced an odd transition count; finger count undefined."""


class RingDegenerateError(AirwriteError):
    pass


class NonMonotonicTimeError(AirwriteError):
    pass


class TooShortError(AirwriteError):
    pass


class DegenerateTrajectoryError(AirwriteError):
    pass


class EmptyTemplateSetError(AirwriteError):
    pass


class NoTemplatesError(AirwriteError):
    pass


class BoxOutOfFrameError(AirwriteError):
    pass


class LowConfidenceError(AirwriteError):
    """Tracker response too weak; caller should re-acquire the hand."""

    def __init__(self, psr):
        super().__init__(f"tracker confidence too low (psr={psr:.2f})")
        self.psr = psr


class AnnotationMissingError(AirwriteError):
    pass


class SpecOutOfBoundsError(AirwriteError):
    """Synthetic hand description does not fit inside the frame."""


class LengthMismatchError(AirwriteError):
    pass
