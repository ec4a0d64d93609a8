"""Air-writing recognition pipeline.

Pixel kernels, hand segmentation, writing-pose detection, fingertip
localization via a distance-weighted curvature-entropy signature,
correlation-filter hand tracking, velocity-delimited trajectory capture,
and template character recognition.
"""

__version__ = "0.1.0"
