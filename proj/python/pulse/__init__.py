"""Ridge-ratio (PULSE) multiple change-point detection.

Thin Python layer over the C++ core: `detect` and `curves` operate on any
sequence of floats, `sample_model` / `run_replications` drive the synthetic
models.
"""

from ._pulse import (
    ChangePointEstimate,
    DetectorConfig,
    PulseCurve,
    PulseError,
    Target,
    ThresholdInterval,
    __version__,
    curves,
    default_config,
    detect,
    run_replications,
    sample_model,
)

__all__ = [
    "ChangePointEstimate",
    "DetectorConfig",
    "PulseCurve",
    "PulseError",
    "Target",
    "ThresholdInterval",
    "__version__",
    "curves",
    "default_config",
    "detect",
    "run_replications",
    "sample_model",
]
