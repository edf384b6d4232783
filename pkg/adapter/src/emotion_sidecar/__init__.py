"""Emotion sidecar production for image corpora.

infer_corpus runs a pluggable 9-way emotion classifier (or a
deterministic stub) over a folder of images and writes the sidecar CSV
that downstream color-emotion analytics ingest.
"""

from .adapter import (
    EMOTION_LABELS,
    MODES,
    RASTER_EXTENSIONS,
    SIDECAR_HEADER,
    AdapterConfig,
    infer_corpus,
    load_model,
    stub_scores,
)
from .errors import (
    AdapterError,
    ConfigError,
    DecodeFailure,
    EmptyCorpus,
    InvalidScores,
    MissingInput,
    ModelLoadFailure,
)

__version__ = "0.1.0"

__all__ = [
    "AdapterConfig",
    "AdapterError",
    "ConfigError",
    "DecodeFailure",
    "EMOTION_LABELS",
    "EmptyCorpus",
    "InvalidScores",
    "MODES",
    "MissingInput",
    "ModelLoadFailure",
    "RASTER_EXTENSIONS",
    "SIDECAR_HEADER",
    "infer_corpus",
    "load_model",
    "stub_scores",
    "__version__",
]
