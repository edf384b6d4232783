"""Produce the per-image emotion sidecar CSV for an image folder.

The sidecar interchange contract: UTF-8 CSV, LF line endings, header
`image_id,amusement,awe,contentment,excitement,anger,disgust,fear,sadness,
something_else`, one row per decodable image, probabilities summing to 1,
image_id equal to the image filename stem.

The classifier is a pluggable black box named by a "module:attr" locator;
it receives an (H, W, 3) uint8 RGB array and returns 9 non-negative
scores in header order. Stub mode needs no model: each row is derived
deterministically from a hash of the image_id alone, which makes fixture
corpora reproducible byte-for-byte.
"""

from __future__ import annotations

import hashlib
import importlib
import logging
import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import (
    ConfigError,
    DecodeFailure,
    EmptyCorpus,
    InvalidScores,
    MissingInput,
    ModelLoadFailure,
)

EMOTION_LABELS: tuple[str, ...] = (
    "amusement",
    "awe",
    "contentment",
    "excitement",
    "anger",
    "disgust",
    "fear",
    "sadness",
    "something_else",
)
SIDECAR_HEADER = "image_id," + ",".join(EMOTION_LABELS)

RASTER_EXTENSIONS = frozenset(
    {".png", ".jpg", ".jpeg", ".bmp", ".gif", ".tif", ".tiff", ".webp"}
)

MODES = ("stub", "model")
_DECODE_WORKERS = 8

log = logging.getLogger("emotion_sidecar")


@dataclass(frozen=True)
class AdapterConfig:
    input_dir: Path
    output_path: Path
    mode: str = "stub"
    model_locator: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "input_dir", Path(self.input_dir))
        object.__setattr__(self, "output_path", Path(self.output_path))
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode == "stub" and self.model_locator is not None:
            raise ConfigError("stub mode takes no model locator")
        if self.mode == "model" and not self.model_locator:
            raise ConfigError("model mode requires a model locator")


def stub_scores(image_id: str) -> list[float]:
    """Deterministic pseudo-scores from a hash of the image id alone."""
    digest = hashlib.sha256(image_id.encode("utf-8")).digest()
    return [float(digest[i] + 1) for i in range(len(EMOTION_LABELS))]


def load_model(locator: str) -> Callable[[np.ndarray], Sequence[float]]:
    """Resolve a "module:attr" locator to the classifier callable."""
    module_name, sep, attr = locator.partition(":")
    if not sep or not module_name or not attr:
        raise ModelLoadFailure(f"locator must look like module:attr, got {locator!r}")
    try:
        module = importlib.import_module(module_name)
    except ImportError as exc:
        raise ModelLoadFailure(f"cannot import {module_name!r}: {exc}") from None
    try:
        model = getattr(module, attr)
    except AttributeError:
        raise ModelLoadFailure(f"{module_name!r} has no attribute {attr!r}") from None
    if not callable(model):
        raise ModelLoadFailure(f"{locator!r} is not callable")
    return model


def _decode(path: Path) -> np.ndarray:
    try:
        with Image.open(path) as im:
            return np.asarray(im.convert("RGB"))
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise DecodeFailure(f"{path.name}: {exc}") from None


def _validate_scores(image_id: str, scores: Sequence[float]) -> list[float]:
    values = [float(s) for s in scores]
    if len(values) != len(EMOTION_LABELS):
        raise InvalidScores(f"{image_id}: expected 9 scores, got {len(values)}")
    if any(not math.isfinite(v) or v < 0.0 for v in values):
        raise InvalidScores(f"{image_id}: scores must be finite and non-negative")
    total = sum(values)
    if total <= 0.0:
        raise InvalidScores(f"{image_id}: scores sum to {total}, cannot normalize")
    return [v / total for v in values]


def infer_corpus(cfg: AdapterConfig) -> Path:
    """Write one sidecar row per decodable image; return the output path.

    Images that fail to decode are skipped and logged. The file is
    written to a temp name and renamed into place, so readers never see
    a partial sidecar.
    """
    if not cfg.input_dir.is_dir():
        raise MissingInput(f"input directory not found: {cfg.input_dir}")

    candidates: list[Path] = []
    seen_stems: set[str] = set()
    for entry in sorted(cfg.input_dir.iterdir(), key=lambda p: p.name):
        if entry.is_dir() or entry.suffix.lower() not in RASTER_EXTENSIONS:
            continue
        if entry.stem in seen_stems:
            log.warning("skipped %s: duplicate image id", entry.name)
            continue
        seen_stems.add(entry.stem)
        candidates.append(entry)

    model = load_model(cfg.model_locator) if cfg.mode == "model" else None

    decoded: list[tuple[str, np.ndarray]] = []
    with ThreadPoolExecutor(max_workers=_DECODE_WORKERS) as pool:
        futures = [(p, pool.submit(_decode, p)) for p in candidates]
        for path, future in futures:
            try:
                decoded.append((path.stem, future.result()))
            except DecodeFailure as exc:
                log.warning("skipped %s", exc)
    if not decoded:
        raise EmptyCorpus(f"no decodable images in {cfg.input_dir}")

    rows = [SIDECAR_HEADER]
    for image_id, rgb in sorted(decoded, key=lambda pair: pair[0]):
        scores = model(rgb) if model is not None else stub_scores(image_id)
        probs = _validate_scores(image_id, scores)
        rows.append(",".join([image_id] + [repr(p) for p in probs]))

    cfg.output_path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(
        dir=cfg.output_path.parent, prefix=".emotions-", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write("\n".join(rows) + "\n")
        os.replace(tmp_name, cfg.output_path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return cfg.output_path
