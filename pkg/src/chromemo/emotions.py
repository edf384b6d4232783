"""Per-image emotion probability vectors and their sidecar file format.

The sidecar is a UTF-8 CSV with LF line endings and the fixed header

    image_id,amusement,awe,contentment,excitement,anger,disgust,fear,sadness,something_else

one row per image, probabilities as decimal floats. image_id is the image
filename stem. Row sums within 0.01 of 1 are renormalized to exactly 1;
anything further off is rejected as corrupt.

Labels follow the ArtEmis vocabulary. Writers using near-synonyms (fun,
satisfaction, rage) must canonicalize to amusement / contentment / anger
before emitting a sidecar.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

from .errors import (
    BadNormalization,
    DuplicateImageId,
    MalformedFile,
    NegativeProbability,
    UnknownLabel,
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

POSITIVE_EMOTIONS: frozenset[str] = frozenset({"amusement", "awe", "contentment", "excitement"})
NEGATIVE_EMOTIONS: frozenset[str] = frozenset({"anger", "disgust", "fear", "sadness"})
NEUTRAL_EMOTIONS: frozenset[str] = frozenset({"something_else"})

SIDECAR_FIELDS: tuple[str, ...] = ("image_id",) + EMOTION_LABELS
SIDECAR_HEADER: str = ",".join(SIDECAR_FIELDS)

# row sums this far from 1 are classifier rounding, not corruption
SUM_TOLERANCE = 0.01


@dataclass(frozen=True)
class EmotionVector:
    """One image's probability over the 9 emotion labels; sums to 1."""

    image_id: str
    probs: dict[str, float]

    def __post_init__(self) -> None:
        if not self.image_id:
            raise ValueError("image_id must be non-empty")
        missing = set(EMOTION_LABELS) - self.probs.keys()
        extra = self.probs.keys() - set(EMOTION_LABELS)
        if extra:
            raise UnknownLabel(f"unknown emotion labels: {sorted(extra)}")
        if missing:
            raise ValueError(f"missing emotion labels: {sorted(missing)}")
        negative = {k: v for k, v in self.probs.items() if v < 0}
        if negative:
            raise NegativeProbability(f"negative probabilities: {negative}")
        total = sum(self.probs.values())
        if abs(total - 1.0) > 1e-6:
            raise ValueError(f"probabilities sum to {total}, expected 1")

    def prob(self, label: str) -> float:
        if label not in self.probs:
            raise UnknownLabel(f"unknown emotion label: {label!r}")
        return self.probs[label]

    def as_row(self) -> list[float]:
        """Probabilities in sidecar column order."""
        return [self.probs[label] for label in EMOTION_LABELS]


def _open_for_read(source: str | Path | IO[str]) -> tuple[IO[str], bool]:
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8", newline=""), True
    return source, False


def parse_sidecar(source: str | Path | IO[str]) -> list[EmotionVector]:
    """Read and validate a sidecar file (or open text stream).

    Rows whose probabilities sum to within 0.01 of 1 are renormalized to
    an exact unit sum; renormalization divides by a positive constant, so
    it preserves the argmax and the full probability ordering.
    """
    stream, owned = _open_for_read(source)
    try:
        reader = csv.reader(stream)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedFile("empty sidecar: missing header") from None
        if header != list(SIDECAR_FIELDS):
            unknown = [h for h in header if h not in SIDECAR_FIELDS]
            if unknown:
                raise UnknownLabel(f"unknown sidecar columns: {unknown}")
            raise MalformedFile(
                f"bad header: expected {SIDECAR_HEADER!r}, got {','.join(header)!r}"
            )

        vectors: list[EmotionVector] = []
        seen: set[str] = set()
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(SIDECAR_FIELDS):
                raise MalformedFile(f"line {lineno}: expected {len(SIDECAR_FIELDS)} fields, got {len(row)}")
            image_id = row[0]
            if not image_id:
                raise MalformedFile(f"line {lineno}: empty image_id")
            if image_id in seen:
                raise DuplicateImageId(f"line {lineno}: duplicate image_id {image_id!r}")
            seen.add(image_id)
            try:
                values = [float(cell) for cell in row[1:]]
            except ValueError as exc:
                raise MalformedFile(f"line {lineno}: {exc}") from None
            negative = [l for l, v in zip(EMOTION_LABELS, values) if v < 0]
            if negative:
                raise NegativeProbability(f"line {lineno}: negative probability in {negative}")
            total = sum(values)
            if abs(total - 1.0) > SUM_TOLERANCE:
                raise BadNormalization(f"line {lineno}: probabilities sum to {total:.6f}")
            values = [v / total for v in values]
            vectors.append(EmotionVector(image_id, dict(zip(EMOTION_LABELS, values))))
        return vectors
    finally:
        if owned:
            stream.close()


def write_sidecar(vectors: Iterable[EmotionVector], target: str | Path | IO[str]) -> None:
    """Serialize vectors in the sidecar format (LF endings, repr floats)."""
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="") as fh:
            write_sidecar(vectors, fh)
        return
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(SIDECAR_FIELDS)
    for v in vectors:
        writer.writerow([v.image_id] + [repr(p) for p in v.as_row()])


def sidecar_text(vectors: Iterable[EmotionVector]) -> str:
    buf = io.StringIO()
    write_sidecar(vectors, buf)
    return buf.getvalue()


def dominant_emotions(vector: EmotionVector, threshold: float = 0.25) -> frozenset[str]:
    """Labels at or above the threshold; never empty.

    When nothing clears the threshold, falls back to the argmax label,
    with probability ties going to the lexicographically first label.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must be in (0, 1)")
    chosen = frozenset(l for l in EMOTION_LABELS if vector.probs[l] >= threshold)
    if chosen:
        return chosen
    best = max(sorted(vector.probs), key=lambda l: vector.probs[l])
    return frozenset({best})
