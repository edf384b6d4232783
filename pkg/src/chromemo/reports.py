"""CSV and JSON report emission.

Every writer here is deterministic: fixed column orders, fixed row
orders, floats rendered with repr-quality %.12g, LF line endings, and no
timestamps. Rerunning a pipeline on identical inputs must reproduce each
file byte for byte, so nothing environment-dependent may leak in.

Undefined statistics (correlations on zero-variance pairs) serialize as
empty cells, never as 0.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import IO, Iterable, Mapping, Sequence

from .colors import ALL_BIN_NAMES
from .emotions import EMOTION_LABELS
from .fusion import CorrelationMatrix, EmotionRatioCurve, HarmonyEmotionTable
from .harmony import HarmonyType
from .mining import COLOR_PREFIX, EMOTION_PREFIX, AssociationRule

FLOAT_FMT = ".12g"


def fmt(value: float | None) -> str:
    """Fixed float rendering; None becomes an empty cell."""
    if value is None:
        return ""
    return format(float(value), FLOAT_FMT)


def _writer(fh: IO[str]):
    return csv.writer(fh, lineterminator="\n")


def write_palette_csv(
    path: Path,
    rows: Sequence[tuple[str, int, float, float, int]],
) -> None:
    """rows: (color, pixel_count, pixel_share, mean_image_share, images_present)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["color", "pixel_count", "pixel_share", "mean_image_share", "images_present"])
        for color, count, share, mean_share, present in rows:
            w.writerow([color, count, fmt(share), fmt(mean_share), present])


def write_harmony_frequencies_csv(
    path: Path,
    rows: Sequence[tuple[str, int, float, int, float]],
) -> None:
    """rows: (harmony, images_matched, match_rate, images_dominant, dominant_rate)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["harmony", "images_matched", "match_rate", "images_dominant", "dominant_rate"])
        for harmony, matched, match_rate, dominant, dominant_rate in rows:
            w.writerow([harmony, matched, fmt(match_rate), dominant, fmt(dominant_rate)])


def write_template_frequency_csv(
    path: Path,
    rows: Sequence[tuple[str, int, float]],
) -> None:
    """rows: (members joined by +, images, percent of family matches)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["members", "images", "percent"])
        for members, images, percent in rows:
            w.writerow([members, images, fmt(percent)])


def write_correlation_csv(path: Path, matrix: CorrelationMatrix) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["color"] + list(EMOTION_LABELS))
        for color in ALL_BIN_NAMES:
            w.writerow([color] + [fmt(matrix.get(color, e)) for e in EMOTION_LABELS])


def write_harmony_emotion_csv(path: Path, table: HarmonyEmotionTable) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["harmony", "emotion", "conditional_mean", "point_biserial", "images_present"])
        for harmony in HarmonyType:
            row = table.rows[harmony]
            for label in EMOTION_LABELS:
                w.writerow(
                    [
                        harmony.value,
                        label,
                        fmt(row.means[label]),
                        fmt(row.point_biserial[label]),
                        row.n_present,
                    ]
                )


def write_emotion_ratio_csv(path: Path, curve: EmotionRatioCurve) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["bin_index", "bin_start", "bin_end", "emotion", "ratio", "occupied"])
        edges = curve.bin_edges
        for b in range(len(edges) - 1):
            occupied = int(bool(curve.occupied[b]))
            for row, label in enumerate(EMOTION_LABELS):
                w.writerow(
                    [b, fmt(edges[b]), fmt(edges[b + 1]), label, fmt(curve.ratios[row, b]), occupied]
                )


def write_density_csv(path: Path, hist, density) -> None:
    """Histogram rows then KDE rows, both as long-form plot data."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["series", "x_start", "x_end", "value"])
        for b in range(len(hist.counts)):
            w.writerow(["histogram", fmt(hist.bin_edges[b]), fmt(hist.bin_edges[b + 1]), int(hist.counts[b])])
        for x, d in zip(density.eval_points, density.densities):
            w.writerow(["kde", fmt(x), fmt(x), fmt(d)])


def strip_item_prefix(item: str) -> str:
    for prefix in (COLOR_PREFIX, EMOTION_PREFIX):
        if item.startswith(prefix):
            return item[len(prefix):]
    return item


def write_rules_csv(path: Path, rules: Sequence[AssociationRule]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["antecedent", "consequent", "support", "confidence", "lift"])
        for r in rules:
            consequent = "+".join(sorted(strip_item_prefix(i) for i in r.consequent))
            w.writerow(
                [strip_item_prefix(r.antecedent), consequent, fmt(r.support), fmt(r.confidence), fmt(r.lift)]
            )


def write_run_json(path: Path, metadata: Mapping) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(json.dumps(metadata, sort_keys=True, indent=2))
        fh.write("\n")


def template_label(members: Iterable[int], order: Sequence[int] | None = None) -> str:
    """Canonical +-joined member names for a harmony template row."""
    idx = list(order) if order is not None else sorted(members)
    return "+".join(ALL_BIN_NAMES[i] for i in idx)
