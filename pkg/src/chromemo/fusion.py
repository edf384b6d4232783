"""Cross-image statistics joining color features to emotion vectors.

All three operations share one join contract: inputs are per-image
mappings keyed by image_id, the computation runs on the id intersection
(at least 3 images), and ids present on only one side are reported as
orphans rather than failing the run.

Correlations are Pearson r. Entries where either variable is constant
across images are undefined and stay None; they are never coerced to 0,
because a monochrome corpus would otherwise fabricate zero correlations
for every absent color.

Aggregation iterates images in sorted image_id order and accumulates
with compensated summation, so results are bit-identical across reruns
and worker counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .colors import ALL_BIN_NAMES, QuantizedPalette
from .density import ChannelHistogram
from .emotions import EMOTION_LABELS, EmotionVector
from .errors import InsufficientData
from .harmony import HarmonyInstance, HarmonyType

MIN_JOINED_IMAGES = 3


@dataclass(frozen=True)
class JoinResult:
    """Intersection of two id sets plus the orphans on each side."""

    matched: tuple[str, ...]
    left_only: tuple[str, ...]
    right_only: tuple[str, ...]


def join_ids(
    left: Sequence[str] | frozenset[str] | set[str],
    right: Sequence[str] | frozenset[str] | set[str],
    minimum: int = MIN_JOINED_IMAGES,
) -> JoinResult:
    left_set, right_set = set(left), set(right)
    matched = tuple(sorted(left_set & right_set))
    if len(matched) < minimum:
        raise InsufficientData(
            f"need at least {minimum} joined images, got {len(matched)}"
        )
    return JoinResult(
        matched,
        tuple(sorted(left_set - right_set)),
        tuple(sorted(right_set - left_set)),
    )


def pearson(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Pearson r, or None when either variable has zero variance."""
    if len(x) != len(y):
        raise ValueError("paired samples must have equal length")
    n = len(x)
    if n < 2:
        return None
    mx = math.fsum(x) / n
    my = math.fsum(y) / n
    sxx = math.fsum((a - mx) ** 2 for a in x)
    syy = math.fsum((b - my) ** 2 for b in y)
    if sxx == 0.0 or syy == 0.0:
        return None
    r = math.fsum((a - mx) * (b - my) for a, b in zip(x, y)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


# ---------------------------------------------------------------------------
# color-emotion correlation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorrelationMatrix:
    """Pearson r between each color bin's share and each emotion's prob.

    values[color_name][emotion] is r or None (undefined). n is the joined
    image count; orphan ids record join mismatches.
    """

    values: dict[str, dict[str, float | None]]
    n: int
    unmatched_palettes: tuple[str, ...] = ()
    unmatched_emotions: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if set(self.values) != set(ALL_BIN_NAMES):
            raise ValueError("rows must cover all 15 color bins")
        for row in self.values.values():
            if set(row) != set(EMOTION_LABELS):
                raise ValueError("columns must cover all 9 emotions")
            for r in row.values():
                if r is not None and not -1.0 <= r <= 1.0:
                    raise ValueError(f"correlation {r} outside [-1, 1]")

    def get(self, color: str, emotion: str) -> float | None:
        return self.values[color][emotion]


def color_emotion_correlation(
    palettes: Mapping[str, QuantizedPalette],
    emotions: Mapping[str, EmotionVector],
) -> CorrelationMatrix:
    """Correlate per-image color shares with per-image emotion probs."""
    join = join_ids(palettes.keys(), emotions.keys())
    ids = join.matched
    shares = {
        name: [float(palettes[i].shares[k]) for i in ids]
        for k, name in enumerate(ALL_BIN_NAMES)
    }
    probs = {label: [emotions[i].probs[label] for i in ids] for label in EMOTION_LABELS}
    values = {
        name: {label: pearson(shares[name], probs[label]) for label in EMOTION_LABELS}
        for name in ALL_BIN_NAMES
    }
    return CorrelationMatrix(values, len(ids), join.left_only, join.right_only)


# ---------------------------------------------------------------------------
# harmony-emotion association
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HarmonyEmotionRow:
    """Emotion profile of images exhibiting one harmony type.

    means holds each emotion's conditional mean probability, normalized
    so the 9 entries sum to 1; point_biserial holds the correlation
    between the presence indicator and each emotion's probability. A row
    with zero matching images is flagged empty (all-zero means).
    """

    harmony_type: HarmonyType
    n_present: int
    means: dict[str, float]
    point_biserial: dict[str, float | None]
    empty: bool = False

    def __post_init__(self) -> None:
        if set(self.means) != set(EMOTION_LABELS) or set(self.point_biserial) != set(EMOTION_LABELS):
            raise ValueError("rows must cover all 9 emotions")
        total = sum(self.means.values())
        if self.empty:
            if total != 0.0:
                raise ValueError("empty rows must have all-zero means")
        elif abs(total - 1.0) > 1e-6:
            raise ValueError(f"means sum to {total}, expected 1")


@dataclass(frozen=True)
class HarmonyEmotionTable:
    rows: dict[HarmonyType, HarmonyEmotionRow]
    n: int

    def __post_init__(self) -> None:
        if set(self.rows) != set(HarmonyType):
            raise ValueError("table must cover every harmony type")


def harmony_emotion_table(
    instances: Mapping[str, Sequence[HarmonyInstance]],
    emotions: Mapping[str, EmotionVector],
) -> HarmonyEmotionTable:
    """Conditional emotion means and point-biserial r per harmony type.

    Presence is multi-label: an image counts for every harmony type it
    matched, not only its dominant one.
    """
    join = join_ids(instances.keys(), emotions.keys())
    ids = join.matched
    present: dict[HarmonyType, list[float]] = {
        h: [0.0] * len(ids) for h in HarmonyType
    }
    for idx, image_id in enumerate(ids):
        for inst in instances[image_id]:
            present[inst.harmony_type][idx] = 1.0

    probs = {label: [emotions[i].probs[label] for i in ids] for label in EMOTION_LABELS}

    rows: dict[HarmonyType, HarmonyEmotionRow] = {}
    for h in HarmonyType:
        indicator = present[h]
        n_present = int(sum(indicator))
        biserial = {label: pearson(indicator, probs[label]) for label in EMOTION_LABELS}
        if n_present == 0:
            rows[h] = HarmonyEmotionRow(
                h, 0, {l: 0.0 for l in EMOTION_LABELS}, biserial, empty=True
            )
            continue
        means = {
            label: math.fsum(p for p, flag in zip(probs[label], indicator) if flag)
            / n_present
            for label in EMOTION_LABELS
        }
        total = math.fsum(means.values())
        means = {label: m / total for label, m in means.items()}
        rows[h] = HarmonyEmotionRow(h, n_present, means, biserial)
    return HarmonyEmotionTable(rows, len(ids))


# ---------------------------------------------------------------------------
# emotion-ratio curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmotionRatioCurve:
    """Per-bin share of each emotion's probability-weighted pixel mass.

    ratios has shape (9, bins) in EMOTION_LABELS row order. Bins that no
    image touches are all-zero with occupied False; occupied bins sum to
    1 over the 9 emotions.
    """

    channel: str
    bin_edges: np.ndarray = field(repr=False)
    ratios: np.ndarray = field(repr=False)
    occupied: np.ndarray = field(repr=False)
    n: int = 0

    def __post_init__(self) -> None:
        edges = np.asarray(self.bin_edges, dtype=float)
        ratios = np.asarray(self.ratios, dtype=float)
        occupied = np.asarray(self.occupied, dtype=bool)
        object.__setattr__(self, "bin_edges", edges)
        object.__setattr__(self, "ratios", ratios)
        object.__setattr__(self, "occupied", occupied)
        bins = len(edges) - 1
        if ratios.shape != (len(EMOTION_LABELS), bins) or occupied.shape != (bins,):
            raise ValueError("ratio matrix shape mismatch")
        if (ratios < 0).any():
            raise ValueError("ratios must be non-negative")
        sums = ratios.sum(axis=0)
        if occupied.any() and np.abs(sums[occupied] - 1.0).max() > 1e-6:
            raise ValueError("occupied bins must sum to 1 over emotions")
        if (~occupied).any() and sums[~occupied].max(initial=0.0) != 0.0:
            raise ValueError("unoccupied bins must be all-zero")


def emotion_ratio_curves(
    histograms: Mapping[str, Mapping[str, ChannelHistogram]],
    emotions: Mapping[str, EmotionVector],
) -> dict[str, EmotionRatioCurve]:
    """Probability-weighted bin occupancy ratios per channel.

    For each channel bin b and emotion e the ratio is
    sum_img(prob_e * mass_img(b)) / sum_over_emotions(same), where
    mass_img is the image's unit-normalized histogram.
    """
    join = join_ids(histograms.keys(), emotions.keys())
    ids = join.matched
    channels = sorted({c for i in ids for c in histograms[i]})
    out: dict[str, EmotionRatioCurve] = {}
    for channel in channels:
        edges = histograms[ids[0]][channel].bin_edges
        bins = len(edges) - 1
        numer = np.zeros((len(EMOTION_LABELS), bins))
        for image_id in ids:
            hist = histograms[image_id][channel]
            if not np.array_equal(hist.bin_edges, edges):
                raise ValueError(f"{channel} histograms must share bin edges")
            mass = hist.counts / hist.total
            vec = emotions[image_id]
            for row, label in enumerate(EMOTION_LABELS):
                numer[row] += vec.probs[label] * mass
        denom = numer.sum(axis=0)
        occupied = denom > 0
        ratios = np.zeros_like(numer)
        np.divide(numer, denom[None, :], out=ratios, where=occupied[None, :])
        out[channel] = EmotionRatioCurve(channel, edges, ratios, occupied, len(ids))
    return out
