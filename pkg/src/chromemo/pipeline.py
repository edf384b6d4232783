"""End-to-end corpus analysis: discover, decode, analyze, join, report.

Per-image analysis runs on a bounded thread pool (decoding and numpy
conversion release the GIL). Every aggregation step iterates records in
sorted image_id order and merges with associative operations, so report
bytes are independent of worker count and completion order.

The emotion sidecar is optional. Without it the run degrades to the
color-only reports and run.json marks the fusion and mining sections
absent. With a sidecar that joins fewer than 3 images, the color-side
reports are still written before the join failure surfaces.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from PIL import Image, UnidentifiedImageError

from . import reports
from .colors import (
    ALL_BIN_NAMES,
    AchromaticThresholds,
    QuantizedPalette,
    SamplingConfig,
    quantize,
    rgb_to_hsl_array,
    sample_pixels,
)
from .density import (
    CHANNELS,
    DEFAULT_BINS,
    ChannelHistogram,
    DensityEstimate,
    histogram,
    kde,
)
from .emotions import EmotionVector, parse_sidecar
from .errors import (
    ConfigError,
    DecodeFailure,
    EmptyCorpus,
    InsufficientData,
    JoinFailure,
    MissingDirectory,
)
from .fusion import (
    CorrelationMatrix,
    EmotionRatioCurve,
    HarmonyEmotionTable,
    color_emotion_correlation,
    emotion_ratio_curves,
    harmony_emotion_table,
    join_ids,
)
from .harmony import (
    TEMPLATES,
    HarmonyInstance,
    HarmonyType,
    PresenceConfig,
    detect_harmonies,
    dominant_harmony,
    present_hues,
)
from .mining import (
    DEFAULT_MAX_CONSEQUENT,
    AssociationRule,
    build_transactions,
    filter_lift,
    mine_rules,
)

RASTER_EXTENSIONS: frozenset[str] = frozenset(
    {".png", ".jpg", ".jpeg", ".bmp", ".gif", ".tif", ".tiff", ".webp"}
)

# pixel budget for the corpus-pooled KDE; pooled values beyond it are
# thinned by a uniform stride, mirroring the per-image sampling budget
DENSITY_PIXEL_BUDGET = 30_000

CHANNEL_SUFFIX = {"hue": "h", "saturation": "s", "lightness": "l"}

REPORT_FILES: tuple[str, ...] = (
    "palette.csv",
    "harmony_frequencies.csv",
    "analogous.csv",
    "complementary.csv",
    "density_h.csv",
    "density_s.csv",
    "density_l.csv",
    "correlation_matrix.csv",
    "harmony_emotion.csv",
    "emotion_ratio_h.csv",
    "emotion_ratio_s.csv",
    "emotion_ratio_l.csv",
    "rules.csv",
    "run.json",
)

COLOR_SECTIONS = ("palette", "harmony", "density")
FUSION_SECTIONS = ("correlation", "harmony_emotion", "emotion_ratio", "rules")


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs; validated against documented domains."""

    input_dir: Path
    output_dir: Path
    sidecar_path: Path | None = None
    bins: int | None = None
    bandwidth: float | str = "auto"
    color_presence_threshold: float = 0.05
    emotion_threshold: float = 0.25
    s_min: float = 0.08
    l_black: float = 0.10
    l_white: float = 0.92
    min_support: float = 0.05
    min_confidence: float = 0.3
    min_lift: float = 1.0
    max_consequent: int = DEFAULT_MAX_CONSEQUENT
    max_pixels: int = 10_000
    workers: int = 4

    def __post_init__(self) -> None:
        object.__setattr__(self, "input_dir", Path(self.input_dir))
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        if self.sidecar_path is not None:
            object.__setattr__(self, "sidecar_path", Path(self.sidecar_path))
        try:
            if self.bins is not None and self.bins < 1:
                raise ValueError("bins must be >= 1")
            if isinstance(self.bandwidth, str):
                if self.bandwidth != "auto":
                    raise ValueError("bandwidth must be 'auto' or a positive number")
            elif self.bandwidth <= 0:
                raise ValueError("bandwidth must be positive")
            if not 0.0 < self.color_presence_threshold < 1.0:
                raise ValueError("color-presence threshold must be in (0, 1)")
            if not 0.0 < self.emotion_threshold < 1.0:
                raise ValueError("emotion threshold must be in (0, 1)")
            AchromaticThresholds(self.s_min, self.l_black, self.l_white)
            if not 0.0 < self.min_support <= 1.0:
                raise ValueError("min-support must be in (0, 1]")
            if not 0.0 < self.min_confidence <= 1.0:
                raise ValueError("min-confidence must be in (0, 1]")
            if self.min_lift < 0:
                raise ValueError("min-lift must be >= 0")
            if self.max_consequent < 1:
                raise ValueError("max-consequent must be >= 1")
            if self.max_pixels < 1:
                raise ValueError("max-pixels must be >= 1")
            if self.workers < 1:
                raise ValueError("workers must be >= 1")
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def bins_for(self, channel: str) -> int:
        return self.bins if self.bins is not None else DEFAULT_BINS[channel]

    def thresholds(self) -> AchromaticThresholds:
        return AchromaticThresholds(self.s_min, self.l_black, self.l_white)

    def analysis_snapshot(self) -> dict:
        """Config echo for run.json: analysis parameters only.

        Execution context (paths, worker count) is excluded on purpose,
        so reports from different worker counts or directories stay
        byte-identical.
        """
        return {
            "bandwidth": self.bandwidth if isinstance(self.bandwidth, str) else float(self.bandwidth),
            "bins_hue": self.bins_for("hue"),
            "bins_saturation": self.bins_for("saturation"),
            "bins_lightness": self.bins_for("lightness"),
            "color_presence_threshold": self.color_presence_threshold,
            "emotion_threshold": self.emotion_threshold,
            "s_min": self.s_min,
            "l_black": self.l_black,
            "l_white": self.l_white,
            "min_support": self.min_support,
            "min_confidence": self.min_confidence,
            "min_lift": self.min_lift,
            "max_consequent": self.max_consequent,
            "max_pixels": self.max_pixels,
        }


@dataclass(frozen=True)
class SkipRecord:
    filename: str
    reason: str


@dataclass(frozen=True)
class CorpusListing:
    images: tuple[Path, ...]
    skipped: tuple[SkipRecord, ...]


@dataclass(frozen=True)
class PerImageRecord:
    image_id: str
    palette: QuantizedPalette
    instances: tuple[HarmonyInstance, ...]
    dominant: HarmonyInstance | None
    histograms: Mapping[str, ChannelHistogram]
    hsl: np.ndarray = field(repr=False)
    emotion: EmotionVector | None = None


@dataclass(frozen=True)
class CorpusReport:
    records: tuple[PerImageRecord, ...]
    skipped: tuple[SkipRecord, ...]
    discovered: int
    correlation: CorrelationMatrix | None
    harmony_emotion: HarmonyEmotionTable | None
    ratio_curves: Mapping[str, EmotionRatioCurve] | None
    rules: tuple[AssociationRule, ...] | None
    pooled_histograms: Mapping[str, ChannelHistogram]
    pooled_densities: Mapping[str, DensityEstimate]
    metadata: dict
    output_dir: Path


def discover_corpus(input_dir: Path) -> CorpusListing:
    """Recognized raster files under input_dir, sorted by name."""
    input_dir = Path(input_dir)
    if not input_dir.is_dir():
        raise MissingDirectory(f"input directory not found: {input_dir}")
    images: list[Path] = []
    skipped: list[SkipRecord] = []
    for entry in sorted(input_dir.iterdir(), key=lambda p: p.name):
        if entry.is_dir():
            continue
        if entry.suffix.lower() in RASTER_EXTENSIONS:
            images.append(entry)
        else:
            skipped.append(SkipRecord(entry.name, "unrecognized extension"))
    if not images:
        raise EmptyCorpus(f"no raster images in {input_dir}")
    return CorpusListing(tuple(images), tuple(skipped))


def analyze_image(path: Path, cfg: RunConfig) -> PerImageRecord:
    """Sample, convert, quantize, and summarize a single image."""
    try:
        with Image.open(path) as im:
            rgb = np.asarray(im.convert("RGB"))
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise DecodeFailure(f"{path.name}: {exc}") from None
    pixels = sample_pixels(rgb, SamplingConfig(cfg.max_pixels))
    hsl = rgb_to_hsl_array(pixels)
    palette = quantize(hsl, cfg.thresholds())
    hues = present_hues(palette, PresenceConfig(cfg.color_presence_threshold))
    instances = tuple(detect_harmonies(hues))
    dominant = dominant_harmony(list(instances), palette) if instances else None
    hists = {
        channel: histogram(hsl[:, i], channel, cfg.bins_for(channel))
        for i, channel in enumerate(CHANNELS)
    }
    return PerImageRecord(path.stem, palette, instances, dominant, hists, hsl)


def _pooled_values(records: Sequence[PerImageRecord], column: int) -> np.ndarray:
    pooled = np.concatenate([r.hsl[:, column] for r in records])
    if pooled.size > DENSITY_PIXEL_BUDGET:
        stride = -(-pooled.size // DENSITY_PIXEL_BUDGET)
        pooled = pooled[::stride]
    return pooled


def _palette_rows(records: Sequence[PerImageRecord], cfg: RunConfig):
    total_pixels = sum(r.palette.pixel_count for r in records)
    rows = []
    for k, color in enumerate(ALL_BIN_NAMES):
        count = sum(
            int(round(float(r.palette.shares[k]) * r.palette.pixel_count)) for r in records
        )
        mean_share = math.fsum(float(r.palette.shares[k]) for r in records) / len(records)
        present = sum(
            1 for r in records if r.palette.shares[k] >= cfg.color_presence_threshold
        )
        rows.append((color, count, count / total_pixels, mean_share, present))
    return rows


def _harmony_rows(records: Sequence[PerImageRecord]):
    n = len(records)
    rows = []
    for harmony in HarmonyType:
        matched = sum(
            1 for r in records if any(i.harmony_type is harmony for i in r.instances)
        )
        dominant = sum(
            1 for r in records if r.dominant is not None and r.dominant.harmony_type is harmony
        )
        rows.append((harmony.value, matched, matched / n, dominant, dominant / n))
    return rows


def _template_rows(records: Sequence[PerImageRecord], harmony: HarmonyType):
    counts: dict[frozenset[int], int] = {m: 0 for m in TEMPLATES[harmony]}
    for r in records:
        for inst in r.instances:
            if inst.harmony_type is harmony:
                counts[inst.members] += 1
    total = sum(counts.values())
    rows = []
    for members, images in counts.items():
        if harmony is HarmonyType.ANALOGOUS:
            # list the triple in wheel-walk order starting at its anchor
            anchor = next(i for i in members if (i - 1) % 12 not in members)
            order = [anchor, (anchor + 1) % 12, (anchor + 2) % 12]
        else:
            order = sorted(members)
        label = reports.template_label(members, order)
        percent = 100.0 * images / total if total else 0.0
        rows.append((label, images, percent))
    rows.sort(key=lambda row: (-row[1], row[0]))
    return rows


def run(cfg: RunConfig) -> CorpusReport:
    """Execute the full pipeline and write every report file."""
    listing = discover_corpus(cfg.input_dir)
    skipped = list(listing.skipped)

    seen_stems: set[str] = set()
    to_analyze: list[Path] = []
    for path in listing.images:
        if path.stem in seen_stems:
            skipped.append(SkipRecord(path.name, "duplicate image id"))
            continue
        seen_stems.add(path.stem)
        to_analyze.append(path)

    records: list[PerImageRecord] = []
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        futures = [(path, pool.submit(analyze_image, path, cfg)) for path in to_analyze]
        for path, future in futures:
            try:
                records.append(future.result())
            except DecodeFailure:
                # normalized tag, not the exception text: decoder messages
                # embed absolute paths, which must not reach reports
                skipped.append(SkipRecord(path.name, "decode failure"))
    if not records:
        raise EmptyCorpus("no image in the corpus could be decoded")
    records.sort(key=lambda r: r.image_id)

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    # color-side reports (always written)
    reports.write_palette_csv(out / "palette.csv", _palette_rows(records, cfg))
    reports.write_harmony_frequencies_csv(out / "harmony_frequencies.csv", _harmony_rows(records))
    reports.write_template_frequency_csv(
        out / "analogous.csv", _template_rows(records, HarmonyType.ANALOGOUS)
    )
    reports.write_template_frequency_csv(
        out / "complementary.csv", _template_rows(records, HarmonyType.COMPLEMENTARY)
    )

    pooled_hists: dict[str, ChannelHistogram] = {}
    pooled_densities: dict[str, DensityEstimate] = {}
    for i, channel in enumerate(CHANNELS):
        merged = records[0].histograms[channel]
        for r in records[1:]:
            merged = merged.merge(r.histograms[channel])
        pooled_hists[channel] = merged
        pooled_densities[channel] = kde(_pooled_values(records, i), channel, cfg.bandwidth)
        reports.write_density_csv(
            out / f"density_{CHANNEL_SUFFIX[channel]}.csv",
            merged,
            pooled_densities[channel],
        )

    metadata: dict = {
        "config": cfg.analysis_snapshot(),
        "corpus": {
            "discovered": len(listing.images),
            "decoded": len(records),
            "skipped": [
                {"filename": s.filename, "reason": s.reason}
                for s in sorted(skipped, key=lambda s: s.filename)
            ],
        },
        "sections": {name: True for name in COLOR_SECTIONS},
    }

    if cfg.sidecar_path is None:
        for name in FUSION_SECTIONS:
            metadata["sections"][name] = False
        metadata["join"] = None
        reports.write_run_json(out / "run.json", metadata)
        return CorpusReport(
            tuple(records), tuple(skipped), len(listing.images),
            None, None, None, None, pooled_hists, pooled_densities, metadata, out,
        )

    vectors = parse_sidecar(cfg.sidecar_path)
    emotions = {v.image_id: v for v in vectors}

    try:
        join = join_ids([r.image_id for r in records], emotions.keys())
    except InsufficientData as exc:
        for name in FUSION_SECTIONS:
            metadata["sections"][name] = False
        matched = sorted({r.image_id for r in records} & emotions.keys())
        metadata["join"] = {
            "matched": len(matched),
            "palette_only": sorted({r.image_id for r in records} - emotions.keys()),
            "emotion_only": sorted(emotions.keys() - {r.image_id for r in records}),
            "failed": True,
        }
        reports.write_run_json(out / "run.json", metadata)
        raise JoinFailure(str(exc)) from None

    matched_records = [r for r in records if r.image_id in emotions]
    palettes = {r.image_id: r.palette for r in matched_records}
    instances = {r.image_id: list(r.instances) for r in matched_records}
    histograms = {r.image_id: r.histograms for r in matched_records}

    correlation = color_emotion_correlation(palettes, emotions)
    table = harmony_emotion_table(instances, emotions)
    curves = emotion_ratio_curves(histograms, emotions)

    transactions = build_transactions(
        palettes, emotions, cfg.color_presence_threshold, cfg.emotion_threshold
    )
    mined = mine_rules(transactions, cfg.min_support, cfg.min_confidence, cfg.max_consequent)
    kept = filter_lift(mined, cfg.min_lift)

    reports.write_correlation_csv(out / "correlation_matrix.csv", correlation)
    reports.write_harmony_emotion_csv(out / "harmony_emotion.csv", table)
    for channel in CHANNELS:
        reports.write_emotion_ratio_csv(
            out / f"emotion_ratio_{CHANNEL_SUFFIX[channel]}.csv", curves[channel]
        )
    reports.write_rules_csv(out / "rules.csv", kept)

    for name in FUSION_SECTIONS:
        metadata["sections"][name] = True
    metadata["join"] = {
        "matched": len(join.matched),
        "palette_only": list(join.left_only),
        "emotion_only": list(join.right_only),
        "failed": False,
    }
    metadata["rules"] = {"mined": len(mined), "kept": len(kept)}
    reports.write_run_json(out / "run.json", metadata)

    return CorpusReport(
        tuple(records), tuple(skipped), len(listing.images),
        correlation, table, curves, tuple(kept), pooled_hists, pooled_densities,
        metadata, out,
    )
