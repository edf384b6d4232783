"""Command-line entry point.

    chromemo analyze --input-dir DIR --output-dir DIR [--emotions FILE] [options]

Options may also come from a JSON config file (--config); explicit flags
win over config-file values, which win over built-in defaults.

Exit codes: 0 success, 2 configuration error (bad values, bad config
file, unreadable sidecar), 3 missing or empty corpus, 4 emotion join
failure (fewer than 3 images matched the sidecar; color-side reports are
still written).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    ChromemoError,
    ConfigError,
    EmptyCorpus,
    JoinFailure,
    MissingDirectory,
)
from .pipeline import RunConfig, run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NO_CORPUS = 3
EXIT_JOIN = 4

# config-file keys and their matching RunConfig fields
_OPTION_FIELDS = {
    "input_dir": "input_dir",
    "output_dir": "output_dir",
    "emotions": "sidecar_path",
    "bins": "bins",
    "bandwidth": "bandwidth",
    "color_presence_threshold": "color_presence_threshold",
    "emotion_threshold": "emotion_threshold",
    "s_min": "s_min",
    "l_black": "l_black",
    "l_white": "l_white",
    "min_support": "min_support",
    "min_confidence": "min_confidence",
    "min_lift": "min_lift",
    "max_consequent": "max_consequent",
    "max_pixels": "max_pixels",
    "workers": "workers",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chromemo",
        description="Color, harmony, and color-emotion analytics over an image corpus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    analyze = sub.add_parser("analyze", help="analyze a corpus and write reports")
    analyze.add_argument("--input-dir", help="directory of images to analyze")
    analyze.add_argument("--output-dir", help="directory for report files")
    analyze.add_argument("--emotions", help="emotion sidecar CSV (omit for color-only mode)")
    analyze.add_argument("--bins", type=int, help="histogram bin count for every channel")
    analyze.add_argument("--bandwidth", help="KDE bandwidth: 'auto' or a positive number")
    analyze.add_argument("--color-presence-threshold", type=float,
                         help="pixel share for a color to count as present")
    analyze.add_argument("--emotion-threshold", type=float,
                         help="probability for an emotion to count as dominant")
    analyze.add_argument("--s-min", type=float, help="saturation floor below which pixels are gray")
    analyze.add_argument("--l-black", type=float, help="lightness below which pixels are black")
    analyze.add_argument("--l-white", type=float, help="lightness above which pixels are white")
    analyze.add_argument("--min-support", type=float, help="rule mining support floor")
    analyze.add_argument("--min-confidence", type=float, help="rule mining confidence floor")
    analyze.add_argument("--min-lift", type=float, help="strict lift floor for kept rules")
    analyze.add_argument("--max-consequent", type=int, help="max emotions per rule consequent")
    analyze.add_argument("--max-pixels", type=int, help="per-image sampling budget")
    analyze.add_argument("--workers", type=int, help="parallel image workers")
    analyze.add_argument("--config", help="JSON file holding any of the above options")
    return parser


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(data) - set(_OPTION_FIELDS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def _parse_bandwidth(raw) -> float | str:
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return float(raw)
    if isinstance(raw, str):
        if raw == "auto":
            return raw
        try:
            return float(raw)
        except ValueError:
            pass
    raise ConfigError(f"bandwidth must be 'auto' or a positive number, got {raw!r}")


def _merge_options(args: argparse.Namespace) -> RunConfig:
    merged: dict = {}
    if args.config:
        for key, value in _load_config_file(args.config).items():
            merged[_OPTION_FIELDS[key]] = value
    for key, fieldname in _OPTION_FIELDS.items():
        value = getattr(args, key, None)
        if value is not None:
            merged[fieldname] = value

    if "input_dir" not in merged:
        raise ConfigError("--input-dir is required (flag or config file)")
    if "output_dir" not in merged:
        raise ConfigError("--output-dir is required (flag or config file)")
    if "bandwidth" in merged:
        merged["bandwidth"] = _parse_bandwidth(merged["bandwidth"])
    merged["input_dir"] = Path(merged["input_dir"])
    merged["output_dir"] = Path(merged["output_dir"])
    if merged.get("sidecar_path") is not None:
        merged["sidecar_path"] = Path(merged["sidecar_path"])
    for key in ("bins", "max_consequent", "max_pixels", "workers"):
        if key in merged and not isinstance(merged[key], int):
            raise ConfigError(f"{key} must be an integer, got {merged[key]!r}")
    return RunConfig(**merged)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    try:
        cfg = _merge_options(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        report = run(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (MissingDirectory, EmptyCorpus) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CORPUS
    except JoinFailure as exc:
        print(f"error: emotion join failed: {exc}", file=sys.stderr)
        print("color-side reports were written before the failure", file=sys.stderr)
        return EXIT_JOIN
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ChromemoError as exc:
        # remaining domain errors at this level are input-file problems
        # (malformed sidecar and friends)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    decoded = len(report.records)
    skipped = len(report.skipped)
    sections = report.metadata["sections"]
    absent = [name for name, present in sections.items() if not present]
    print(f"analyzed {decoded} image(s), skipped {skipped}, reports in {report.output_dir}")
    if absent:
        print(f"sections not produced (no sidecar): {', '.join(absent)}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
