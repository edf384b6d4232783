"""Command line entry point: emotion-sidecar."""

from __future__ import annotations

import argparse
import logging
import sys

from .adapter import MODES, AdapterConfig, infer_corpus
from .errors import (
    ConfigError,
    EmptyCorpus,
    InvalidScores,
    MissingInput,
    ModelLoadFailure,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NO_CORPUS = 3


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="emotion-sidecar",
        description="write the per-image emotion sidecar CSV for an image folder",
    )
    parser.add_argument("--input-dir", required=True, help="directory of images")
    parser.add_argument("--output", required=True, help="sidecar CSV path to write")
    parser.add_argument("--mode", choices=MODES, default="stub")
    parser.add_argument(
        "--model-locator",
        default=None,
        help="module:attr naming the classifier callable (model mode only)",
    )
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")

    try:
        cfg = AdapterConfig(args.input_dir, args.output, args.mode, args.model_locator)
        out = infer_corpus(cfg)
    except (ConfigError, ModelLoadFailure, InvalidScores) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (MissingInput, EmptyCorpus) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CORPUS

    print(f"wrote {out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
