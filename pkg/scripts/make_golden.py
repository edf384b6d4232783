"""Regenerate the frozen report snapshot in tests/data/golden/.

Builds the synthetic fixture corpus in a temp directory, runs the full
pipeline with default settings, and copies every report file into the
golden directory. Rerun only when an intentional output-format or
numeric-behavior change is being made, and review the diff.
"""

from __future__ import annotations

import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "tests"))
sys.path.insert(0, str(REPO / "src"))

import fixture_corpus  # noqa: E402
from chromemo.pipeline import REPORT_FILES, RunConfig, run  # noqa: E402

GOLDEN_DIR = REPO / "tests" / "data" / "golden"


def main() -> None:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        corpus = root / "corpus"
        fixture_corpus.write_corpus(corpus)
        sidecar = root / "emotions.csv"
        fixture_corpus.write_sidecar(sidecar)
        out = root / "out"
        run(RunConfig(input_dir=corpus, output_dir=out, sidecar_path=sidecar))
        for name in REPORT_FILES:
            shutil.copy2(out / name, GOLDEN_DIR / name)
            print(f"wrote {GOLDEN_DIR / name}")


if __name__ == "__main__":
    main()
