from pathlib import Path

import pytest

import fixture_corpus
from chromemo.pipeline import RunConfig, run


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory) -> Path:
    d = tmp_path_factory.mktemp("corpus")
    fixture_corpus.write_corpus(d)
    return d


@pytest.fixture(scope="session")
def sidecar_path(tmp_path_factory) -> Path:
    p = tmp_path_factory.mktemp("sidecar") / "emotions.csv"
    fixture_corpus.write_sidecar(p)
    return p


@pytest.fixture(scope="session")
def default_report(corpus_dir, sidecar_path, tmp_path_factory):
    """One full default-config run shared by read-only tests."""
    out = tmp_path_factory.mktemp("out_default")
    cfg = RunConfig(input_dir=corpus_dir, output_dir=out, sidecar_path=sidecar_path)
    return run(cfg)
