"""Acceptance gate: one test per shipped guarantee, each with a time bound.

Run with -v to get one pass/fail line per criterion. Every numeric
tolerance here is pinned; loosening one is an interface change, not a
test fix.
"""

import itertools
import time
from pathlib import Path

import numpy as np
import pytest

import fixture_corpus
from chromemo.colors import (
    ALL_BIN_NAMES,
    HUE_NAMES,
    AchromaticThresholds,
    QuantizedPalette,
    quantize,
    rgb_to_hsl_array,
    hsl_to_rgb_array,
)
from chromemo.density import kde
from chromemo.emotions import EMOTION_LABELS, EmotionVector
from chromemo.fusion import color_emotion_correlation
from chromemo.harmony import TEMPLATES, HarmonyType, detect_harmonies
from chromemo.mining import Transaction, filter_lift, mine_rules
from chromemo.pipeline import REPORT_FILES, RunConfig, run

from test_density import _direct_kde
from test_fusion import _textbook_pearson
from test_harmony import (
    ANALOGOUS_TRIPLES_BY_NAME,
    COMPLEMENTARY_PAIRS_BY_NAME,
    _as_pairs,
    _oracle_matches,
)
from test_mining import _as_dict, _oracle_rules, _random_transactions

GOLDEN_DIR = Path(__file__).parent / "data" / "golden"


class _Deadline:
    def __init__(self, seconds: float):
        self.limit = seconds
        self.start = time.perf_counter()

    def check(self) -> None:
        elapsed = time.perf_counter() - self.start
        assert elapsed < self.limit, f"took {elapsed:.2f}s, budget {self.limit}s"


def test_wheel_structure_reproduction():
    """The published pair/triple vocabulary maps onto the wheel templates."""
    deadline = _Deadline(1.0)

    comp_templates = set(TEMPLATES[HarmonyType.COMPLEMENTARY])
    named_pairs = {
        frozenset(HUE_NAMES.index(n) for n in pair)
        for pair in COMPLEMENTARY_PAIRS_BY_NAME
    }
    assert len(named_pairs) == 5
    assert named_pairs <= comp_templates
    leftover = comp_templates - named_pairs
    assert leftover == {
        frozenset({HUE_NAMES.index("yellow"), HUE_NAMES.index("violet")})
    }

    analog_templates = set(TEMPLATES[HarmonyType.ANALOGOUS])
    named_triples = {
        frozenset(HUE_NAMES.index(n) for n in triple)
        for triple in ANALOGOUS_TRIPLES_BY_NAME
    }
    assert len(named_triples) == 11
    assert named_triples <= analog_templates
    for triple in named_triples:
        idx = sorted(triple)
        spans = {(idx[1] - idx[0]) % 12, (idx[2] - idx[1]) % 12, (idx[0] - idx[2]) % 12}
        assert spans == {1, 10} or spans == {1}, f"{idx} is not consecutive"

    deadline.check()


def test_harmony_oracle_equivalence():
    """detect_harmonies equals a brute-force matcher on all 4096 subsets."""
    deadline = _Deadline(5.0)
    for bits in range(4096):
        hues = frozenset(i for i in range(12) if bits >> i & 1)
        assert _as_pairs(detect_harmonies(hues)) == _oracle_matches(hues), hues
    deadline.check()


def test_hsl_round_trip_100k_colors():
    """rgb -> hsl -> rgb stays within +-1 per channel on 10^5 colors."""
    deadline = _Deadline(5.0)
    rng = np.random.default_rng(20240817)
    rgb = rng.integers(0, 256, size=(100_000, 3), dtype=np.int64)
    back = hsl_to_rgb_array(rgb_to_hsl_array(rgb))
    assert int(np.abs(back.astype(np.int64) - rgb).max()) <= 1
    deadline.check()


def test_kde_matches_direct_summation_and_integrates():
    """KDE equals the direct-summation oracle to 1e-9 and integrates to 1."""
    deadline = _Deadline(5.0)
    rng = np.random.default_rng(7)
    samples = {
        "hue": np.concatenate(
            [rng.uniform(0.0, 20.0, 20), rng.uniform(340.0, 360.0, 20), rng.uniform(100.0, 260.0, 10)]
        ),
        "saturation": np.concatenate([rng.uniform(0.0, 0.15, 25), rng.uniform(0.5, 1.0, 25)]),
        "lightness": rng.uniform(0.0, 1.0, 50),
    }
    for channel, values in samples.items():
        assert values.size == 50
        est = kde(values, channel)
        worst = max(
            abs(d - _direct_kde(values, channel, est.bandwidth, x))
            for x, d in zip(est.eval_points, est.densities)
        )
        assert worst <= 1e-9, f"{channel}: max deviation {worst}"
        assert est.integral() == pytest.approx(1.0, abs=1e-3), channel
    deadline.check()


def test_rule_mining_matches_exhaustive_enumeration():
    """Mined rules equal brute-force enumeration; the lift filter is strict."""
    deadline = _Deadline(5.0)
    rng = np.random.default_rng(99)
    transactions = _random_transactions(rng, 50)
    items = {i for t in transactions for i in t.items}
    assert len(items) <= 8
    for min_support, min_confidence in ((0.05, 0.3), (0.1, 0.5), (0.02, 0.2)):
        mined = mine_rules(transactions, min_support, min_confidence, 3)
        want = _oracle_rules(transactions, min_support, min_confidence, 3)
        got = _as_dict(mined)
        assert got.keys() == want.keys()
        for key, (s, c, l) in want.items():
            gs, gc, gl = got[key]
            assert abs(gs - s) <= 1e-12 and abs(gc - c) <= 1e-12 and abs(gl - l) <= 1e-12

    # exact independence: confidence equals the consequent's base rate,
    # so lift is exactly 1.0 and a strict > 1.0 filter must drop the rule
    flat = [
        Transaction("a", frozenset({"color:red", "emo:fear"})),
        Transaction("b", frozenset({"color:red", "emo:awe"})),
        Transaction("c", frozenset({"color:blue", "emo:fear"})),
        Transaction("d", frozenset({"color:blue", "emo:awe"})),
    ]
    mined = mine_rules(flat, 0.1, 0.1, 3)
    assert any(r.lift == 1.0 for r in mined)
    assert filter_lift(mined, 1.0) == []
    deadline.check()


def test_pearson_matrix_matches_textbook_formula():
    """Correlation entries match raw-sum Pearson to 1e-12; constants are null."""
    deadline = _Deadline(1.0)
    rng = np.random.default_rng(123)
    constant = ALL_BIN_NAMES.index("blue-violet")
    palettes, emotions = {}, {}
    for k in range(10):
        image_id = f"img{k}"
        raw = rng.random(14) + 0.01
        shares = np.insert(raw / raw.sum() * 0.95, constant, 0.05)
        palettes[image_id] = QuantizedPalette(shares=shares, pixel_count=500)
        probs = rng.random(9) + 0.01
        probs /= probs.sum()
        emotions[image_id] = EmotionVector(
            image_id, dict(zip(EMOTION_LABELS, probs.tolist()))
        )
    matrix = color_emotion_correlation(palettes, emotions)
    ids = sorted(palettes)
    for color, label in itertools.product(ALL_BIN_NAMES, EMOTION_LABELS):
        got = matrix.get(color, label)
        if color == "blue-violet":
            assert got is None  # zero variance must be null, never 0
            continue
        x = [float(palettes[i].share_of(color)) for i in ids]
        y = [emotions[i].prob(label) for i in ids]
        assert got == pytest.approx(_textbook_pearson(x, y), abs=1e-12)
    deadline.check()


def test_end_to_end_golden_run_worker_invariant(corpus_dir, sidecar_path, tmp_path):
    """24-image fixture reproduces the frozen reports at workers 1, 4, 8."""
    deadline = _Deadline(30.0)
    outputs = []
    for workers in (1, 4, 8):
        out = tmp_path / f"w{workers}"
        run(
            RunConfig(
                input_dir=corpus_dir,
                output_dir=out,
                sidecar_path=sidecar_path,
                workers=workers,
            )
        )
        outputs.append(out)
    for name in REPORT_FILES:
        golden = (GOLDEN_DIR / name).read_bytes()
        for out in outputs:
            assert (out / name).read_bytes() == golden, f"{name} at {out.name}"
    deadline.check()


def test_constructed_black_fear_signal_recovered():
    """A black share planted proportional to fear comes back with r >= 0.99."""
    deadline = _Deadline(5.0)
    rng = np.random.default_rng(42)
    fears = rng.uniform(0.05, 0.85, 12)
    palettes, emotions = {}, {}
    for k, fear in enumerate(fears):
        image_id = f"img{k:02d}"
        cols = int(round(float(fear) * 64))
        rgb = np.full((64, 64, 3), 255, dtype=np.uint8)
        rgb[:, :cols, :] = 0
        hsl = rgb_to_hsl_array(rgb.reshape(-1, 3))
        palettes[image_id] = quantize(hsl, AchromaticThresholds())
        assert palettes[image_id].share_of("black") == pytest.approx(cols / 64)
        probs = {label: (1.0 - float(fear)) / 8.0 for label in EMOTION_LABELS}
        probs["fear"] = float(fear)
        emotions[image_id] = EmotionVector(image_id, probs)
    matrix = color_emotion_correlation(palettes, emotions)
    r = matrix.get("black", "fear")
    assert r is not None
    assert r >= 0.99
    deadline.check()
