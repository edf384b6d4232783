"""Conversion, sampling, and quantization tests.

Expected conversion values were computed independently with the stdlib
colorsys module (rgb_to_hls / hls_to_rgb) and frozen here; the round-trip
tests also run colorsys live as a second opinion.
"""

import colorsys

import numpy as np
import pytest

from chromemo.colors import (
    ACHROMATIC_NAMES,
    ALL_BIN_NAMES,
    ALL_BINS,
    HUE_ANCHORS_DEG,
    HUE_NAMES,
    AchromaticThresholds,
    BinKind,
    HslColor,
    IttenBin,
    QuantizedPalette,
    RgbColor,
    SamplingConfig,
    assign_bin,
    hsl_to_rgb,
    hsl_to_rgb_array,
    quantize,
    rgb_to_hsl,
    rgb_to_hsl_array,
    sample_pixels,
)
from chromemo.errors import EmptyImage, EmptyPixelSet


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------

def test_rgb_channel_bounds_enforced():
    with pytest.raises(ValueError):
        RgbColor(256, 0, 0)
    with pytest.raises(ValueError):
        RgbColor(0, -1, 0)


def test_hsl_bounds_enforced():
    with pytest.raises(ValueError):
        HslColor(360.0, 0.5, 0.5)
    with pytest.raises(ValueError):
        HslColor(0.0, 1.5, 0.5)
    with pytest.raises(ValueError):
        HslColor(0.0, 0.5, -0.1)


def test_desaturated_hue_canonicalized_to_zero():
    assert HslColor(123.0, 0.0, 0.5).h == 0.0


def test_bin_name_round_trip():
    for name in ALL_BIN_NAMES:
        assert IttenBin.from_name(name).name == name
    assert len(ALL_BIN_NAMES) == 15
    assert len(set(ALL_BINS)) == 15


def test_chromatic_bin_requires_valid_index():
    with pytest.raises(ValueError):
        IttenBin(BinKind.CHROMATIC, None)
    with pytest.raises(ValueError):
        IttenBin(BinKind.CHROMATIC, 12)
    with pytest.raises(ValueError):
        IttenBin(BinKind.GRAY, 3)


def test_flat_index_matches_canonical_order():
    for i, b in enumerate(ALL_BINS):
        assert b.flat_index == i


# ---------------------------------------------------------------------------
# wheel structure
# ---------------------------------------------------------------------------

def test_wheel_has_twelve_named_positions():
    assert HUE_NAMES == (
        "red", "red-orange", "orange", "yellow-orange", "yellow",
        "yellow-green", "green", "blue-green", "blue", "blue-violet",
        "violet", "red-violet",
    )
    assert ACHROMATIC_NAMES == ("black", "gray", "white")


def test_anchor_angles_strictly_increasing_from_red():
    assert HUE_ANCHORS_DEG[0] == 0.0
    assert all(a < b for a, b in zip(HUE_ANCHORS_DEG, HUE_ANCHORS_DEG[1:]))
    assert all(0.0 <= a < 360.0 for a in HUE_ANCHORS_DEG)


def test_opposite_positions_are_six_steps_apart():
    # the classic opposing pigment pairs sit at index distance 6
    pairs = [
        ("red", "green"),
        ("red-orange", "blue-green"),
        ("orange", "blue"),
        ("yellow-orange", "blue-violet"),
        ("yellow", "violet"),
        ("yellow-green", "red-violet"),
    ]
    for a, b in pairs:
        ia, ib = HUE_NAMES.index(a), HUE_NAMES.index(b)
        assert (ib - ia) % 12 == 6


# ---------------------------------------------------------------------------
# conversions (frozen oracle values from colorsys)
# ---------------------------------------------------------------------------

def test_rgb_to_hsl_known_value():
    c = rgb_to_hsl(RgbColor(128, 64, 32))
    assert c.h == pytest.approx(20.0, abs=1e-9)
    assert c.s == pytest.approx(0.6, abs=1e-9)
    assert c.l == pytest.approx(0.3137254901960784, abs=1e-12)


def test_hsl_to_rgb_known_value():
    assert hsl_to_rgb(HslColor(210.0, 0.5, 0.4)) == RgbColor(51, 102, 153)


@pytest.mark.parametrize(
    "rgb,expected",
    [
        ((255, 0, 0), (0.0, 1.0, 0.5)),
        ((0, 255, 0), (120.0, 1.0, 0.5)),
        ((0, 0, 255), (240.0, 1.0, 0.5)),
        ((255, 255, 0), (60.0, 1.0, 0.5)),
        ((12, 200, 150), (164.04255319148936, 0.8867924528301888, 0.4156862745098039)),
        ((240, 10, 90), (339.1304347826087, 0.92, 0.49019607843137253)),
    ],
)
def test_rgb_to_hsl_spot_values(rgb, expected):
    c = rgb_to_hsl(RgbColor(*rgb))
    assert (c.h, c.s, c.l) == pytest.approx(expected, abs=1e-9)


def test_grayscale_maps_to_zero_saturation():
    for v in (0, 51, 128, 200, 255):
        c = rgb_to_hsl(RgbColor(v, v, v))
        assert c.s == 0.0
        assert c.h == 0.0
        assert c.l == pytest.approx(v / 255.0)


def test_round_trip_agrees_with_colorsys():
    rng = np.random.default_rng(7)
    samples = rng.integers(0, 256, size=(2000, 3))
    for r, g, b in samples:
        ours = rgb_to_hsl(RgbColor(int(r), int(g), int(b)))
        oh, ol, osat = colorsys.rgb_to_hls(r / 255, g / 255, b / 255)
        assert ours.h == pytest.approx((oh * 360.0) % 360.0, abs=1e-9)
        assert ours.s == pytest.approx(osat, abs=1e-9)
        assert ours.l == pytest.approx(ol, abs=1e-9)
        back = hsl_to_rgb(ours)
        assert abs(back.r - r) <= 1 and abs(back.g - g) <= 1 and abs(back.b - b) <= 1


def test_array_conversion_matches_scalar():
    rng = np.random.default_rng(11)
    rgb = rng.integers(0, 256, size=(500, 3))
    hsl = rgb_to_hsl_array(rgb)
    for row, (r, g, b) in zip(hsl, rgb):
        scalar = rgb_to_hsl(RgbColor(int(r), int(g), int(b)))
        assert row[0] == pytest.approx(scalar.h, abs=1e-9)
        assert row[1] == pytest.approx(scalar.s, abs=1e-9)
        assert row[2] == pytest.approx(scalar.l, abs=1e-9)
    back = hsl_to_rgb_array(hsl)
    assert np.abs(back.astype(int) - rgb).max() <= 1


def test_array_round_trip_within_one_step():
    rng = np.random.default_rng(3)
    rgb = rng.integers(0, 256, size=(100_000, 3))
    back = hsl_to_rgb_array(rgb_to_hsl_array(rgb))
    assert np.abs(back.astype(int) - rgb).max() <= 1


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def test_small_image_returned_whole():
    img = np.arange(5 * 7 * 3, dtype=np.uint8).reshape(5, 7, 3)
    out = sample_pixels(img, SamplingConfig(max_pixels=100))
    assert out.shape == (35, 3)
    assert (out == img.reshape(-1, 3)).all()


def test_budget_respected_on_large_image():
    img = np.zeros((500, 400, 3), dtype=np.uint8)
    out = sample_pixels(img, SamplingConfig(max_pixels=10_000))
    assert 0 < out.shape[0] <= 10_000


def test_budget_respected_on_thin_image():
    # a 1-pixel-tall strip defeats the square-root stride guess
    img = np.zeros((1, 7, 3), dtype=np.uint8)
    out = sample_pixels(img, SamplingConfig(max_pixels=3))
    assert 0 < out.shape[0] <= 3


def test_sampling_is_deterministic():
    rng = np.random.default_rng(5)
    img = rng.integers(0, 256, size=(300, 200, 3)).astype(np.uint8)
    a = sample_pixels(img, SamplingConfig(max_pixels=1000))
    b = sample_pixels(img, SamplingConfig(max_pixels=1000))
    assert (a == b).all()


def test_sampling_grid_is_uniform():
    # mark a regular lattice; the sampler must hit only lattice rows
    img = np.zeros((100, 100, 3), dtype=np.uint8)
    out = sample_pixels(img, SamplingConfig(max_pixels=100))
    assert out.shape[0] == 100  # stride 10 on both axes


def test_empty_image_rejected():
    with pytest.raises(EmptyImage):
        sample_pixels(np.zeros((0, 10, 3), dtype=np.uint8))


def test_bad_shape_rejected():
    with pytest.raises(ValueError):
        sample_pixels(np.zeros((4, 4), dtype=np.uint8))


# ---------------------------------------------------------------------------
# quantization
# ---------------------------------------------------------------------------

def test_anchor_hues_land_on_their_own_bin():
    for idx, anchor in enumerate(HUE_ANCHORS_DEG):
        b = assign_bin(HslColor(anchor, 1.0, 0.5))
        assert b == IttenBin.chromatic(idx)


def test_lightness_rules_dominate_saturation():
    t = AchromaticThresholds()
    assert assign_bin(HslColor(0.0, 1.0, 0.05), t).name == "black"
    assert assign_bin(HslColor(0.0, 1.0, 0.95), t).name == "white"
    assert assign_bin(HslColor(0.0, 0.05, 0.5), t).name == "gray"


def test_thresholds_are_strict_inequalities():
    t = AchromaticThresholds(s_min=0.08, l_black=0.10, l_white=0.92)
    # exactly at the cutoffs: not black, not white, not gray
    assert assign_bin(HslColor(0.0, 0.08, 0.10), t).kind is BinKind.CHROMATIC
    assert assign_bin(HslColor(0.0, 0.08, 0.92), t).kind is BinKind.CHROMATIC


def test_circular_distance_wraps_at_zero():
    # 350 degrees is 10 from red (0) and 20 from red-violet (330)
    assert assign_bin(HslColor(350.0, 1.0, 0.5)).name == "red"
    # 340 degrees is 10 from red-violet and 20 from red
    assert assign_bin(HslColor(340.0, 1.0, 0.5)).name == "red-violet"


def test_midpoint_ties_resolve_to_lower_index():
    # 7.5 degrees is equidistant from red (0) and red-orange (15)
    assert assign_bin(HslColor(7.5, 1.0, 0.5)) == IttenBin.chromatic(0)
    # 150 degrees is equidistant from green (120) and blue-green (180)
    assert assign_bin(HslColor(150.0, 1.0, 0.5)) == IttenBin.chromatic(6)
    # 345 is equidistant from red-violet (330) and red (0=360): red wins
    # because red has the lower wheel index
    assert assign_bin(HslColor(345.0, 1.0, 0.5)) == IttenBin.chromatic(0)


def test_quantize_matches_scalar_assignment():
    rng = np.random.default_rng(23)
    n = 5000
    hsl = np.column_stack([
        rng.uniform(0, 360, n),
        rng.uniform(0, 1, n),
        rng.uniform(0, 1, n),
    ])
    pal = quantize(hsl)
    counts = np.zeros(15)
    for h, s, l in hsl:
        counts[assign_bin(HslColor(h, s, l)).flat_index] += 1
    assert pal.pixel_count == n
    assert pal.shares == pytest.approx(counts / n, abs=1e-12)


def test_quantize_totality_and_unit_sum():
    rng = np.random.default_rng(29)
    hsl = np.column_stack([
        rng.uniform(0, 360, 10_000),
        rng.uniform(0, 1, 10_000),
        rng.uniform(0, 1, 10_000),
    ])
    pal = quantize(hsl)
    assert pal.shares.sum() == pytest.approx(1.0, abs=1e-12)
    assert (pal.shares >= 0).all()


def test_quantize_share_scale_invariance():
    # duplicating every pixel leaves shares unchanged
    rng = np.random.default_rng(31)
    hsl = np.column_stack([
        rng.uniform(0, 360, 400),
        rng.uniform(0.2, 1, 400),
        rng.uniform(0.2, 0.8, 400),
    ])
    a = quantize(hsl)
    b = quantize(np.vstack([hsl, hsl]))
    assert b.shares == pytest.approx(a.shares, abs=1e-12)
    assert b.pixel_count == 2 * a.pixel_count


def test_quantize_empty_rejected():
    with pytest.raises(EmptyPixelSet):
        quantize(np.zeros((0, 3)))


def test_palette_share_lookup():
    hsl = np.array([[0.0, 1.0, 0.5], [120.0, 1.0, 0.5], [0.0, 0.0, 0.5], [0.0, 0.0, 0.5]])
    pal = quantize(hsl)
    assert pal.share_of("red") == 0.25
    assert pal.share_of("green") == 0.25
    assert pal.share_of("gray") == 0.5
    assert pal.share_of(IttenBin(BinKind.WHITE)) == 0.0
    d = pal.as_dict()
    assert len(d) == 15
    assert sum(d.values()) == pytest.approx(1.0)


def test_palette_validation():
    with pytest.raises(ValueError):
        QuantizedPalette(shares=np.zeros(14), pixel_count=1)
    with pytest.raises(ValueError):
        QuantizedPalette(shares=np.full(15, 1 / 15), pixel_count=0)
    bad = np.zeros(15)
    bad[0] = 0.5
    with pytest.raises(ValueError):
        QuantizedPalette(shares=bad, pixel_count=10)
