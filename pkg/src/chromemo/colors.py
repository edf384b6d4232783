"""Pixel sampling, RGB/HSL conversion, and quantization onto a 12-hue wheel.

The analytic coordinate system is hue-saturation-lightness (hexcone HSL).
Chromatic pixels are snapped to the nearest of 12 named wheel hues by
circular angular distance; low-saturation or extreme-lightness pixels land
in the achromatic bins (black, gray, white).

The wheel is the classic 12-step artist's circle (red, red-orange, ...,
red-violet). Its cyclic order is what harmony geometry runs on: adjacent
positions are one step apart and opposite positions differ by six steps.
Because that circle is pigment-based while HSL hue is light-based, each
wheel position carries an explicit anchor angle in HSL hue space rather
than a uniform 30-degree spacing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import EmptyImage, EmptyPixelSet

# Wheel positions in cyclic order. Index i and index (i + 6) % 12 are
# opposite (complementary) positions.
HUE_NAMES: tuple[str, ...] = (
    "red",
    "red-orange",
    "orange",
    "yellow-orange",
    "yellow",
    "yellow-green",
    "green",
    "blue-green",
    "blue",
    "blue-violet",
    "violet",
    "red-violet",
)

# Anchor angle (degrees of HSL hue) for each wheel position, same order as
# HUE_NAMES. The warm half is finely spaced because light-based hue packs
# the pigment wheel's warm colors into 0-120 degrees.
HUE_ANCHORS_DEG: tuple[float, ...] = (
    0.0,    # red
    15.0,   # red-orange
    30.0,   # orange
    45.0,   # yellow-orange
    60.0,   # yellow
    90.0,   # yellow-green
    120.0,  # green
    180.0,  # blue-green
    240.0,  # blue
    270.0,  # blue-violet
    300.0,  # violet
    330.0,  # red-violet
)

ACHROMATIC_NAMES: tuple[str, ...] = ("black", "gray", "white")

# Canonical bin order used by every table: 12 wheel hues, then achromatics.
ALL_BIN_NAMES: tuple[str, ...] = HUE_NAMES + ACHROMATIC_NAMES

_ANCHORS = np.asarray(HUE_ANCHORS_DEG)


class BinKind(Enum):
    CHROMATIC = "chromatic"
    BLACK = "black"
    GRAY = "gray"
    WHITE = "white"


@dataclass(frozen=True)
class IttenBin:
    """One quantization target: a wheel hue or an achromatic bin."""

    kind: BinKind
    hue_index: int | None = None

    def __post_init__(self) -> None:
        if self.kind is BinKind.CHROMATIC:
            if self.hue_index is None or not 0 <= self.hue_index <= 11:
                raise ValueError(f"chromatic bin needs hue_index in [0, 11], got {self.hue_index}")
        elif self.hue_index is not None:
            raise ValueError("achromatic bins carry no hue_index")

    @classmethod
    def chromatic(cls, hue_index: int) -> "IttenBin":
        return cls(BinKind.CHROMATIC, hue_index)

    @classmethod
    def from_name(cls, name: str) -> "IttenBin":
        if name in HUE_NAMES:
            return cls(BinKind.CHROMATIC, HUE_NAMES.index(name))
        if name in ACHROMATIC_NAMES:
            return cls(BinKind(name))
        raise ValueError(f"unknown bin name: {name!r}")

    @property
    def name(self) -> str:
        if self.kind is BinKind.CHROMATIC:
            return HUE_NAMES[self.hue_index]  # type: ignore[index]
        return self.kind.value

    @property
    def flat_index(self) -> int:
        """Position in the canonical 15-bin order (ALL_BIN_NAMES)."""
        if self.kind is BinKind.CHROMATIC:
            return self.hue_index  # type: ignore[return-value]
        return 12 + ACHROMATIC_NAMES.index(self.kind.value)


ALL_BINS: tuple[IttenBin, ...] = tuple(IttenBin.from_name(n) for n in ALL_BIN_NAMES)


@dataclass(frozen=True)
class RgbColor:
    """Integer RGB triple, each channel in [0, 255]."""

    r: int
    g: int
    b: int

    def __post_init__(self) -> None:
        for name, v in (("r", self.r), ("g", self.g), ("b", self.b)):
            if not 0 <= v <= 255:
                raise ValueError(f"channel {name}={v} outside [0, 255]")


@dataclass(frozen=True)
class HslColor:
    """Hue in degrees [0, 360), saturation and lightness in [0, 1].

    A fully desaturated color has no meaningful hue; h is canonicalized
    to 0 when s == 0.
    """

    h: float
    s: float
    l: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.h < 360.0:
            raise ValueError(f"h={self.h} outside [0, 360)")
        if not 0.0 <= self.s <= 1.0:
            raise ValueError(f"s={self.s} outside [0, 1]")
        if not 0.0 <= self.l <= 1.0:
            raise ValueError(f"l={self.l} outside [0, 1]")
        if self.s == 0.0 and self.h != 0.0:
            object.__setattr__(self, "h", 0.0)


@dataclass(frozen=True)
class SamplingConfig:
    """Uniform-grid pixel sampling budget."""

    max_pixels: int = 10_000

    def __post_init__(self) -> None:
        if self.max_pixels < 1:
            raise ValueError("max_pixels must be >= 1")


@dataclass(frozen=True)
class AchromaticThresholds:
    """Cutoffs separating chromatic pixels from black / gray / white.

    Lightness rules dominate: a pixel darker than l_black is black (and a
    pixel lighter than l_white is white) no matter how saturated it is.
    Remaining pixels with saturation below s_min are gray.
    """

    s_min: float = 0.08
    l_black: float = 0.10
    l_white: float = 0.92

    def __post_init__(self) -> None:
        if not 0.0 < self.s_min < 1.0:
            raise ValueError("s_min must be in (0, 1)")
        if not 0.0 <= self.l_black < self.l_white <= 1.0:
            raise ValueError("need 0 <= l_black < l_white <= 1")


@dataclass(frozen=True)
class QuantizedPalette:
    """Per-image pixel-share histogram over the 15 bins.

    shares is a length-15 vector in ALL_BIN_NAMES order; it sums to 1.
    """

    shares: np.ndarray = field(repr=False)
    pixel_count: int = 0

    def __post_init__(self) -> None:
        shares = np.asarray(self.shares, dtype=float)
        object.__setattr__(self, "shares", shares)
        if shares.shape != (15,):
            raise ValueError(f"shares must have shape (15,), got {shares.shape}")
        if self.pixel_count <= 0:
            raise ValueError("pixel_count must be positive")
        if (shares < 0).any() or abs(shares.sum() - 1.0) > 1e-9:
            raise ValueError("shares must be non-negative and sum to 1")

    def share_of(self, bin_: IttenBin | str) -> float:
        if isinstance(bin_, str):
            bin_ = IttenBin.from_name(bin_)
        return float(self.shares[bin_.flat_index])

    def as_dict(self) -> dict[IttenBin, float]:
        return {b: float(self.shares[b.flat_index]) for b in ALL_BINS}


# ---------------------------------------------------------------------------
# RGB <-> HSL
# ---------------------------------------------------------------------------

def rgb_to_hsl(c: RgbColor) -> HslColor:
    """Hexcone RGB -> HSL for a single color."""
    r, g, b = c.r / 255.0, c.g / 255.0, c.b / 255.0
    cmax = max(r, g, b)
    cmin = min(r, g, b)
    l = (cmax + cmin) / 2.0
    if cmax == cmin:
        return HslColor(0.0, 0.0, l)
    d = cmax - cmin
    s = d / (1.0 - abs(2.0 * l - 1.0))
    if cmax == r:
        h = 60.0 * (((g - b) / d) % 6.0)
    elif cmax == g:
        h = 60.0 * ((b - r) / d + 2.0)
    else:
        h = 60.0 * ((r - g) / d + 4.0)
    if h >= 360.0:
        h -= 360.0
    return HslColor(h, min(s, 1.0), l)


def hsl_to_rgb(c: HslColor) -> RgbColor:
    """Inverse hexcone transform, rounding to integer channels."""
    chroma = (1.0 - abs(2.0 * c.l - 1.0)) * c.s
    hp = c.h / 60.0
    x = chroma * (1.0 - abs(hp % 2.0 - 1.0))
    sector = int(hp) % 6
    rgb1 = (
        (chroma, x, 0.0),
        (x, chroma, 0.0),
        (0.0, chroma, x),
        (0.0, x, chroma),
        (x, 0.0, chroma),
        (chroma, 0.0, x),
    )[sector]
    m = c.l - chroma / 2.0
    r, g, b = (int(round((v + m) * 255.0)) for v in rgb1)
    clamp = lambda v: max(0, min(255, v))
    return RgbColor(clamp(r), clamp(g), clamp(b))


def rgb_to_hsl_array(rgb: np.ndarray) -> np.ndarray:
    """Vectorized hexcone RGB -> HSL.

    rgb: (N, 3) integer channels in [0, 255]. Returns (N, 3) float columns
    (h degrees in [0, 360), s, l). Desaturated rows get h = 0.
    """
    arr = np.asarray(rgb, dtype=float) / 255.0
    r, g, b = arr[:, 0], arr[:, 1], arr[:, 2]
    cmax = arr.max(axis=1)
    cmin = arr.min(axis=1)
    l = (cmax + cmin) / 2.0
    d = cmax - cmin
    chromatic = d > 0

    s = np.zeros_like(l)
    denom = 1.0 - np.abs(2.0 * l - 1.0)
    np.divide(d, denom, out=s, where=chromatic & (denom > 0))
    np.clip(s, 0.0, 1.0, out=s)

    h = np.zeros_like(l)
    with np.errstate(invalid="ignore", divide="ignore"):
        hr = ((g - b) / d) % 6.0
        hg = (b - r) / d + 2.0
        hb = (r - g) / d + 4.0
    h = np.where(cmax == r, hr, np.where(cmax == g, hg, hb)) * 60.0
    h = np.where(chromatic, h % 360.0, 0.0)
    return np.column_stack([h, s, l])


def hsl_to_rgb_array(hsl: np.ndarray) -> np.ndarray:
    """Vectorized inverse hexcone transform to uint8 channels."""
    arr = np.asarray(hsl, dtype=float)
    h, s, l = arr[:, 0], arr[:, 1], arr[:, 2]
    chroma = (1.0 - np.abs(2.0 * l - 1.0)) * s
    hp = h / 60.0
    x = chroma * (1.0 - np.abs(hp % 2.0 - 1.0))
    sector = hp.astype(int) % 6
    zero = np.zeros_like(chroma)
    r1 = np.select([sector == 0, sector == 1, sector == 2, sector == 3, sector == 4, sector == 5],
                   [chroma, x, zero, zero, x, chroma])
    g1 = np.select([sector == 0, sector == 1, sector == 2, sector == 3, sector == 4, sector == 5],
                   [x, chroma, chroma, x, zero, zero])
    b1 = np.select([sector == 0, sector == 1, sector == 2, sector == 3, sector == 4, sector == 5],
                   [zero, zero, x, chroma, chroma, x])
    m = l - chroma / 2.0
    rgb = np.column_stack([r1 + m, g1 + m, b1 + m]) * 255.0
    return np.clip(np.rint(rgb), 0, 255).astype(np.uint8)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def sample_pixels(image: np.ndarray, cfg: SamplingConfig = SamplingConfig()) -> np.ndarray:
    """Deterministic uniform-grid subsample of a decoded raster.

    image: (H, W, 3) array. Returns (N, 3) rows of RGB values with
    N <= cfg.max_pixels; images within budget are returned whole.
    """
    arr = np.asarray(image)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"expected (H, W, 3) raster, got shape {arr.shape}")
    height, width = arr.shape[:2]
    total = height * width
    if total == 0:
        raise EmptyImage("image has no pixels")
    if total <= cfg.max_pixels:
        return arr.reshape(-1, 3)

    stride = max(1, int(np.ceil(np.sqrt(total / cfg.max_pixels))))
    while -(-height // stride) * -(-width // stride) > cfg.max_pixels:
        stride += 1
    return arr[::stride, ::stride].reshape(-1, 3)


# ---------------------------------------------------------------------------
# Quantization
# ---------------------------------------------------------------------------

def assign_bin(color: HslColor, thresholds: AchromaticThresholds = AchromaticThresholds()) -> IttenBin:
    """Classify a single HSL color into its wheel or achromatic bin."""
    if color.l < thresholds.l_black:
        return IttenBin(BinKind.BLACK)
    if color.l > thresholds.l_white:
        return IttenBin(BinKind.WHITE)
    if color.s < thresholds.s_min:
        return IttenBin(BinKind.GRAY)
    diff = np.abs(color.h - _ANCHORS)
    dist = np.minimum(diff, 360.0 - diff)
    return IttenBin.chromatic(int(np.argmin(dist)))


def quantize(
    pixels: np.ndarray,
    thresholds: AchromaticThresholds = AchromaticThresholds(),
) -> QuantizedPalette:
    """Assign every HSL pixel to exactly one bin and return pixel shares.

    pixels: (N, 3) float columns (h, s, l). Chromatic pixels snap to the
    nearest anchor by circular angular distance; exact midpoints resolve
    to the lower wheel index.
    """
    arr = np.asarray(pixels, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"expected (N, 3) HSL pixels, got shape {arr.shape}")
    n = arr.shape[0]
    if n == 0:
        raise EmptyPixelSet("no pixels to quantize")

    h, s, l = arr[:, 0], arr[:, 1], arr[:, 2]
    black = l < thresholds.l_black
    white = ~black & (l > thresholds.l_white)
    gray = ~black & ~white & (s < thresholds.s_min)
    chromatic = ~(black | white | gray)

    counts = np.zeros(15, dtype=np.int64)
    if chromatic.any():
        diff = np.abs(h[chromatic, None] - _ANCHORS[None, :])
        dist = np.minimum(diff, 360.0 - diff)
        # argmin returns the first minimum: ties go to the lower wheel index
        nearest = np.argmin(dist, axis=1)
        counts[:12] = np.bincount(nearest, minlength=12)
    counts[12] = int(black.sum())
    counts[13] = int(gray.sum())
    counts[14] = int(white.sum())

    return QuantizedPalette(shares=counts / n, pixel_count=n)
