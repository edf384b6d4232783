"""Per-channel histograms and Gaussian kernel density estimates.

Channels and their domains: hue [0, 360), saturation [0, 1],
lightness [0, 1]. Histograms use equal-width half-open bins with the last
bin closed on the right (so 1.0 lands in the final saturation bin).

KDE is a Gaussian kernel sum, density(x) = (1/(n*h)) * sum_i K((x-x_i)/h),
with a boundary correction per channel: hue is circular, so each sample
contributes through its +-360k images (k up to 3); saturation and
lightness reflect samples at both domain ends, which keeps mass from
leaking past 0 and 1 when values pile up at the extremes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyInput, NonPositiveBandwidth, OutOfDomain

CHANNELS: tuple[str, ...] = ("hue", "saturation", "lightness")

DOMAINS: dict[str, tuple[float, float]] = {
    "hue": (0.0, 360.0),
    "saturation": (0.0, 1.0),
    "lightness": (0.0, 1.0),
}

DEFAULT_BINS: dict[str, int] = {"hue": 256, "saturation": 100, "lightness": 100}

DEFAULT_EVAL_POINTS = 512

# kernel images considered on each side for the circular hue kernel
HUE_WRAPS = 3

# evaluation points processed per chunk to bound the (chunk x n) workspace
_EVAL_CHUNK = 64


def _check_channel(channel: str) -> tuple[float, float]:
    if channel not in DOMAINS:
        raise ValueError(f"unknown channel {channel!r}, expected one of {CHANNELS}")
    return DOMAINS[channel]


def _check_values(values: np.ndarray, channel: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise EmptyInput(f"no {channel} values")
    lo, hi = DOMAINS[channel]
    if channel == "hue":
        if ((arr < lo) | (arr >= hi)).any():
            raise OutOfDomain(f"hue values outside [{lo}, {hi})")
    elif ((arr < lo) | (arr > hi)).any():
        raise OutOfDomain(f"{channel} values outside [{lo}, {hi}]")
    return arr


@dataclass(frozen=True)
class ChannelHistogram:
    """Equal-width bin counts for one channel over its full domain."""

    channel: str
    bin_edges: np.ndarray = field(repr=False)
    counts: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        _check_channel(self.channel)
        edges = np.asarray(self.bin_edges, dtype=float)
        counts = np.asarray(self.counts, dtype=np.int64)
        object.__setattr__(self, "bin_edges", edges)
        object.__setattr__(self, "counts", counts)
        if len(counts) != len(edges) - 1:
            raise ValueError("need len(counts) == len(bin_edges) - 1")
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def merge(self, other: "ChannelHistogram") -> "ChannelHistogram":
        """Elementwise count addition; both sides must share edges."""
        if other.channel != self.channel or not np.array_equal(other.bin_edges, self.bin_edges):
            raise ValueError("histograms must share channel and bin edges to merge")
        return ChannelHistogram(self.channel, self.bin_edges, self.counts + other.counts)


@dataclass(frozen=True)
class DensityEstimate:
    """KDE evaluated on a fixed grid.

    Structural checks happen here; the unit-integral property (within
    1e-3 by trapezoid on a >=512-point grid) holds for kde() outputs and
    is exposed through integral().
    """

    channel: str
    eval_points: np.ndarray = field(repr=False)
    densities: np.ndarray = field(repr=False)
    bandwidth: float = 0.0

    def __post_init__(self) -> None:
        lo, hi = _check_channel(self.channel)
        pts = np.asarray(self.eval_points, dtype=float)
        dens = np.asarray(self.densities, dtype=float)
        object.__setattr__(self, "eval_points", pts)
        object.__setattr__(self, "densities", dens)
        if pts.shape != dens.shape or pts.ndim != 1 or pts.size < 2:
            raise ValueError("eval_points and densities must be matching 1-d arrays")
        if (np.diff(pts) <= 0).any():
            raise ValueError("eval_points must be strictly increasing")
        if pts[0] < lo or (pts[-1] >= hi if self.channel == "hue" else pts[-1] > hi):
            raise ValueError("eval_points outside the channel domain")
        if (dens < 0).any():
            raise ValueError("densities must be non-negative")
        if self.bandwidth <= 0:
            raise NonPositiveBandwidth(f"bandwidth={self.bandwidth}")

    def integral(self) -> float:
        """Trapezoid integral over the domain; hue closes the circle."""
        pts, dens = self.eval_points, self.densities
        if self.channel == "hue":
            pts = np.append(pts, pts[0] + 360.0)
            dens = np.append(dens, dens[0])
        return float(np.trapezoid(dens, pts))


def default_grid(channel: str, points: int = DEFAULT_EVAL_POINTS) -> np.ndarray:
    """Evaluation grid covering the channel domain.

    Hue omits the right endpoint (360 aliases 0); S/L include both ends.
    """
    lo, hi = _check_channel(channel)
    if points < 2:
        raise ValueError("need at least 2 eval points")
    if channel == "hue":
        return np.linspace(lo, hi, points, endpoint=False)
    return np.linspace(lo, hi, points)


def histogram(values: np.ndarray, channel: str, bins: int) -> ChannelHistogram:
    """Equal-width histogram over the channel's full domain."""
    lo, hi = _check_channel(channel)
    if bins < 1:
        raise ValueError("bins must be >= 1")
    arr = _check_values(values, channel)
    counts, edges = np.histogram(arr, bins=bins, range=(lo, hi))
    return ChannelHistogram(channel, edges, counts)


def silverman_bandwidth(values: np.ndarray, channel: str) -> float:
    """Rule-of-thumb bandwidth 0.9*min(sigma, IQR/1.34)*n^(-1/5).

    Floored at 1e-3 of the domain width so degenerate samples (constant
    values, n = 1) still yield a usable kernel.
    """
    arr = _check_values(values, channel)
    lo, hi = DOMAINS[channel]
    n = arr.size
    sigma = float(np.std(arr))
    q75, q25 = np.percentile(arr, [75, 25])
    iqr = float(q75 - q25)
    spread = min(sigma, iqr / 1.34)
    bw = 0.9 * spread * n ** (-1.0 / 5.0)
    return max(bw, 1e-3 * (hi - lo))


def kde(
    values: np.ndarray,
    channel: str,
    bandwidth: float | str = "auto",
    eval_points: np.ndarray | None = None,
) -> DensityEstimate:
    """Boundary-corrected Gaussian KDE on a fixed evaluation grid."""
    lo, hi = _check_channel(channel)
    arr = _check_values(values, channel)
    if isinstance(bandwidth, str):
        if bandwidth != "auto":
            raise ValueError(f"bandwidth must be a positive number or 'auto', got {bandwidth!r}")
        bw = silverman_bandwidth(arr, channel)
    else:
        bw = float(bandwidth)
        if bw <= 0:
            raise NonPositiveBandwidth(f"bandwidth={bw}")

    pts = default_grid(channel) if eval_points is None else np.asarray(eval_points, dtype=float)
    n = arr.size
    norm = 1.0 / (n * bw * math.sqrt(2.0 * math.pi))

    if channel == "hue":
        shifts = [(hi - lo) * k for k in range(-HUE_WRAPS, HUE_WRAPS + 1)]
        sources = [(arr + s) for s in shifts]
    else:
        # reflect every sample at both domain ends
        sources = [arr, 2.0 * lo - arr, 2.0 * hi - arr]
    bounds = [(float(s.min()), float(s.max())) for s in sources]

    # exp(-0.5 z^2) underflows to exactly 0.0 once |z| exceeds ~38.7, so a
    # source block whose nearest sample is > 40 bandwidths from the whole
    # eval chunk contributes exactly zero and can be skipped unchanged
    cutoff = 40.0 * bw

    dens = np.empty(pts.size)
    for start in range(0, pts.size, _EVAL_CHUNK):
        chunk = pts[start : start + _EVAL_CHUNK, None]
        p_lo, p_hi = float(chunk[0, 0]), float(chunk[-1, 0])
        acc = np.zeros(chunk.shape[0])
        for src, (s_lo, s_hi) in zip(sources, bounds):
            if s_lo - p_hi > cutoff or p_lo - s_hi > cutoff:
                continue
            z = (chunk - src[None, :]) / bw
            acc += np.exp(-0.5 * z * z).sum(axis=1)
        dens[start : start + _EVAL_CHUNK] = acc * norm

    return DensityEstimate(channel, pts, dens, bw)
