"""Exception types raised across the toolkit.

Every error the library raises deliberately derives from ChromemoError so
callers can catch the whole family at the CLI boundary.
"""


class ChromemoError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(ChromemoError):
    """A run configuration value is outside its documented domain."""


# --- color / sampling ---

class EmptyImage(ChromemoError):
    """Pixel sampling was asked to sample a zero-pixel raster."""


class EmptyPixelSet(ChromemoError):
    """Quantization received no pixels."""


# --- harmony ---

class InvalidHueIndex(ChromemoError):
    """A hue index outside the 12-position wheel was supplied."""


class NoInstances(ChromemoError):
    """Dominant-harmony selection received an empty instance list."""


# --- density ---

class EmptyInput(ChromemoError):
    """Histogram / density estimation received no values."""


class OutOfDomain(ChromemoError):
    """A channel value lies outside the channel's domain."""


class NonPositiveBandwidth(ChromemoError):
    """A kernel bandwidth must be strictly positive."""


# --- emotion sidecar ---

class MalformedFile(ChromemoError):
    """Sidecar header or row structure does not match the contract."""


class UnknownLabel(ChromemoError):
    """Sidecar header names an emotion outside the canonical nine."""


class NegativeProbability(ChromemoError):
    """An emotion probability is negative."""


class BadNormalization(ChromemoError):
    """An emotion row's sum falls outside the accepted tolerance band."""


class DuplicateImageId(ChromemoError):
    """Two sidecar rows (or corpus files) share one image id."""


# --- fusion ---

class InsufficientData(ChromemoError):
    """Fewer joined images than the statistic requires."""


# --- mining ---

class EmptyCorpus(ChromemoError):
    """No usable images (or joined records) to work with."""


class NoTransactions(ChromemoError):
    """Rule mining received an empty transaction list."""


# --- pipeline ---

class MissingDirectory(ChromemoError):
    """The input directory does not exist."""


class DecodeFailure(ChromemoError):
    """An image file could not be decoded."""


class JoinFailure(ChromemoError):
    """Fewer than the minimum matched palette/emotion pairs."""
