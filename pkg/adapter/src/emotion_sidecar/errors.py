class AdapterError(Exception):
    """Base class for everything this package raises on purpose."""


class ConfigError(AdapterError):
    """Invalid mode/locator combination or option value."""


class MissingInput(AdapterError):
    """Input directory does not exist."""


class EmptyCorpus(AdapterError):
    """No image in the input directory could be decoded."""


class DecodeFailure(AdapterError):
    """A single image could not be decoded; callers skip and log it."""


class ModelLoadFailure(AdapterError):
    """The model locator could not be resolved to a callable."""


class InvalidScores(AdapterError):
    """The model broke the 9-non-negative-scores contract for an image."""
