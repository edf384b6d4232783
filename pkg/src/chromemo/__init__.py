"""Batch analytics for color usage, harmony, and color-emotion association.

The toolkit decomposes an image corpus into HSL pixel statistics,
quantizes colors onto a 12-hue wheel with achromatic bins, detects
color-harmony templates, and (given per-image emotion probability
sidecars) correlates color and harmony with emotion, including a-priori
association rules of the shape {color} -> {emotions}.
"""

from .colors import (
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
from .density import (
    CHANNELS,
    DEFAULT_BINS,
    ChannelHistogram,
    DensityEstimate,
    default_grid,
    histogram,
    kde,
    silverman_bandwidth,
)
from .emotions import (
    EMOTION_LABELS,
    NEGATIVE_EMOTIONS,
    NEUTRAL_EMOTIONS,
    POSITIVE_EMOTIONS,
    SIDECAR_HEADER,
    EmotionVector,
    dominant_emotions,
    parse_sidecar,
    write_sidecar,
)
from .errors import ChromemoError
from .fusion import (
    CorrelationMatrix,
    EmotionRatioCurve,
    HarmonyEmotionRow,
    HarmonyEmotionTable,
    color_emotion_correlation,
    emotion_ratio_curves,
    harmony_emotion_table,
    join_ids,
    pearson,
)
from .harmony import (
    TEMPLATES,
    HarmonyInstance,
    HarmonyType,
    PresenceConfig,
    detect_harmonies,
    dominant_harmony,
    present_hues,
)
from .mining import (
    AssociationRule,
    Transaction,
    build_transactions,
    filter_lift,
    frequent_itemsets,
    mine_rules,
)
from .pipeline import (
    CorpusReport,
    PerImageRecord,
    RunConfig,
    analyze_image,
    discover_corpus,
    run,
)

__version__ = "0.1.0"

__all__ = [
    "ACHROMATIC_NAMES",
    "ALL_BINS",
    "ALL_BIN_NAMES",
    "CHANNELS",
    "DEFAULT_BINS",
    "EMOTION_LABELS",
    "HUE_ANCHORS_DEG",
    "HUE_NAMES",
    "NEGATIVE_EMOTIONS",
    "NEUTRAL_EMOTIONS",
    "POSITIVE_EMOTIONS",
    "SIDECAR_HEADER",
    "TEMPLATES",
    "AchromaticThresholds",
    "AssociationRule",
    "BinKind",
    "ChannelHistogram",
    "ChromemoError",
    "CorpusReport",
    "CorrelationMatrix",
    "DensityEstimate",
    "EmotionRatioCurve",
    "EmotionVector",
    "HarmonyEmotionRow",
    "HarmonyEmotionTable",
    "HarmonyInstance",
    "HarmonyType",
    "HslColor",
    "IttenBin",
    "PerImageRecord",
    "PresenceConfig",
    "QuantizedPalette",
    "RgbColor",
    "RunConfig",
    "SamplingConfig",
    "Transaction",
    "analyze_image",
    "assign_bin",
    "build_transactions",
    "color_emotion_correlation",
    "default_grid",
    "detect_harmonies",
    "discover_corpus",
    "dominant_emotions",
    "dominant_harmony",
    "emotion_ratio_curves",
    "filter_lift",
    "frequent_itemsets",
    "harmony_emotion_table",
    "histogram",
    "hsl_to_rgb",
    "hsl_to_rgb_array",
    "join_ids",
    "kde",
    "mine_rules",
    "parse_sidecar",
    "pearson",
    "present_hues",
    "quantize",
    "rgb_to_hsl",
    "rgb_to_hsl_array",
    "run",
    "sample_pixels",
    "silverman_bandwidth",
    "write_sidecar",
]
