"""Color-harmony detection on the 12-position wheel.

Harmony templates are fixed index patterns on the cyclic wheel:

* analogous           {i, i+1, i+2}         12 templates
* complementary       {i, i+6}               6 templates
* split_complementary {i, i+5, i+7}         12 templates
* triad               {i, i+4, i+8}          4 templates
* tetrad              {i, j, i+6, j+6}      15 templates (i < j, j != i+6)

(all arithmetic mod 12). A template matches a palette when every one of
its members is present, so palettes can exhibit several harmonies at
once. Monochromatic (exactly one hue, neutrals allowed alongside) and
monotone (no chromatic hue at all) complete the vocabulary. Rectangular
schemes are the same thing as tetrads here; no separate label exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable

from .colors import QuantizedPalette
from .errors import InvalidHueIndex, NoInstances


class HarmonyType(Enum):
    MONOTONE = "monotone"
    MONOCHROMATIC = "monochromatic"
    ANALOGOUS = "analogous"
    COMPLEMENTARY = "complementary"
    SPLIT_COMPLEMENTARY = "split_complementary"
    TRIAD = "triad"
    TETRAD = "tetrad"


# Tie-break priority for dominant_harmony, strongest first.
_DOMINANCE_PRIORITY: dict[HarmonyType, int] = {
    HarmonyType.ANALOGOUS: 0,
    HarmonyType.COMPLEMENTARY: 1,
    HarmonyType.SPLIT_COMPLEMENTARY: 2,
    HarmonyType.TRIAD: 3,
    HarmonyType.TETRAD: 4,
    HarmonyType.MONOCHROMATIC: 5,
    HarmonyType.MONOTONE: 6,
}

_MEMBER_COUNT: dict[HarmonyType, int] = {
    HarmonyType.MONOTONE: 0,
    HarmonyType.MONOCHROMATIC: 1,
    HarmonyType.COMPLEMENTARY: 2,
    HarmonyType.ANALOGOUS: 3,
    HarmonyType.SPLIT_COMPLEMENTARY: 3,
    HarmonyType.TRIAD: 3,
    HarmonyType.TETRAD: 4,
}


def _build_templates() -> dict[HarmonyType, tuple[frozenset[int], ...]]:
    analogous = [frozenset({i, (i + 1) % 12, (i + 2) % 12}) for i in range(12)]
    complementary = [frozenset({i, i + 6}) for i in range(6)]
    split = [frozenset({i, (i + 5) % 12, (i + 7) % 12}) for i in range(12)]
    triad = [frozenset({i, i + 4, i + 8}) for i in range(4)]
    # a tetrad is any two distinct complementary pairs: C(6, 2) = 15
    tetrad = [a | b for a, b in combinations(complementary, 2)]
    return {
        HarmonyType.ANALOGOUS: tuple(analogous),
        HarmonyType.COMPLEMENTARY: tuple(complementary),
        HarmonyType.SPLIT_COMPLEMENTARY: tuple(split),
        HarmonyType.TRIAD: tuple(triad),
        HarmonyType.TETRAD: tuple(sorted(tetrad, key=lambda m: sorted(m))),
    }


TEMPLATES: dict[HarmonyType, tuple[frozenset[int], ...]] = _build_templates()

_TEMPLATE_SETS: dict[HarmonyType, frozenset[frozenset[int]]] = {
    t: frozenset(members) for t, members in TEMPLATES.items()
}


@dataclass(frozen=True)
class HarmonyInstance:
    """One detected harmony: its type, member hues, and their pixel share."""

    harmony_type: HarmonyType
    members: frozenset[int]
    combined_share: float = 0.0

    def __post_init__(self) -> None:
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        if len(members) != _MEMBER_COUNT[self.harmony_type]:
            raise ValueError(
                f"{self.harmony_type.value} needs {_MEMBER_COUNT[self.harmony_type]} "
                f"members, got {len(members)}"
            )
        if any(not 0 <= i <= 11 for i in members):
            raise InvalidHueIndex(f"hue indices outside [0, 11]: {sorted(members)}")
        template_kinds = (
            HarmonyType.ANALOGOUS,
            HarmonyType.COMPLEMENTARY,
            HarmonyType.SPLIT_COMPLEMENTARY,
            HarmonyType.TRIAD,
            HarmonyType.TETRAD,
        )
        if self.harmony_type in template_kinds and members not in _TEMPLATE_SETS[self.harmony_type]:
            raise ValueError(
                f"{sorted(members)} is not a valid {self.harmony_type.value} pattern"
            )
        if not 0.0 <= self.combined_share <= 1.0:
            raise ValueError(f"combined_share={self.combined_share} outside [0, 1]")

    def sort_key(self) -> tuple:
        return (_DOMINANCE_PRIORITY[self.harmony_type], tuple(sorted(self.members)))


@dataclass(frozen=True)
class PresenceConfig:
    """Minimum pixel share for a hue to count as present in an image."""

    presence_threshold: float = 0.05

    def __post_init__(self) -> None:
        if not 0.0 < self.presence_threshold < 1.0:
            raise ValueError("presence_threshold must be in (0, 1)")


def present_hues(palette: QuantizedPalette, cfg: PresenceConfig = PresenceConfig()) -> frozenset[int]:
    """Wheel indices whose pixel share meets the presence threshold."""
    return frozenset(
        i for i in range(12) if palette.shares[i] >= cfg.presence_threshold
    )


def detect_harmonies(hues: Iterable[int]) -> list[HarmonyInstance]:
    """Every harmony the given hue set exhibits, in deterministic order.

    Order: monochromatic (when it applies), then template matches grouped
    analogous / complementary / split_complementary / triad / tetrad, each
    group sorted by member tuple. Shares are left at zero; use
    dominant_harmony to weigh instances against a palette.
    """
    hue_set = frozenset(int(i) for i in hues)
    bad = [i for i in hue_set if not 0 <= i <= 11]
    if bad:
        raise InvalidHueIndex(f"hue indices outside [0, 11]: {sorted(bad)}")

    if not hue_set:
        return [HarmonyInstance(HarmonyType.MONOTONE, frozenset())]

    out: list[HarmonyInstance] = []
    if len(hue_set) == 1:
        out.append(HarmonyInstance(HarmonyType.MONOCHROMATIC, hue_set))
    for htype in (
        HarmonyType.ANALOGOUS,
        HarmonyType.COMPLEMENTARY,
        HarmonyType.SPLIT_COMPLEMENTARY,
        HarmonyType.TRIAD,
        HarmonyType.TETRAD,
    ):
        for members in sorted(TEMPLATES[htype], key=lambda m: sorted(m)):
            if members <= hue_set:
                out.append(HarmonyInstance(htype, members))
    return out


def dominant_harmony(
    instances: list[HarmonyInstance], palette: QuantizedPalette
) -> HarmonyInstance:
    """The instance covering the largest pixel share of the palette.

    Shares are recomputed from the palette. Ties go to the type priority
    analogous > complementary > split_complementary > triad > tetrad >
    monochromatic > monotone, then to the lexicographically smallest
    member tuple.
    """
    if not instances:
        raise NoInstances("no harmony instances to rank")
    weighted = [
        HarmonyInstance(
            inst.harmony_type,
            inst.members,
            float(sum(palette.shares[i] for i in inst.members)),
        )
        for inst in instances
    ]
    return min(weighted, key=lambda w: (-w.combined_share,) + w.sort_key())
