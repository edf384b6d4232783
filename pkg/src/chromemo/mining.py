"""A-priori association rules between colors and emotions.

Each image becomes a transaction whose items are the colors it shows
(bins at or above a share threshold, achromatics included) and the
emotions it evokes (dominant labels). Mining is restricted to the rule
shape {one color} -> {set of emotions}: itemsets holding two colors or
more are pruned during candidate generation, which keeps the lattice
small without losing any rule of that shape.

For a rule c -> E over n transactions:

    support    = count(c and E) / n
    confidence = count(c and E) / count(c)
    lift       = confidence / (count(E) / n)

Lift above 1 means the color and the emotion set co-occur more often
than independence predicts; the strict filter drops lift == 1 exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .colors import ALL_BIN_NAMES, QuantizedPalette
from .emotions import EMOTION_LABELS, EmotionVector, dominant_emotions
from .errors import EmptyCorpus, NoTransactions

COLOR_PREFIX = "color:"
EMOTION_PREFIX = "emo:"

COLOR_ITEMS: frozenset[str] = frozenset(COLOR_PREFIX + n for n in ALL_BIN_NAMES)
EMOTION_ITEMS: frozenset[str] = frozenset(EMOTION_PREFIX + l for l in EMOTION_LABELS)

DEFAULT_MIN_SUPPORT = 0.05
DEFAULT_MIN_CONFIDENCE = 0.3
DEFAULT_MIN_LIFT = 1.0
DEFAULT_MAX_CONSEQUENT = 3


@dataclass(frozen=True)
class Transaction:
    """One image's binarized color and emotion items."""

    image_id: str
    items: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", frozenset(self.items))
        if not self.items:
            raise ValueError("transaction items must be non-empty")
        unknown = self.items - COLOR_ITEMS - EMOTION_ITEMS
        if unknown:
            raise ValueError(f"unknown items: {sorted(unknown)}")


@dataclass(frozen=True)
class AssociationRule:
    """{one color} -> {emotions} with its support, confidence, and lift."""

    antecedent: str
    consequent: frozenset[str]
    support: float
    confidence: float
    lift: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "consequent", frozenset(self.consequent))
        if self.antecedent not in COLOR_ITEMS:
            raise ValueError(f"antecedent must be a color item, got {self.antecedent!r}")
        if not self.consequent or not self.consequent <= EMOTION_ITEMS:
            raise ValueError("consequent must be a non-empty set of emotion items")
        if self.antecedent in self.consequent:
            raise ValueError("antecedent cannot appear in the consequent")
        if not 0.0 < self.support <= self.confidence <= 1.0:
            raise ValueError(
                f"need 0 < support <= confidence <= 1, got {self.support}, {self.confidence}"
            )
        if self.lift <= 0.0:
            raise ValueError(f"lift must be positive, got {self.lift}")

    def sort_key(self) -> tuple:
        return (-self.lift, -self.support, self.antecedent, tuple(sorted(self.consequent)))


def build_transactions(
    palettes: Mapping[str, QuantizedPalette],
    emotions: Mapping[str, EmotionVector],
    color_threshold: float = 0.05,
    emotion_threshold: float = 0.25,
    include_something_else: bool = False,
) -> list[Transaction]:
    """Binarize a joined corpus into transactions, sorted by image_id.

    Color items are the bins whose share is at least color_threshold;
    emotion items are the dominant labels. something_else is left out of
    transactions by default, keeping it away from rule consequents; images
    whose items all filter away are omitted.
    """
    if not palettes:
        raise EmptyCorpus("no palettes to binarize")
    out: list[Transaction] = []
    for image_id in sorted(palettes):
        if image_id not in emotions:
            continue
        items: set[str] = set()
        palette = palettes[image_id]
        for k, name in enumerate(ALL_BIN_NAMES):
            if palette.shares[k] >= color_threshold:
                items.add(COLOR_PREFIX + name)
        for label in dominant_emotions(emotions[image_id], emotion_threshold):
            if label == "something_else" and not include_something_else:
                continue
            items.add(EMOTION_PREFIX + label)
        if items:
            out.append(Transaction(image_id, frozenset(items)))
    if not out:
        raise EmptyCorpus("binarization left no transactions")
    return out


def _shape_ok(itemset: frozenset[str], max_consequent: int) -> bool:
    colors = sum(1 for i in itemset if i.startswith(COLOR_PREFIX))
    return colors <= 1 and len(itemset) - colors <= max_consequent


def frequent_itemsets(
    transactions: Sequence[Transaction],
    min_support: float,
    max_consequent: int = DEFAULT_MAX_CONSEQUENT,
) -> dict[frozenset[str], int]:
    """Level-wise frequent itemsets, shape-pruned, as itemset -> count."""
    if not transactions:
        raise NoTransactions("no transactions to mine")
    if not 0.0 < min_support <= 1.0:
        raise ValueError("min_support must be in (0, 1]")
    n = len(transactions)

    def count(candidates: Iterable[frozenset[str]]) -> dict[frozenset[str], int]:
        counts = {c: 0 for c in candidates}
        for t in transactions:
            for c in counts:
                if c <= t.items:
                    counts[c] += 1
        # compare in ratio form: k/n >= s and k >= s*n can disagree in
        # float arithmetic, and supports are defined as ratios
        return {c: k for c, k in counts.items() if k / n >= min_support}

    singles = sorted({item for t in transactions for item in t.items})
    frequent = count(frozenset({i}) for i in singles)
    out = dict(frequent)
    level = frequent
    while level:
        prev = sorted(level, key=lambda s: sorted(s))
        candidates: set[frozenset[str]] = set()
        for a, b in combinations(prev, 2):
            union = a | b
            if len(union) != len(a) + 1 or not _shape_ok(union, max_consequent):
                continue
            if all(union - {item} in level for item in union):
                candidates.add(union)
        level = count(candidates)
        out.update(level)
    return out


def mine_rules(
    transactions: Sequence[Transaction],
    min_support: float = DEFAULT_MIN_SUPPORT,
    min_confidence: float = DEFAULT_MIN_CONFIDENCE,
    max_consequent: int = DEFAULT_MAX_CONSEQUENT,
) -> list[AssociationRule]:
    """All {color} -> {emotions} rules meeting the support and confidence
    floors, sorted by lift then support (both descending), then name."""
    if not 0.0 < min_confidence <= 1.0:
        raise ValueError("min_confidence must be in (0, 1]")
    counts = frequent_itemsets(transactions, min_support, max_consequent)
    n = len(transactions)

    rules: list[AssociationRule] = []
    for itemset, joint in counts.items():
        colors = [i for i in itemset if i.startswith(COLOR_PREFIX)]
        if len(colors) != 1 or len(itemset) < 2:
            continue
        antecedent = colors[0]
        consequent = itemset - {antecedent}
        confidence = joint / counts[frozenset({antecedent})]
        if confidence < min_confidence:
            continue
        # consequent is a subset of a frequent itemset, hence frequent
        lift = confidence / (counts[consequent] / n)
        rules.append(
            AssociationRule(antecedent, consequent, joint / n, confidence, lift)
        )
    rules.sort(key=AssociationRule.sort_key)
    return rules


def filter_lift(
    rules: Sequence[AssociationRule], min_lift: float = DEFAULT_MIN_LIFT
) -> list[AssociationRule]:
    """Keep rules with lift strictly above the floor; order preserved."""
    return [r for r in rules if r.lift > min_lift]
