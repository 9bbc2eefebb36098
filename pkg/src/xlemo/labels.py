"""Emotion label vocabulary and canonicalization.

The full inventory is the eight basic emotions, kept in alphabetical
order so every index-based structure (af24, output layers, reports) has
one fixed layout. A run works with a configured subset, by default
anger/fear/joy.
"""

from __future__ import annotations

from xlemo.errors import InputError

PLUTCHIK8 = (
    "anger",
    "anticipation",
    "disgust",
    "fear",
    "joy",
    "sadness",
    "surprise",
    "trust",
)

DEFAULT_LABELS = ("anger", "fear", "joy")

GENRES = ("news", "blog", "tweet", "mixed")


def canonical_label(raw: str) -> str:
    """Lowercase a label identifier; labels are case-insensitive."""
    return raw.strip().lower()


def validate_label(raw: str, label_set: tuple[str, ...]) -> str:
    """Canonicalize and check membership in the active label set."""
    label = canonical_label(raw)
    if label not in label_set:
        raise InputError(
            "unknown label %r (active set: %s)" % (raw, ", ".join(label_set))
        )
    return label


def validate_label_set(labels: tuple[str, ...]) -> tuple[str, ...]:
    """Canonicalize an active label set; all members must be Plutchik-8."""
    canon = tuple(canonical_label(l) for l in labels)
    for label in canon:
        if label not in PLUTCHIK8:
            raise InputError("label %r is not one of the eight basic emotions" % label)
    if len(set(canon)) != len(canon):
        raise InputError("duplicate labels in label set: %s" % (canon,))
    if not canon:
        raise InputError("label set must not be empty")
    return canon
