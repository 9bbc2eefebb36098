"""Emotion-intensity lexicons and the 24-dim presence feature.

A lexicon entry ties a word to one of the eight emotions at an intensity
of high, medium, or low. The feature vector has one slot per (emotion,
intensity) pair: index = 3 * emotion_index + intensity_index with
emotions alphabetical and intensities ordered high, medium, low.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from xlemo.corpus import LabeledCorpus
from xlemo.errors import InputError
from xlemo.labels import PLUTCHIK8

log = logging.getLogger(__name__)

INTENSITIES = ("high", "medium", "low")
AF24_DIM = len(PLUTCHIK8) * len(INTENSITIES)

_EMOTION_INDEX = {emotion: i for i, emotion in enumerate(PLUTCHIK8)}
_INTENSITY_INDEX = {intensity: i for i, intensity in enumerate(INTENSITIES)}


def af24_index(emotion: str, intensity: str) -> int:
    """Slot of an (emotion, intensity) pair in the 24-dim feature."""
    if emotion not in _EMOTION_INDEX:
        raise InputError("unknown emotion %r" % emotion)
    if intensity not in _INTENSITY_INDEX:
        raise InputError("unknown intensity %r" % intensity)
    return 3 * _EMOTION_INDEX[emotion] + _INTENSITY_INDEX[intensity]


@dataclass(frozen=True)
class LexiconEntry:
    word: str
    emotion: str
    intensity: str

    def __post_init__(self) -> None:
        if self.emotion not in PLUTCHIK8:
            raise InputError("unknown emotion %r for word %r" % (self.emotion, self.word))
        if self.intensity not in INTENSITIES:
            raise InputError("unknown intensity %r for word %r" % (self.intensity, self.word))


@dataclass
class EmotionLexicon:
    """Word -> entries map for one language; duplicate triples are not kept."""

    language: str
    entries: dict[str, list[LexiconEntry]] = field(default_factory=dict)

    def __len__(self) -> int:
        return sum(len(v) for v in self.entries.values())

    def words(self) -> set[str]:
        return set(self.entries)

    def add(self, entry: LexiconEntry) -> bool:
        """Add an entry; returns False when the exact triple already exists."""
        existing = self.entries.setdefault(entry.word, [])
        if entry in existing:
            return False
        existing.append(entry)
        return True


def load_lexicon(path: str, language: str) -> EmotionLexicon:
    """Read a word/emotion/intensity TSV; duplicates dropped with a warning."""
    lexicon = EmotionLexicon(language=language)
    duplicates = 0
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise InputError("%s: line %d: expected 3 tab-separated columns, got %d" % (path, lineno, len(parts)))
            word, emotion, intensity = (p.strip().lower() for p in parts)
            try:
                entry = LexiconEntry(word=word, emotion=emotion, intensity=intensity)
            except InputError as exc:
                raise InputError("%s: line %d: %s" % (path, lineno, exc)) from exc
            if not lexicon.add(entry):
                duplicates += 1
    if duplicates:
        log.warning("%s: dropped %d duplicate lexicon entries", path, duplicates)
    return lexicon


def save_lexicon(lexicon: EmotionLexicon, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for word in sorted(lexicon.entries):
            for entry in lexicon.entries[word]:
                handle.write("%s\t%s\t%s\n" % (entry.word, entry.emotion, entry.intensity))


@dataclass
class TieBreakStats:
    """(word, emotion) frequency counts from a labeled training corpus."""

    counts: dict[tuple[str, str], int] = field(default_factory=dict)

    def count(self, word: str, emotion: str) -> int:
        return self.counts.get((word, emotion), 0)


def build_tie_break_stats(train: LabeledCorpus, lexicon: EmotionLexicon) -> TieBreakStats:
    """Count how often each lexicon word occurs under each of its emotions.

    For word w with lexicon emotions E, occurrences of w are counted in
    training documents whose gold label is in E, bucketed by that label.
    """
    emotions_for_word = {
        word: {entry.emotion for entry in entries} for word, entries in lexicon.entries.items()
    }
    counts: dict[tuple[str, str], int] = defaultdict(int)
    for doc in train.documents:
        for token in doc.tokens:
            emotions = emotions_for_word.get(token)
            if emotions and doc.gold_label in emotions:
                counts[(token, doc.gold_label)] += 1
    return TieBreakStats(counts=dict(counts))


def select_emotion(entries: list[LexiconEntry], stats: TieBreakStats) -> str:
    """Pick one emotion for a multi-emotion word.

    Highest tie-break count wins; ties (including the all-zero case) go
    to the alphabetically first emotion.
    """
    emotions = sorted({entry.emotion for entry in entries})
    word = entries[0].word
    best = emotions[0]
    best_count = stats.count(word, best)
    for emotion in emotions[1:]:
        c = stats.count(word, emotion)
        if c > best_count:
            best, best_count = emotion, c
    return best


def af24_features(tokens: list[str], lexicon: EmotionLexicon, stats: TieBreakStats) -> np.ndarray:
    """24-dim binary presence feature for a token sequence.

    Each lexicon token contributes 1s at (selected emotion, intensity)
    slots; contributions OR-accumulate across tokens, so the result is
    order-independent.
    """
    vec = np.zeros(AF24_DIM, dtype=np.float64)
    for token in tokens:
        entries = lexicon.entries.get(token)
        if not entries:
            continue
        emotion = select_emotion(entries, stats)
        for entry in entries:
            if entry.emotion == emotion:
                vec[af24_index(entry.emotion, entry.intensity)] = 1.0
    return vec


def induce_target_lexicon(dictionary, source_lexicon: EmotionLexicon, language: str | None = None) -> EmotionLexicon:
    """Carry source-lexicon entries across a bilingual dictionary.

    Every (source, target) pair whose source word has entries adds those
    entries under the target word; multiple sources mapping to one
    target union their entries.
    """
    if language is None:
        language = getattr(dictionary, "target_language", None) or "und"
    induced = EmotionLexicon(language=language)
    for source_word, target_word in sorted(dictionary.pairs):
        for entry in source_lexicon.entries.get(source_word, ()):
            induced.add(LexiconEntry(word=target_word, emotion=entry.emotion, intensity=entry.intensity))
    return induced


def load_pivot_map(path: str) -> dict[str, str]:
    """Read a target-word TAB pivot-word TSV into a substitution map."""
    pivot: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise InputError("%s: line %d: expected 2 tab-separated columns, got %d" % (path, lineno, len(parts)))
            target, replacement = (p.strip() for p in parts)
            if not target or not replacement or " " in target or " " in replacement:
                raise InputError("%s: line %d: pivot entries must be single tokens" % (path, lineno))
            pivot[target] = replacement
    return pivot


def pivot_substitute(tokens: list[str], pivot_map: dict[str, str]) -> list[str]:
    """Replace mapped tokens by their pivot-language equivalents."""
    return [pivot_map.get(token, token) for token in tokens]
