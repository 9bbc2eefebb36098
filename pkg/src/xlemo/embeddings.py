"""Monolingual word-embedding spaces and the word2vec text format.

Files carry a "count dim" header followed by one "word v1 ... vd" line
per word; that is the format pretrained monolingual vectors ship in.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from xlemo.errors import InputError

log = logging.getLogger(__name__)

UNIT_NORM_TOL = 1e-6


@dataclass
class VectorSpace:
    """Vocabulary-indexed embedding matrix for one language."""

    language: str
    vocabulary: dict[str, int]
    matrix: np.ndarray
    unit_normalized: bool = False
    zero_rows: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        self.matrix = np.asarray(self.matrix, dtype=np.float64)
        if self.matrix.ndim != 2:
            raise InputError("embedding matrix must be 2-dimensional")
        rows = self.matrix.shape[0]
        indices = sorted(self.vocabulary.values())
        if len(self.vocabulary) != rows or indices != list(range(rows)):
            raise InputError("vocabulary indices must be exactly the rows 0..%d" % (rows - 1))
        if self.unit_normalized:
            norms = np.linalg.norm(self.matrix, axis=1)
            live = np.ones(rows, dtype=bool)
            if self.zero_rows:
                live[list(self.zero_rows)] = False
            if np.any(np.abs(norms[live] - 1.0) > UNIT_NORM_TOL):
                raise InputError("unit_normalized set but some rows are not unit length")

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def __len__(self) -> int:
        return self.matrix.shape[0]

    def __contains__(self, word: str) -> bool:
        return word in self.vocabulary

    def vector(self, word: str) -> np.ndarray:
        try:
            return self.matrix[self.vocabulary[word]]
        except KeyError:
            raise InputError("word %r not in the %s vocabulary" % (word, self.language)) from None

    def normalized(self) -> "VectorSpace":
        """Copy with unit-length rows; zero rows stay zero and are flagged."""
        norms = np.linalg.norm(self.matrix, axis=1, keepdims=True)
        zero = np.flatnonzero(norms[:, 0] == 0.0)
        if zero.size:
            log.warning("%s: %d zero rows left unnormalized", self.language, zero.size)
        safe = np.where(norms == 0.0, 1.0, norms)
        return VectorSpace(
            language=self.language,
            vocabulary=dict(self.vocabulary),
            matrix=self.matrix / safe,
            unit_normalized=True,
            zero_rows=frozenset(int(i) for i in zero),
        )


def build_space(language: str, words: list[str], matrix: np.ndarray) -> VectorSpace:
    """Space from a word list and matrix with matching row order."""
    if len(words) != len(set(words)):
        raise InputError("duplicate words in vocabulary")
    return VectorSpace(
        language=language,
        vocabulary={word: i for i, word in enumerate(words)},
        matrix=np.asarray(matrix, dtype=np.float64),
    )


def load_word2vec_text(path: str, language: str = "und") -> VectorSpace:
    """Load a word2vec-style text embedding file."""
    words: list[str] = []
    rows: list[np.ndarray] = []
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().split()
        if len(header) != 2:
            raise InputError("%s: expected 'count dim' header" % path)
        try:
            count, dim = int(header[0]), int(header[1])
        except ValueError as exc:
            raise InputError("%s: bad header %r" % (path, header)) from exc
        seen: set[str] = set()
        for lineno, line in enumerate(handle, start=2):
            parts = line.rstrip("\n").split(" ")
            if len(parts) < 2 and not line.strip():
                continue
            if len(parts) != dim + 1:
                raise InputError("%s: line %d: expected %d values, got %d" % (path, lineno, dim, len(parts) - 1))
            word = parts[0]
            if word in seen:
                raise InputError("%s: line %d: duplicate word %r" % (path, lineno, word))
            seen.add(word)
            try:
                rows.append(np.array([float(v) for v in parts[1:]], dtype=np.float64))
            except ValueError as exc:
                raise InputError("%s: line %d: %s" % (path, lineno, exc)) from exc
            words.append(word)
    if len(words) != count:
        raise InputError("%s: header declares %d words but file has %d" % (path, count, len(words)))
    matrix = np.vstack(rows) if rows else np.zeros((0, dim), dtype=np.float64)
    return build_space(language, words, matrix)


def save_word2vec_text(space: VectorSpace, path: str) -> None:
    """Write a space in word2vec text format with round-trip float precision."""
    words = sorted(space.vocabulary, key=space.vocabulary.get)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("%d %d\n" % (len(words), space.dim))
        for word in words:
            row = space.matrix[space.vocabulary[word]]
            handle.write(word + " " + " ".join(repr(float(v)) for v in row) + "\n")
