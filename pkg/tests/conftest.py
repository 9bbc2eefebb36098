"""Shared synthetic fixtures.

The transfer tests run on a constructed two-language world: the target
language is a letter-substitution cipher of the source, word embeddings
cluster around one anchor per emotion, and the target space is the
source space under a planted orthogonal rotation. Transfer in this world
is lossless, so a correct pipeline must score close to its monolingual
twin and every gap is attributable to the code under test.
"""

from __future__ import annotations

import codecs
from dataclasses import dataclass

import numpy as np
import pytest

from xlemo.align import BilingualDictionary
from xlemo.corpus import Document, LabeledCorpus, ParallelCorpus, make_document
from xlemo.embeddings import VectorSpace, build_space
from xlemo.labels import DEFAULT_LABELS
from xlemo.lexicon import EmotionLexicon, LexiconEntry

WORDS_PER_CLASS = 20
FILLER_WORDS = 15
LEXICON_WORDS_PER_CLASS = 6
INTENSITY_CYCLE = ("high", "medium", "low")


def rot13(word: str) -> str:
    return codecs.encode(word, "rot_13")


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q * np.sign(np.diag(r))


@dataclass
class CipherWorld:
    labels: tuple[str, ...]
    dim: int
    rotation: np.ndarray
    source_space: VectorSpace
    target_space: VectorSpace
    source_train: LabeledCorpus
    source_test: LabeledCorpus
    target_test: LabeledCorpus
    parallel: ParallelCorpus
    source_lexicon: EmotionLexicon
    target_lexicon: EmotionLexicon
    seed_dictionary: BilingualDictionary
    class_words: dict[str, list[str]]
    filler_words: list[str]


def _sample_tokens(rng: np.random.Generator, class_words: list[str], fillers: list[str]) -> list[str]:
    length = int(rng.integers(6, 11))
    tokens = []
    for _ in range(length):
        if rng.random() < 0.7:
            tokens.append(class_words[int(rng.integers(len(class_words)))])
        else:
            tokens.append(fillers[int(rng.integers(len(fillers)))])
    # at least one class cue so the document is classifiable
    if not any(tok in class_words for tok in tokens):
        tokens[0] = class_words[int(rng.integers(len(class_words)))]
    return tokens


def _make_docs(
    rng: np.random.Generator,
    n: int,
    prefix: str,
    labels: tuple[str, ...],
    class_words: dict[str, list[str]],
    fillers: list[str],
) -> list[Document]:
    docs = []
    for i in range(n):
        label = labels[i % len(labels)]
        tokens = _sample_tokens(rng, class_words[label], fillers)
        docs.append(make_document("%s-%d" % (prefix, i), "eng", tokens, gold_label=label))
    return docs


def build_cipher_world(
    seed: int = 4242,
    dim: int = 16,
    n_train: int = 240,
    n_test: int = 120,
    n_parallel: int = 300,
    noise: float = 0.08,
) -> CipherWorld:
    labels = DEFAULT_LABELS
    rng = np.random.default_rng(seed)

    anchors, _ = np.linalg.qr(rng.normal(size=(dim, len(labels))))
    anchors = anchors.T  # one orthonormal anchor per class

    class_words = {
        label: ["%sword%d" % (label, i) for i in range(WORDS_PER_CLASS)] for label in labels
    }
    fillers = ["filler%d" % i for i in range(FILLER_WORDS)]
    words: list[str] = []
    vectors: list[np.ndarray] = []
    for c, label in enumerate(labels):
        for word in class_words[label]:
            words.append(word)
            vectors.append(anchors[c] + noise * rng.normal(size=dim))
    for word in fillers:
        words.append(word)
        vectors.append(noise * rng.normal(size=dim))
    matrix = np.array(vectors)
    source_space = build_space("eng", words, matrix)

    rotation = random_orthogonal(dim, rng)
    target_space = build_space("tgt", [rot13(w) for w in words], matrix @ rotation.T)

    source_train = LabeledCorpus(
        documents=_make_docs(rng, n_train, "train", labels, class_words, fillers), label_set=labels
    )
    source_test_docs = _make_docs(rng, n_test, "test", labels, class_words, fillers)
    source_test = LabeledCorpus(documents=source_test_docs, label_set=labels)
    target_test = LabeledCorpus(
        documents=[
            make_document("tgt-%d" % i, "tgt", [rot13(t) for t in doc.tokens], gold_label=doc.gold_label)
            for i, doc in enumerate(source_test_docs)
        ],
        label_set=labels,
    )

    pairs = []
    for i in range(n_parallel):
        label = labels[i % len(labels)]
        tokens = _sample_tokens(rng, class_words[label], fillers)
        pairs.append((tokens, [rot13(t) for t in tokens]))
    parallel = ParallelCorpus(pairs=pairs, source_language="eng", target_language="tgt")

    source_lexicon = EmotionLexicon(language="eng")
    target_lexicon = EmotionLexicon(language="tgt")
    for label in labels:
        for i in range(LEXICON_WORDS_PER_CLASS):
            word = class_words[label][i]
            intensity = INTENSITY_CYCLE[i % len(INTENSITY_CYCLE)]
            source_lexicon.add(LexiconEntry(word, label, intensity))
            target_lexicon.add(LexiconEntry(rot13(word), label, intensity))

    seed_dictionary = BilingualDictionary(source_language="eng", target_language="tgt")
    for word in words:
        seed_dictionary.add(word, rot13(word), 1.0)

    return CipherWorld(
        labels=labels,
        dim=dim,
        rotation=rotation,
        source_space=source_space,
        target_space=target_space,
        source_train=source_train,
        source_test=source_test,
        target_test=target_test,
        parallel=parallel,
        source_lexicon=source_lexicon,
        target_lexicon=target_lexicon,
        seed_dictionary=seed_dictionary,
        class_words=class_words,
        filler_words=fillers,
    )


@pytest.fixture(scope="session")
def cipher_world() -> CipherWorld:
    return build_cipher_world()


def build_translation_corpus(
    seed: int = 99, n_words: int = 40, n_pairs: int = 400
) -> tuple[ParallelCorpus, dict[str, str]]:
    """Word-for-word translated sentences with a known dictionary."""
    rng = np.random.default_rng(seed)
    truth = {"src%d" % i: "tgt%d" % i for i in range(n_words)}
    source_words = sorted(truth)
    pairs = []
    for _ in range(n_pairs):
        length = int(rng.integers(4, 9))
        chosen = rng.choice(n_words, size=length, replace=False)
        src = [source_words[j] for j in chosen]
        pairs.append((src, [truth[w] for w in src]))
    return ParallelCorpus(pairs=pairs, source_language="src", target_language="tgt"), truth


def build_rotated_spaces(
    seed: int = 17, dim: int = 32, n_words: int = 1200, noise: float = 1e-3
) -> tuple[VectorSpace, VectorSpace, BilingualDictionary]:
    """Two spaces differing by a planted rotation plus slight noise."""
    rng = np.random.default_rng(seed)
    words = ["word%d" % i for i in range(n_words)]
    matrix = rng.normal(size=(n_words, dim))
    matrix /= np.linalg.norm(matrix, axis=1, keepdims=True)
    rotation = random_orthogonal(dim, rng)
    target = matrix @ rotation.T + noise * rng.normal(size=(n_words, dim))
    src_space = build_space("src", words, matrix)
    tgt_space = build_space("tgt", ["x" + w for w in words], target)
    seed_dict = BilingualDictionary(source_language="src", target_language="tgt")
    for w in words[: 2 * dim]:
        seed_dict.add(w, "x" + w, 1.0)
    return src_space, tgt_space, seed_dict
