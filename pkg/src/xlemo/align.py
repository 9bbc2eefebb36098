"""Word alignment and embedding-space alignment.

Two routes to a shared bilingual vocabulary or space: expectation
maximization over sentence pairs for translation probabilities, and the
closed-form orthogonal map between two monolingual embedding spaces from
a seed dictionary, with cosine or hubness-corrected retrieval on top.
"""

from __future__ import annotations

import json
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from xlemo.corpus import ParallelCorpus
from xlemo.embeddings import VectorSpace
from xlemo.errors import InputError, NumericError

log = logging.getLogger(__name__)

NULL_TOKEN = "<NULL>"
ROW_SUM_TOL = 1e-9
ORTHOGONALITY_TOL = 1e-6
CSLS_NEIGHBORS = 10


@dataclass
class TranslationTable:
    """Sparse t(target|source) probabilities plus co-occurrence counts.

    The source vocabulary includes NULL_TOKEN; every source row sums to 1.
    Co-occurrence counts are sentence-pair counts, used to clean up
    extracted dictionaries.
    """

    probs: dict[str, dict[str, float]]
    cooccur: dict[tuple[str, str], int]
    source_language: str = "und"
    target_language: str = "und"
    log_likelihoods: list[float] = field(default_factory=list)

    def prob(self, target: str, source: str) -> float:
        return self.probs.get(source, {}).get(target, 0.0)

    def validate(self) -> None:
        for source, row in self.probs.items():
            total = sum(row.values())
            if abs(total - 1.0) > ROW_SUM_TOL:
                raise NumericError("row for %r sums to %.12f" % (source, total))
            for p in row.values():
                if not 0.0 <= p <= 1.0:
                    raise NumericError("probability out of range in row %r" % source)


@dataclass
class BilingualDictionary:
    """Extracted (source, target) pairs with their extraction scores."""

    pairs: dict[tuple[str, str], float] = field(default_factory=dict)
    source_language: str = "und"
    target_language: str = "und"

    def __len__(self) -> int:
        return len(self.pairs)

    def add(self, source: str, target: str, score: float) -> None:
        self.pairs[(source, target)] = score


def train_ibm1(parallel: ParallelCorpus, iterations: int = 5) -> TranslationTable:
    """IBM Model 1 EM over a parallel corpus.

    Initializes t(t|s) uniform over co-occurring pairs (plus NULL against
    everything), then alternates expected-count collection and per-source
    renormalization. The corpus log-likelihood is recorded each iteration
    and must never decrease.
    """
    if len(parallel) == 0:
        raise InputError("cannot train on an empty parallel corpus")
    if iterations < 1:
        raise InputError("iterations must be >= 1, got %d" % iterations)

    candidates: dict[str, set[str]] = defaultdict(set)
    cooccur: dict[tuple[str, str], int] = defaultdict(int)
    target_vocab: set[str] = set()
    for src_tokens, tgt_tokens in parallel.pairs:
        src_set = set(src_tokens) | {NULL_TOKEN}
        tgt_set = set(tgt_tokens)
        target_vocab |= tgt_set
        for s in src_set:
            candidates[s] |= tgt_set
            for t in tgt_set:
                cooccur[(s, t)] += 1
    candidates[NULL_TOKEN] = set(target_vocab)

    probs: dict[str, dict[str, float]] = {}
    for s, targets in candidates.items():
        uniform = 1.0 / len(targets)
        probs[s] = {t: uniform for t in targets}

    log_likelihoods: list[float] = []
    for iteration in range(iterations):
        counts: dict[str, dict[str, float]] = {s: defaultdict(float) for s in probs}
        totals: dict[str, float] = defaultdict(float)
        ll = 0.0
        for src_tokens, tgt_tokens in parallel.pairs:
            sources = list(src_tokens) + [NULL_TOKEN]
            log_prior = math.log(len(sources))
            for t in tgt_tokens:
                row_probs = [probs[s].get(t, 0.0) for s in sources]
                denom = sum(row_probs)
                ll += math.log(denom) - log_prior
                for s, p in zip(sources, row_probs):
                    if p > 0.0:
                        share = p / denom
                        counts[s][t] += share
                        totals[s] += share
        if log_likelihoods and ll < log_likelihoods[-1] - 1e-9:
            raise NumericError(
                "log-likelihood decreased at iteration %d: %.9f -> %.9f" % (iteration, log_likelihoods[-1], ll)
            )
        log_likelihoods.append(ll)
        for s in probs:
            total = totals[s]
            if total > 0.0:
                probs[s] = {t: c / total for t, c in counts[s].items()}

    table = TranslationTable(
        probs=probs,
        cooccur=dict(cooccur),
        source_language=parallel.source_language,
        target_language=parallel.target_language,
        log_likelihoods=log_likelihoods,
    )
    table.validate()
    return table


def extract_dictionary(table: TranslationTable, min_prob: float = 0.1, min_cooccur: int = 2) -> BilingualDictionary:
    """Best-translation pairs passing probability and co-occurrence floors.

    Each source word contributes its argmax target (ties broken by word
    order); NULL never appears on either side of an extracted pair.
    """
    dictionary = BilingualDictionary(
        source_language=table.source_language, target_language=table.target_language
    )
    for source in sorted(table.probs):
        if source == NULL_TOKEN:
            continue
        row = table.probs[source]
        if not row:
            continue
        best_target = min(row, key=lambda t: (-row[t], t))
        if best_target == NULL_TOKEN:
            continue
        best_prob = row[best_target]
        if best_prob < min_prob:
            continue
        if table.cooccur.get((source, best_target), 0) < min_cooccur:
            continue
        dictionary.add(source, best_target, best_prob)
    return dictionary


def load_dictionary_tsv(path: str, source_language: str = "und", target_language: str = "und") -> BilingualDictionary:
    """Read a source/target/score TSV (score column optional)."""
    dictionary = BilingualDictionary(source_language=source_language, target_language=target_language)
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) not in (2, 3):
                raise InputError("%s: line %d: expected 2 or 3 columns, got %d" % (path, lineno, len(parts)))
            score = float(parts[2]) if len(parts) == 3 else 1.0
            dictionary.add(parts[0], parts[1], score)
    return dictionary


def save_dictionary_tsv(dictionary: BilingualDictionary, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for (source, target) in sorted(dictionary.pairs):
            handle.write("%s\t%s\t%s\n" % (source, target, repr(float(dictionary.pairs[(source, target)]))))


def identical_string_seed(src_space: VectorSpace, tgt_space: VectorSpace) -> BilingualDictionary:
    """Seed dictionary from words spelled identically in both vocabularies."""
    dictionary = BilingualDictionary(source_language=src_space.language, target_language=tgt_space.language)
    for word in sorted(set(src_space.vocabulary) & set(tgt_space.vocabulary)):
        dictionary.add(word, word, 1.0)
    return dictionary


@dataclass
class AlignmentMap:
    """Orthogonal map from the source space into the target space."""

    matrix: np.ndarray
    source_language: str = "und"
    target_language: str = "und"

    def __post_init__(self) -> None:
        self.matrix = np.asarray(self.matrix, dtype=np.float64)
        d = self.matrix.shape[0]
        if self.matrix.shape != (d, d):
            raise InputError("alignment matrix must be square")
        residual = np.max(np.abs(self.matrix.T @ self.matrix - np.eye(d)))
        if residual > ORTHOGONALITY_TOL:
            raise NumericError("alignment map is not orthogonal (max residual %.3e)" % residual)


def save_alignment(alignment: AlignmentMap, path: str) -> None:
    payload = {
        "source_language": alignment.source_language,
        "target_language": alignment.target_language,
        "matrix": [[float(v) for v in row] for row in alignment.matrix],
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, indent=2)
        handle.write("\n")


def load_alignment(path: str) -> AlignmentMap:
    with open(path, encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as err:
            raise InputError("%s: not valid JSON: %s" % (path, err)) from err
    return AlignmentMap(
        matrix=np.array(payload["matrix"], dtype=np.float64),
        source_language=payload.get("source_language", "und"),
        target_language=payload.get("target_language", "und"),
    )


def _fix_svd_signs(u: np.ndarray, vt: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Make each left singular vector's leading nonzero entry non-negative."""
    for k in range(u.shape[1]):
        col = u[:, k]
        nonzero = np.flatnonzero(np.abs(col) > 1e-12)
        if nonzero.size and col[nonzero[0]] < 0.0:
            u[:, k] = -col
            vt[k, :] = -vt[k, :]
    return u, vt


def procrustes_align(src: VectorSpace, tgt: VectorSpace, seed: BilingualDictionary) -> AlignmentMap:
    """Orthogonal map W minimizing ||W X - Y||_F over the seed pairs.

    X and Y stack the seed source and target vectors as columns; the
    solution is U V^T from the SVD of Y X^T. Seed pairs are sorted before
    stacking so the result is invariant to their input order.
    """
    if src.dim != tgt.dim:
        raise InputError("dimension mismatch: %d vs %d" % (src.dim, tgt.dim))
    usable = [
        (s, t) for (s, t) in sorted(seed.pairs) if s in src.vocabulary and t in tgt.vocabulary
    ]
    if len(usable) < 3:
        raise InputError("only %d usable seed pairs; need at least 3" % len(usable))
    if len(usable) < src.dim:
        log.warning("only %d seed pairs for a %d-dim space; map may be underdetermined", len(usable), src.dim)
    x = src.matrix[[src.vocabulary[s] for s, _ in usable]].T
    y = tgt.matrix[[tgt.vocabulary[t] for _, t in usable]].T
    u, _, vt = np.linalg.svd(y @ x.T)
    u, vt = _fix_svd_signs(u, vt)
    return AlignmentMap(matrix=u @ vt, source_language=src.language, target_language=tgt.language)


def map_space(space: VectorSpace, alignment: AlignmentMap) -> VectorSpace:
    """Apply the orthogonal map to every row; vocabulary is untouched."""
    if space.dim != alignment.matrix.shape[1]:
        raise InputError("dimension mismatch: space %d vs map %d" % (space.dim, alignment.matrix.shape[1]))
    return VectorSpace(
        language=space.language,
        vocabulary=dict(space.vocabulary),
        matrix=space.matrix @ alignment.matrix.T,
        unit_normalized=space.unit_normalized,
        zero_rows=space.zero_rows,
    )


def _normalized_rows(matrix: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    return matrix / np.where(norms == 0.0, 1.0, norms)


def _mean_topk(similarities: np.ndarray, k: int) -> np.ndarray:
    """Row-wise mean of the k largest entries."""
    k = min(k, similarities.shape[1])
    part = np.partition(similarities, similarities.shape[1] - k, axis=1)[:, -k:]
    return part.mean(axis=1)


def translate_retrieve(
    word: str,
    src_space_aligned: VectorSpace,
    tgt_space: VectorSpace,
    k: int = 1,
    metric: str = "cosine",
) -> list[tuple[str, float]]:
    """Top-k target translations of one source word, best first."""
    results = translate_retrieve_batch([word], src_space_aligned, tgt_space, k, metric)
    return results[word]


def translate_retrieve_batch(
    words: list[str],
    src_space_aligned: VectorSpace,
    tgt_space: VectorSpace,
    k: int = 1,
    metric: str = "cosine",
) -> dict[str, list[tuple[str, float]]]:
    """Batched retrieval; the hubness penalty terms are computed once.

    The score is cosine similarity, or with metric="csls" the corrected
    2*cos(x, y) - r_T(x) - r_S(y) where r_* are mean similarities of the
    10 nearest neighbors in the other space. Ties break by target
    vocabulary order.
    """
    if k < 1:
        raise InputError("k must be >= 1, got %d" % k)
    if metric not in ("cosine", "csls"):
        raise InputError("unknown metric %r" % metric)
    for word in words:
        if word not in src_space_aligned.vocabulary:
            raise InputError("word %r not in the source vocabulary" % word)
    src_norm = _normalized_rows(src_space_aligned.matrix)
    tgt_norm = _normalized_rows(tgt_space.matrix)
    tgt_words = sorted(tgt_space.vocabulary, key=tgt_space.vocabulary.get)
    query_rows = np.array([src_space_aligned.vocabulary[w] for w in words])
    sims = src_norm[query_rows] @ tgt_norm.T  # queries x targets

    if metric == "csls":
        # r_S: per target word, mean cosine of its nearest source neighbors
        r_s = _mean_topk(tgt_norm @ src_norm.T, CSLS_NEIGHBORS)
        r_t_query = _mean_topk(sims, CSLS_NEIGHBORS)
        scores = 2.0 * sims - r_t_query[:, None] - r_s[None, :]
    else:
        scores = sims

    k_eff = min(k, len(tgt_words))
    out: dict[str, list[tuple[str, float]]] = {}
    for qi, word in enumerate(words):
        order = np.argsort(-scores[qi], kind="stable")[:k_eff]
        out[word] = [(tgt_words[j], float(scores[qi, j])) for j in order]
    return out
