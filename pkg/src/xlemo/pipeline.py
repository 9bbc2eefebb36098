"""End-to-end transfer recipes.

Four ways to label emotion in a language without labeled training data:
project soft labels across a parallel corpus and retrain, align
embedding spaces and reuse the source classifier directly, pivot the
test text into a better-resourced language first, or draw labels at
random from the training prior as the floor to beat.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from xlemo.align import (
    AlignmentMap,
    BilingualDictionary,
    identical_string_seed,
    map_space,
    procrustes_align,
)
from xlemo.corpus import (
    Document,
    LabeledCorpus,
    ParallelCorpus,
    confidence_filter,
    label_prior,
    make_document,
)
from xlemo.embeddings import VectorSpace
from xlemo.errors import InputError
from xlemo.evaluation import EvalReport, build_report
from xlemo.lexicon import EmotionLexicon, TieBreakStats, build_tie_break_stats, pivot_substitute
from xlemo.model import (
    ClassifierParams,
    EncodingMode,
    PredictionResult,
    TrainConfig,
    TrainResult,
    init_params,
    predict,
    train,
)

log = logging.getLogger(__name__)

DEFAULT_PROJECTION_THRESHOLD = 0.9
DEFAULT_MIN_SEED_OVERLAP = 50


@dataclass(frozen=True)
class ModelSpec:
    """Architecture choices shared by every recipe."""

    kind: str = "birnn_attention"
    use_af24: bool = False
    hidden_size: int = 70
    attention_size: int = 70
    mlp_sizes: tuple[int, ...] = (50, 50, 50)
    init_seed: int = 42

    def mode(self) -> EncodingMode:
        return EncodingMode(kind=self.kind, use_af24=self.use_af24)

    def build_params(self, labels: tuple[str, ...], emb_dim: int) -> ClassifierParams:
        return init_params(
            mode=self.mode(),
            labels=labels,
            emb_dim=emb_dim,
            hidden_size=self.hidden_size,
            attention_size=self.attention_size,
            mlp_sizes=self.mlp_sizes,
            seed=self.init_seed,
        )

    def method_name(self) -> str:
        base = "sentence-transfer" if self.kind == "precomputed_vectors" else "word-transfer"
        return base + "-af24" if self.use_af24 else base


@dataclass
class ProjectionRun:
    """Everything produced by one annotation-projection round."""

    source_result: TrainResult
    target_result: TrainResult
    projected: LabeledCorpus
    counts: dict[str, int] = field(default_factory=dict)


def annotation_projection(
    source_train: LabeledCorpus,
    parallel: ParallelCorpus,
    source_space: VectorSpace,
    target_space: VectorSpace,
    spec: ModelSpec | None = None,
    config: TrainConfig | None = None,
    threshold: float = DEFAULT_PROJECTION_THRESHOLD,
    source_lexicon: EmotionLexicon | None = None,
    target_lexicon: EmotionLexicon | None = None,
) -> ProjectionRun:
    """Train on the source language, label the parallel corpus, keep the
    confident target sides, and train a target-language classifier.

    Soft probabilities transfer unchanged from each source sentence to
    its aligned target sentence; the confidence filter then decides which
    projected labels are trustworthy enough to train on.
    """
    spec = spec or ModelSpec()
    config = config or TrainConfig()
    if source_train.language and parallel.source_language != "und" and source_train.language != parallel.source_language:
        raise InputError(
            "training language %r does not match the parallel source side %r"
            % (source_train.language, parallel.source_language)
        )

    source_stats = (
        build_tie_break_stats(source_train, source_lexicon) if spec.use_af24 and source_lexicon else None
    )
    source_params = spec.build_params(source_train.label_set, source_space.dim)
    source_result = train(
        source_train, source_params, config, space=source_space, lexicon=source_lexicon, tie_stats=source_stats
    )

    source_docs = [
        make_document("pair-%d" % i, parallel.source_language, src)
        for i, (src, _) in enumerate(parallel.pairs)
    ]
    predicted = predict(
        source_result.params, source_docs, space=source_space, lexicon=source_lexicon, tie_stats=source_stats
    )
    target_docs: list[Document] = [
        make_document("pair-%d" % i, parallel.target_language, tgt, soft_probs=predicted.soft_probs(i))
        for i, (_, tgt) in enumerate(parallel.pairs)
    ]
    projected = confidence_filter(target_docs, threshold, source_train.label_set)
    if len(projected) == 0:
        raise InputError(
            "no projected document reached confidence %r; lower the threshold or train longer" % threshold
        )
    log.info("projected %d of %d parallel pairs at confidence >= %s", len(projected), len(parallel), threshold)

    target_stats = (
        build_tie_break_stats(projected, target_lexicon) if spec.use_af24 and target_lexicon else None
    )
    target_params = spec.build_params(projected.label_set, target_space.dim)
    target_result = train(
        projected, target_params, config, space=target_space, lexicon=target_lexicon, tie_stats=target_stats
    )
    return ProjectionRun(
        source_result=source_result,
        target_result=target_result,
        projected=projected,
        counts={
            "source_documents": len(source_train),
            "parallel_pairs": len(parallel),
            "projected_documents": len(projected),
            "filtered_out": len(parallel) - len(projected),
        },
    )


@dataclass
class TransferRun:
    """A trained transfer classifier plus its target-side evaluation."""

    train_result: TrainResult
    predictions: PredictionResult
    report: EvalReport
    alignment: AlignmentMap | None = None
    counts: dict[str, int] = field(default_factory=dict)


def direct_transfer(
    source_train: LabeledCorpus,
    target_test: LabeledCorpus,
    source_space: VectorSpace,
    target_space: VectorSpace,
    spec: ModelSpec | None = None,
    config: TrainConfig | None = None,
    seed_dictionary: BilingualDictionary | None = None,
    source_lexicon: EmotionLexicon | None = None,
    target_lexicon: EmotionLexicon | None = None,
    min_seed_overlap: int = DEFAULT_MIN_SEED_OVERLAP,
) -> TransferRun:
    """Map the source space onto the target space, train there, and
    classify the target test set with no target labels involved.

    The seed dictionary defaults to identically spelled words. Because
    embeddings stay outside the trained weights, the classifier trained
    on mapped source vectors reads target vectors unchanged at test time.
    The target-side lexicon feature falls back to alphabetical
    tie-breaking since no labeled target text exists to count against.
    """
    spec = spec or ModelSpec()
    config = config or TrainConfig()
    if spec.kind == "precomputed_vectors":
        raise InputError("direct transfer needs a word-level encoding mode")
    if target_test.label_set != source_train.label_set:
        raise InputError(
            "label sets differ: %s vs %s" % (source_train.label_set, target_test.label_set)
        )

    seed = seed_dictionary or identical_string_seed(source_space, target_space)
    usable = sum(
        1 for (s, t) in seed.pairs if s in source_space.vocabulary and t in target_space.vocabulary
    )
    if usable < min_seed_overlap:
        log.warning("only %d usable seed pairs (floor %d); the mapping may be unreliable", usable, min_seed_overlap)
    alignment = procrustes_align(source_space, target_space, seed)
    aligned_source = map_space(source_space, alignment)

    source_stats = (
        build_tie_break_stats(source_train, source_lexicon) if spec.use_af24 and source_lexicon else None
    )
    params = spec.build_params(source_train.label_set, source_space.dim)
    train_result = train(
        source_train, params, config, space=aligned_source, lexicon=source_lexicon, tie_stats=source_stats
    )
    predictions = predict(
        train_result.params,
        target_test.documents,
        space=target_space,
        lexicon=target_lexicon,
        tie_stats=TieBreakStats() if spec.use_af24 else None,
    )
    gold = [doc.gold_label for doc in target_test.documents]
    report = build_report(
        gold,
        predictions.labels,
        labels=target_test.label_set,
        language=target_test.language or target_space.language,
        method=spec.method_name(),
        seed=config.seed,
    )
    return TransferRun(
        train_result=train_result,
        predictions=predictions,
        report=report,
        alignment=alignment,
        counts={
            "seed_pairs": len(seed),
            "usable_seed_pairs": usable,
            "train_documents": len(source_train),
            "test_documents": len(target_test),
        },
    )


def pivoted_transfer(
    source_train: LabeledCorpus,
    target_test: LabeledCorpus,
    pivot_map: dict[str, str],
    source_space: VectorSpace,
    intermediate_space: VectorSpace,
    spec: ModelSpec | None = None,
    config: TrainConfig | None = None,
    seed_dictionary: BilingualDictionary | None = None,
    source_lexicon: EmotionLexicon | None = None,
    intermediate_lexicon: EmotionLexicon | None = None,
    min_seed_overlap: int = DEFAULT_MIN_SEED_OVERLAP,
) -> TransferRun:
    """Direct transfer for a language with no embeddings of its own.

    Test tokens with a pivot entry are replaced by their counterparts in
    a related, better-resourced language, and the source-to-intermediate
    transfer classifier does the rest. The report keeps the original
    test language.
    """
    replaced = 0
    substituted_docs = []
    for doc in target_test.documents:
        new_tokens = pivot_substitute(doc.tokens, pivot_map)
        replaced += sum(1 for old, new in zip(doc.tokens, new_tokens) if old != new)
        substituted_docs.append(
            make_document(doc.id, doc.language, new_tokens, gold_label=doc.gold_label, genre=doc.genre)
        )
    substituted = LabeledCorpus(documents=substituted_docs, label_set=target_test.label_set)
    if replaced == 0:
        log.warning("the pivot map replaced no tokens; transfer will see the text unchanged")

    run = direct_transfer(
        source_train,
        substituted,
        source_space,
        intermediate_space,
        spec=spec,
        config=config,
        seed_dictionary=seed_dictionary,
        source_lexicon=source_lexicon,
        target_lexicon=intermediate_lexicon,
        min_seed_overlap=min_seed_overlap,
    )
    run.counts["pivot_replaced_tokens"] = replaced
    return run


def sentence_transfer(
    source_train: LabeledCorpus,
    target_test: LabeledCorpus,
    source_vectors: dict[str, np.ndarray],
    target_vectors: dict[str, np.ndarray],
    spec: ModelSpec | None = None,
    config: TrainConfig | None = None,
) -> TransferRun:
    """Train and test on precomputed sentence vectors that already share
    one space, so no alignment step is needed."""
    spec = spec or ModelSpec(kind="precomputed_vectors")
    config = config or TrainConfig()
    if spec.kind != "precomputed_vectors":
        raise InputError("sentence transfer needs the precomputed_vectors mode")
    dims = {v.shape for v in source_vectors.values()} | {v.shape for v in target_vectors.values()}
    if len(dims) != 1:
        raise InputError("sentence vectors disagree on dimension: %s" % sorted(dims))
    dim = next(iter(dims))[0]

    params = spec.build_params(source_train.label_set, dim)
    train_result = train(source_train, params, config, doc_vectors=source_vectors)
    predictions = predict(train_result.params, target_test.documents, doc_vectors=target_vectors)
    gold = [doc.gold_label for doc in target_test.documents]
    report = build_report(
        gold,
        predictions.labels,
        labels=target_test.label_set,
        language=target_test.language or "und",
        method=spec.method_name(),
        seed=config.seed,
    )
    return TransferRun(
        train_result=train_result,
        predictions=predictions,
        report=report,
        counts={"train_documents": len(source_train), "test_documents": len(target_test)},
    )


def random_baseline(
    prior: dict[str, float] | LabeledCorpus,
    test: LabeledCorpus,
    seed: int = 42,
    uniform: bool = False,
) -> tuple[PredictionResult, EvalReport]:
    """Labels drawn from the training prior (or uniformly); the floor any
    trained transfer method has to beat."""
    label_set = test.label_set
    if uniform:
        p = np.full(len(label_set), 1.0 / len(label_set))
    else:
        prior_map = label_prior(prior) if isinstance(prior, LabeledCorpus) else dict(prior)
        if set(prior_map) != set(label_set):
            raise InputError("prior labels %s do not match the test label set %s" % (sorted(prior_map), label_set))
        p = np.array([prior_map[label] for label in label_set], dtype=np.float64)
        if np.any(p < 0.0) or abs(float(p.sum()) - 1.0) > 1e-6:
            raise InputError("prior is not a probability distribution")
        p = p / p.sum()
    rng = np.random.default_rng(seed)
    draws = rng.choice(len(label_set), size=len(test), p=p)
    drawn = [label_set[i] for i in draws]
    probabilities = np.zeros((len(test), len(label_set)))
    for i, j in enumerate(draws):
        probabilities[i, j] = 1.0
    predictions = PredictionResult(
        label_set=label_set, labels=drawn, probabilities=probabilities, all_oov=[False] * len(test)
    )
    gold = [doc.gold_label for doc in test.documents]
    report = build_report(
        gold, drawn, labels=label_set, language=test.language or "und", method="random-baseline", seed=seed
    )
    return predictions, report
