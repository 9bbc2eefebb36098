"""Command-line interface.

Every subcommand reads plain files, writes its artifacts into an output
directory, and finishes by writing a manifest recording input digests,
the resolved configuration, and result counts. Nothing in an artifact
depends on when or where it ran, so rerunning a command reproduces its
outputs byte for byte.

Exit codes: 0 success, 2 usage error, 3 bad input, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys

import numpy as np

from xlemo import __version__
from xlemo.align import (
    extract_dictionary,
    identical_string_seed,
    load_dictionary_tsv,
    map_space,
    procrustes_align,
    save_alignment,
    save_dictionary_tsv,
    train_ibm1,
)
from xlemo.corpus import (
    Document,
    LabeledCorpus,
    load_documents,
    load_labeled_corpus,
    load_parallel_corpus,
    make_document,
    save_labeled_corpus,
)
from xlemo.embeddings import load_word2vec_text, save_word2vec_text
from xlemo.errors import InputError, NumericError
from xlemo.evaluation import EvalReport, build_report, emit_report, parse_report, summary_row
from xlemo.figures import render_report_figures
from xlemo.labels import DEFAULT_LABELS, validate_label_set
from xlemo.lexicon import (
    build_tie_break_stats,
    induce_target_lexicon,
    load_lexicon,
    load_pivot_map,
    pivot_substitute,
    save_lexicon,
)
from xlemo.model import PredictionResult, TrainConfig, init_params, predict, save_checkpoint, train
from xlemo.pipeline import (
    DEFAULT_MIN_SEED_OVERLAP,
    DEFAULT_PROJECTION_THRESHOLD,
    ModelSpec,
    annotation_projection,
    direct_transfer,
    pivoted_transfer,
    random_baseline,
    sentence_transfer,
)

log = logging.getLogger(__name__)

SEED_ENV_VAR = "XLEMO_SEED"


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError as err:
        raise InputError("%s must be an integer, got %r" % (SEED_ENV_VAR, raw)) from err


def _parse_config_file(path: str) -> dict[str, str]:
    """key=value lines; blank lines and # comments are ignored."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise InputError("%s: line %d: expected key=value" % (path, lineno))
            key, _, value = stripped.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _parse_sizes(raw: str) -> tuple[int, ...]:
    raw = raw.strip()
    if not raw:
        return ()
    try:
        return tuple(int(part) for part in raw.split(","))
    except ValueError as err:
        raise InputError("bad size list %r (expected comma-separated integers)" % raw) from err


def _parse_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise InputError("bad boolean %r" % raw)


class Settings:
    """Resolved option values: command line beats config file beats default."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = _parse_config_file(args.config) if getattr(args, "config", None) else {}
        self.resolved: dict[str, object] = {}

    def get(self, key: str, fallback):
        cli_value = getattr(self.args, key, None)
        if cli_value is not None:
            value = cli_value
        elif key in self.config:
            value = self.config[key]
        else:
            value = fallback
        if isinstance(value, str) and not isinstance(fallback, str):
            if isinstance(fallback, bool):
                value = _parse_bool(value)
            elif isinstance(fallback, int):
                value = int(value)
            elif isinstance(fallback, float):
                value = float(value)
            elif isinstance(fallback, tuple):
                value = _parse_sizes(value)
        self.resolved[key] = value
        return value

    def seed(self) -> int:
        return self.get("seed", _default_seed())

    def model_spec(self) -> ModelSpec:
        return ModelSpec(
            kind=self.get("mode", "birnn_attention"),
            use_af24=self.get("use_af24", False),
            hidden_size=self.get("hidden_size", 70),
            attention_size=self.get("attention_size", 70),
            mlp_sizes=self.get("mlp_sizes", (50, 50, 50)),
            init_seed=self.seed(),
        )

    def train_config(self) -> TrainConfig:
        return TrainConfig(
            batch_size=self.get("batch_size", 32),
            dropout=self.get("dropout", 0.1),
            learning_rate=self.get("learning_rate", 1e-3),
            max_epochs=self.get("max_epochs", 50),
            patience=self.get("patience", 3),
            tolerance=self.get("tolerance", 1e-4),
            seed=self.seed(),
        )

    def manifest_config(self) -> dict:
        out: dict = {}
        for key, value in sorted(self.resolved.items()):
            out[key] = list(value) if isinstance(value, tuple) else value
        return out


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def _write_manifest(
    out_dir: str,
    command: str,
    settings: Settings,
    inputs: dict[str, str | None],
    counts: dict[str, int],
    outputs: list[str],
) -> str:
    config = settings.manifest_config()
    payload = {
        "command": command,
        "version": __version__,
        "seed": config.get("seed"),
        "config": config,
        "config_sha256": hashlib.sha256(json.dumps(config, sort_keys=True).encode()).hexdigest(),
        "inputs": {
            name: {"path": path, "sha256": _sha256(path)} for name, path in sorted(inputs.items()) if path
        },
        "counts": {k: counts[k] for k in sorted(counts)},
        "outputs": sorted(os.path.basename(p) for p in outputs),
    }
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, indent=2)
        handle.write("\n")
    return path


def _prepare_out_dir(args: argparse.Namespace) -> str:
    os.makedirs(args.out_dir, exist_ok=True)
    return args.out_dir


def _emit_report_artifacts(report: EvalReport, out_dir: str, stem: str = "report") -> list[str]:
    """Text, delimited, and JSON renderings plus the two figures."""
    written: list[str] = []
    for format, suffix in (("text", "txt"), ("tsv", "tsv"), ("json", "json")):
        path = os.path.join(out_dir, "%s.%s" % (stem, suffix))
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(emit_report(report, format))
        written.append(path)
    written.extend(render_report_figures(report, out_dir, stem))
    return written


def _save_predictions(pred: PredictionResult, documents: list[Document], path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("id\tlabel\t%s\n" % "\t".join(pred.label_set))
        for i, doc in enumerate(documents):
            probs = "\t".join(repr(float(p)) for p in pred.probabilities[i])
            handle.write("%s\t%s\t%s\n" % (doc.id, pred.labels[i], probs))


def _load_predictions(path: str) -> dict[str, str]:
    """id -> predicted label from a predictions table."""
    by_id: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().rstrip("\n").split("\t")
        if len(header) < 2 or header[0] != "id" or header[1] != "label":
            raise InputError("%s: not a predictions table (bad header)" % path)
        for lineno, line in enumerate(handle, start=2):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) < 2:
                raise InputError("%s: line %d: expected at least 2 columns" % (path, lineno))
            if parts[0] in by_id:
                raise InputError("%s: line %d: duplicate id %r" % (path, lineno, parts[0]))
            by_id[parts[0]] = parts[1]
    return by_id


def _load_doc_vectors(path: str) -> dict[str, np.ndarray]:
    """JSON object mapping document id to a fixed-length float list."""
    with open(path, encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as err:
            raise InputError("%s: not valid JSON: %s" % (path, err)) from err
    if not isinstance(payload, dict) or not payload:
        raise InputError("%s: expected a non-empty JSON object" % path)
    vectors: dict[str, np.ndarray] = {}
    dim = None
    for doc_id, values in payload.items():
        vector = np.asarray(values, dtype=np.float64)
        if vector.ndim != 1:
            raise InputError("%s: vector for %r is not 1-dimensional" % (path, doc_id))
        if dim is None:
            dim = vector.shape[0]
        elif vector.shape[0] != dim:
            raise InputError("%s: vector for %r has length %d, expected %d" % (path, doc_id, vector.shape[0], dim))
        vectors[doc_id] = vector
    return vectors


def _labels(settings: Settings) -> tuple[str, ...]:
    raw = settings.get("labels", ",".join(DEFAULT_LABELS))
    parts = tuple(part.strip() for part in raw.split(",") if part.strip())
    return validate_label_set(parts)


def _save_documents_jsonl(documents: list[Document], path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for doc in documents:
            obj: dict = {"id": doc.id, "language": doc.language, "text": doc.raw_text}
            if doc.gold_label is not None:
                obj["label"] = doc.gold_label
            if doc.genre is not None:
                obj["genre"] = doc.genre
            if doc.soft_probs is not None:
                obj["probs"] = {label: doc.soft_probs[label] for label in sorted(doc.soft_probs)}
            handle.write(json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n")


def _cmd_train_source(args: argparse.Namespace) -> int:
    settings = Settings(args)
    out_dir = _prepare_out_dir(args)
    labels = _labels(settings)
    spec = settings.model_spec()
    config = settings.train_config()
    corpus = load_labeled_corpus(args.train, args.train_format, args.language, labels)

    space = lexicon = tie_stats = doc_vectors = None
    if spec.kind == "precomputed_vectors":
        if not args.doc_vectors:
            raise InputError("precomputed_vectors mode needs --doc-vectors")
        doc_vectors = _load_doc_vectors(args.doc_vectors)
        emb_dim = next(iter(doc_vectors.values())).shape[0]
    else:
        if not args.embeddings:
            raise InputError("mode %r needs --embeddings" % spec.kind)
        space = load_word2vec_text(args.embeddings, args.language)
        emb_dim = space.dim
    if args.lexicon:
        lexicon = load_lexicon(args.lexicon, args.language)
        tie_stats = build_tie_break_stats(corpus, lexicon)
    elif spec.use_af24:
        raise InputError("the lexicon feature needs --lexicon")

    params = spec.build_params(corpus.label_set, emb_dim)
    result = train(corpus, params, config, space=space, lexicon=lexicon, tie_stats=tie_stats, doc_vectors=doc_vectors)
    checkpoint_path = os.path.join(out_dir, "checkpoint.json")
    save_checkpoint(result.params, checkpoint_path)
    print("trained on %d documents, %d epochs (best %d)" % (len(corpus), len(result.epoch_losses), result.best_epoch))
    _write_manifest(
        out_dir,
        "train-source",
        settings,
        {
            "train": args.train,
            "embeddings": args.embeddings,
            "doc_vectors": args.doc_vectors,
            "lexicon": args.lexicon,
        },
        {
            "train_documents": len(corpus),
            "epochs": len(result.epoch_losses),
            "best_epoch": result.best_epoch,
        },
        [checkpoint_path],
    )
    return 0


def _cmd_project(args: argparse.Namespace) -> int:
    settings = Settings(args)
    out_dir = _prepare_out_dir(args)
    labels = _labels(settings)
    spec = settings.model_spec()
    config = settings.train_config()
    threshold = settings.get("threshold", DEFAULT_PROJECTION_THRESHOLD)

    corpus = load_labeled_corpus(args.train, args.train_format, args.source_language, labels)
    parallel = load_parallel_corpus(
        args.parallel_source, args.parallel_target, args.source_language, args.target_language
    )
    source_space = load_word2vec_text(args.source_embeddings, args.source_language)
    target_space = load_word2vec_text(args.target_embeddings, args.target_language)
    source_lexicon = load_lexicon(args.source_lexicon, args.source_language) if args.source_lexicon else None
    target_lexicon = load_lexicon(args.target_lexicon, args.target_language) if args.target_lexicon else None

    run = annotation_projection(
        corpus,
        parallel,
        source_space,
        target_space,
        spec=spec,
        config=config,
        threshold=threshold,
        source_lexicon=source_lexicon,
        target_lexicon=target_lexicon,
    )
    projected_path = os.path.join(out_dir, "projected.jsonl")
    save_labeled_corpus(run.projected, projected_path)
    source_ckpt = os.path.join(out_dir, "source_checkpoint.json")
    target_ckpt = os.path.join(out_dir, "target_checkpoint.json")
    save_checkpoint(run.source_result.params, source_ckpt)
    save_checkpoint(run.target_result.params, target_ckpt)
    print(
        "projected %d of %d pairs at confidence >= %s"
        % (run.counts["projected_documents"], run.counts["parallel_pairs"], threshold)
    )
    _write_manifest(
        out_dir,
        "project",
        settings,
        {
            "train": args.train,
            "parallel_source": args.parallel_source,
            "parallel_target": args.parallel_target,
            "source_embeddings": args.source_embeddings,
            "target_embeddings": args.target_embeddings,
            "source_lexicon": args.source_lexicon,
            "target_lexicon": args.target_lexicon,
        },
        dict(run.counts),
        [projected_path, source_ckpt, target_ckpt],
    )
    return 0


def _cmd_align_words(args: argparse.Namespace) -> int:
    settings = Settings(args)
    out_dir = _prepare_out_dir(args)
    iterations = settings.get("iterations", 5)
    min_prob = settings.get("min_prob", 0.1)
    min_cooccur = settings.get("min_cooccur", 2)

    parallel = load_parallel_corpus(
        args.parallel_source, args.parallel_target, args.source_language, args.target_language
    )
    table = train_ibm1(parallel, iterations)
    dictionary = extract_dictionary(table, min_prob=min_prob, min_cooccur=min_cooccur)
    dictionary_path = os.path.join(out_dir, "dictionary.tsv")
    save_dictionary_tsv(dictionary, dictionary_path)
    likelihood_path = os.path.join(out_dir, "likelihoods.json")
    with open(likelihood_path, "w", encoding="utf-8") as handle:
        json.dump({"log_likelihoods": table.log_likelihoods}, handle, sort_keys=True, indent=2)
        handle.write("\n")
    print("extracted %d dictionary entries from %d pairs" % (len(dictionary), len(parallel)))
    _write_manifest(
        out_dir,
        "align-words",
        settings,
        {"parallel_source": args.parallel_source, "parallel_target": args.parallel_target},
        {
            "parallel_pairs": len(parallel),
            "source_vocabulary": len(table.probs) - 1,
            "dictionary_entries": len(dictionary),
        },
        [dictionary_path, likelihood_path],
    )
    return 0


def _cmd_align_embeddings(args: argparse.Namespace) -> int:
    settings = Settings(args)
    out_dir = _prepare_out_dir(args)
    source_space = load_word2vec_text(args.source_embeddings, args.source_language)
    target_space = load_word2vec_text(args.target_embeddings, args.target_language)
    if args.seed_dictionary:
        seed_dict = load_dictionary_tsv(args.seed_dictionary, source_space.language, target_space.language)
    else:
        seed_dict = identical_string_seed(source_space, target_space)
    usable = sum(
        1 for (s, t) in seed_dict.pairs if s in source_space.vocabulary and t in target_space.vocabulary
    )
    alignment = procrustes_align(source_space, target_space, seed_dict)
    mapped = map_space(source_space, alignment)
    alignment_path = os.path.join(out_dir, "alignment.json")
    save_alignment(alignment, alignment_path)
    mapped_path = os.path.join(out_dir, "mapped_source.txt")
    save_word2vec_text(mapped, mapped_path)
    print("aligned %d-dim spaces with %d usable seed pairs" % (source_space.dim, usable))
    _write_manifest(
        out_dir,
        "align-embeddings",
        settings,
        {
            "source_embeddings": args.source_embeddings,
            "target_embeddings": args.target_embeddings,
            "seed_dictionary": args.seed_dictionary,
        },
        {"seed_pairs": len(seed_dict), "usable_seed_pairs": usable, "dimension": source_space.dim},
        [alignment_path, mapped_path],
    )
    return 0


def _cmd_induce_lexicon(args: argparse.Namespace) -> int:
    settings = Settings(args)
    out_dir = _prepare_out_dir(args)
    dictionary = load_dictionary_tsv(args.dictionary, args.source_language, args.target_language)
    source_lexicon = load_lexicon(args.source_lexicon, args.source_language)
    induced = induce_target_lexicon(dictionary, source_lexicon, language=args.target_language)
    lexicon_path = os.path.join(out_dir, "lexicon.tsv")
    save_lexicon(induced, lexicon_path)
    print("induced entries for %d target words" % len(induced.entries))
    _write_manifest(
        out_dir,
        "induce-lexicon",
        settings,
        {"dictionary": args.dictionary, "source_lexicon": args.source_lexicon},
        {
            "dictionary_pairs": len(dictionary),
            "source_words": len(source_lexicon.entries),
            "induced_words": len(induced.entries),
        },
        [lexicon_path],
    )
    return 0


def _cmd_pivot(args: argparse.Namespace) -> int:
    settings = Settings(args)
    out_dir = _prepare_out_dir(args)
    labels = _labels(settings)
    documents = load_documents(args.input, args.input_format, args.language, labels)
    pivot_map = load_pivot_map(args.pivot_map)
    replaced = 0
    substituted: list[Document] = []
    for doc in documents:
        new_tokens = pivot_substitute(doc.tokens, pivot_map)
        replaced += sum(1 for old, new in zip(doc.tokens, new_tokens) if old != new)
        substituted.append(
            make_document(doc.id, doc.language, new_tokens, gold_label=doc.gold_label, genre=doc.genre)
        )
    output_path = os.path.join(out_dir, "pivoted.jsonl")
    _save_documents_jsonl(substituted, output_path)
    print("replaced %d tokens across %d documents" % (replaced, len(documents)))
    _write_manifest(
        out_dir,
        "pivot",
        settings,
        {"input": args.input, "pivot_map": args.pivot_map},
        {"documents": len(documents), "replaced_tokens": replaced},
        [output_path],
    )
    return 0


def _cmd_transfer(args: argparse.Namespace) -> int:
    settings = Settings(args)
    out_dir = _prepare_out_dir(args)
    labels = _labels(settings)
    spec = settings.model_spec()
    config = settings.train_config()
    min_overlap = settings.get("min_seed_overlap", DEFAULT_MIN_SEED_OVERLAP)

    corpus = load_labeled_corpus(args.train, args.train_format, args.source_language, labels)
    test = load_labeled_corpus(args.test, args.test_format, args.target_language, labels)
    inputs: dict[str, str | None] = {"train": args.train, "test": args.test}
    outputs: list[str] = []

    if spec.kind == "precomputed_vectors":
        if not args.source_doc_vectors or not args.target_doc_vectors:
            raise InputError("precomputed_vectors mode needs --source-doc-vectors and --target-doc-vectors")
        source_vectors = _load_doc_vectors(args.source_doc_vectors)
        target_vectors = _load_doc_vectors(args.target_doc_vectors)
        inputs.update(source_doc_vectors=args.source_doc_vectors, target_doc_vectors=args.target_doc_vectors)
        run = sentence_transfer(corpus, test, source_vectors, target_vectors, spec=spec, config=config)
    else:
        if not args.source_embeddings or not args.target_embeddings:
            raise InputError("word-level transfer needs --source-embeddings and --target-embeddings")
        source_space = load_word2vec_text(args.source_embeddings, args.source_language)
        target_space = load_word2vec_text(args.target_embeddings, args.target_language)
        seed_dict = (
            load_dictionary_tsv(args.seed_dictionary, source_space.language, target_space.language)
            if args.seed_dictionary
            else None
        )
        source_lexicon = load_lexicon(args.source_lexicon, args.source_language) if args.source_lexicon else None
        target_lexicon = load_lexicon(args.target_lexicon, args.target_language) if args.target_lexicon else None
        if spec.use_af24 and source_lexicon is None:
            raise InputError("the lexicon feature needs --source-lexicon")
        inputs.update(
            source_embeddings=args.source_embeddings,
            target_embeddings=args.target_embeddings,
            seed_dictionary=args.seed_dictionary,
            source_lexicon=args.source_lexicon,
            target_lexicon=args.target_lexicon,
        )
        if args.pivot_map:
            pivot_map = load_pivot_map(args.pivot_map)
            inputs["pivot_map"] = args.pivot_map
            run = pivoted_transfer(
                corpus,
                test,
                pivot_map,
                source_space,
                target_space,
                spec=spec,
                config=config,
                seed_dictionary=seed_dict,
                source_lexicon=source_lexicon,
                intermediate_lexicon=target_lexicon,
                min_seed_overlap=min_overlap,
            )
        else:
            run = direct_transfer(
                corpus,
                test,
                source_space,
                target_space,
                spec=spec,
                config=config,
                seed_dictionary=seed_dict,
                source_lexicon=source_lexicon,
                target_lexicon=target_lexicon,
                min_seed_overlap=min_overlap,
            )
        alignment_path = os.path.join(out_dir, "alignment.json")
        save_alignment(run.alignment, alignment_path)
        outputs.append(alignment_path)

    checkpoint_path = os.path.join(out_dir, "checkpoint.json")
    save_checkpoint(run.train_result.params, checkpoint_path)
    predictions_path = os.path.join(out_dir, "predictions.tsv")
    _save_predictions(run.predictions, test.documents, predictions_path)
    outputs.extend([checkpoint_path, predictions_path])
    outputs.extend(_emit_report_artifacts(run.report, out_dir))
    print(summary_row(run.report))
    _write_manifest(out_dir, "transfer", settings, inputs, dict(run.counts), outputs)
    return 0


def _cmd_baseline(args: argparse.Namespace) -> int:
    settings = Settings(args)
    out_dir = _prepare_out_dir(args)
    labels = _labels(settings)
    seed = settings.seed()
    uniform = settings.get("uniform", False)
    test = load_labeled_corpus(args.test, args.test_format, args.target_language, labels)
    if uniform:
        prior: dict[str, float] | LabeledCorpus = {label: 1.0 / len(labels) for label in labels}
        train_corpus = None
    else:
        if not args.train:
            raise InputError("baseline needs --train for the label prior (or --uniform)")
        train_corpus = load_labeled_corpus(args.train, args.train_format, args.source_language, labels)
        prior = train_corpus
    predictions, report = random_baseline(prior, test, seed=seed, uniform=uniform)
    predictions_path = os.path.join(out_dir, "predictions.tsv")
    _save_predictions(predictions, test.documents, predictions_path)
    outputs = [predictions_path]
    outputs.extend(_emit_report_artifacts(report, out_dir))
    print(summary_row(report))
    _write_manifest(
        out_dir,
        "baseline",
        settings,
        {"train": args.train, "test": args.test},
        {"test_documents": len(test), "train_documents": len(train_corpus) if train_corpus else 0},
        outputs,
    )
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    settings = Settings(args)
    out_dir = _prepare_out_dir(args)
    labels = _labels(settings)
    gold = load_labeled_corpus(args.gold, args.gold_format, args.language, labels)
    predicted_by_id = _load_predictions(args.predictions)
    missing = [doc.id for doc in gold.documents if doc.id not in predicted_by_id]
    if missing:
        raise InputError(
            "%d gold documents have no prediction (first missing id: %r)" % (len(missing), missing[0])
        )
    pred = [predicted_by_id[doc.id] for doc in gold.documents]
    gold_labels = [doc.gold_label for doc in gold.documents]
    report = build_report(
        gold_labels, pred, labels=labels, language=gold.language or args.language, method=args.method
    )
    outputs = _emit_report_artifacts(report, out_dir)
    print(summary_row(report))
    _write_manifest(
        out_dir,
        "evaluate",
        settings,
        {"gold": args.gold, "predictions": args.predictions},
        {"documents": len(gold)},
        outputs,
    )
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    settings = Settings(args)
    out_dir = _prepare_out_dir(args)
    with open(args.report, encoding="utf-8") as handle:
        report = parse_report(handle.read(), "json")
    outputs = _emit_report_artifacts(report, out_dir)
    print(summary_row(report))
    _write_manifest(out_dir, "report", settings, {"report": args.report}, {}, outputs)
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out-dir", required=True, help="directory for artifacts and the manifest")
    parser.add_argument("--config", help="key=value settings file (command line wins)")
    parser.add_argument("--seed", type=int, help="random seed (default: $%s or 42)" % SEED_ENV_VAR)
    parser.add_argument("--labels", help="comma-separated active label set (default anger,fear,joy)")


def _add_model_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=("birnn_attention", "mean_pool_mlp", "precomputed_vectors"))
    parser.add_argument("--use-af24", action="store_const", const=True, help="append the 24-dim lexicon feature")
    parser.add_argument("--hidden-size", type=int, help="recurrent units per direction (default 70)")
    parser.add_argument("--attention-size", type=int, help="attention projection width (default 70)")
    parser.add_argument("--mlp-sizes", help="comma-separated head widths (default 50,50,50)")
    parser.add_argument("--batch-size", type=int)
    parser.add_argument("--dropout", type=float)
    parser.add_argument("--learning-rate", type=float)
    parser.add_argument("--max-epochs", type=int)
    parser.add_argument("--patience", type=int)
    parser.add_argument("--tolerance", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xlemo",
        description="Cross-lingual emotion classification: projection, transfer, and evaluation.",
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    subparsers = parser.add_subparsers(dest="command", required=True)

    p = subparsers.add_parser("train-source", help="train a classifier on a labeled corpus")
    p.add_argument("--train", required=True)
    p.add_argument("--train-format", choices=("jsonl", "tsv"), default="jsonl")
    p.add_argument("--language", default="eng")
    p.add_argument("--embeddings")
    p.add_argument("--doc-vectors", help="JSON id-to-vector map for precomputed_vectors mode")
    p.add_argument("--lexicon")
    _add_model_options(p)
    _add_common(p)
    p.set_defaults(func=_cmd_train_source)

    p = subparsers.add_parser("project", help="annotation projection across a parallel corpus")
    p.add_argument("--train", required=True)
    p.add_argument("--train-format", choices=("jsonl", "tsv"), default="jsonl")
    p.add_argument("--source-language", default="eng")
    p.add_argument("--target-language", default="und")
    p.add_argument("--parallel-source", required=True)
    p.add_argument("--parallel-target", required=True)
    p.add_argument("--source-embeddings", required=True)
    p.add_argument("--target-embeddings", required=True)
    p.add_argument("--source-lexicon")
    p.add_argument("--target-lexicon")
    p.add_argument("--threshold", type=float, help="confidence floor for projected labels (default 0.9)")
    _add_model_options(p)
    _add_common(p)
    p.set_defaults(func=_cmd_project)

    p = subparsers.add_parser("align-words", help="translation table and dictionary from a parallel corpus")
    p.add_argument("--parallel-source", required=True)
    p.add_argument("--parallel-target", required=True)
    p.add_argument("--source-language", default="eng")
    p.add_argument("--target-language", default="und")
    p.add_argument("--iterations", type=int, help="EM iterations (default 5)")
    p.add_argument("--min-prob", type=float, help="translation probability floor (default 0.1)")
    p.add_argument("--min-cooccur", type=int, help="sentence co-occurrence floor (default 2)")
    _add_common(p)
    p.set_defaults(func=_cmd_align_words)

    p = subparsers.add_parser("align-embeddings", help="orthogonal map between two embedding spaces")
    p.add_argument("--source-embeddings", required=True)
    p.add_argument("--target-embeddings", required=True)
    p.add_argument("--source-language", default="eng")
    p.add_argument("--target-language", default="und")
    p.add_argument("--seed-dictionary", help="TSV seed pairs; identical spellings when omitted")
    _add_common(p)
    p.set_defaults(func=_cmd_align_embeddings)

    p = subparsers.add_parser("induce-lexicon", help="project an emotion lexicon through a dictionary")
    p.add_argument("--dictionary", required=True)
    p.add_argument("--source-lexicon", required=True)
    p.add_argument("--source-language", default="eng")
    p.add_argument("--target-language", default="und")
    _add_common(p)
    p.set_defaults(func=_cmd_induce_lexicon)

    p = subparsers.add_parser("pivot", help="replace tokens via a pivot word map")
    p.add_argument("--input", required=True)
    p.add_argument("--input-format", choices=("jsonl", "tsv"), default="jsonl")
    p.add_argument("--language", default="und")
    p.add_argument("--pivot-map", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_pivot)

    p = subparsers.add_parser("transfer", help="cross-lingual transfer: align, train, and classify")
    p.add_argument("--train", required=True)
    p.add_argument("--train-format", choices=("jsonl", "tsv"), default="jsonl")
    p.add_argument("--test", required=True)
    p.add_argument("--test-format", choices=("jsonl", "tsv"), default="jsonl")
    p.add_argument("--source-language", default="eng")
    p.add_argument("--target-language", default="und")
    p.add_argument("--source-embeddings")
    p.add_argument("--target-embeddings")
    p.add_argument("--seed-dictionary")
    p.add_argument("--source-lexicon")
    p.add_argument("--target-lexicon")
    p.add_argument("--pivot-map", help="route the test text through a related language first")
    p.add_argument("--source-doc-vectors", help="JSON sentence vectors for precomputed_vectors mode")
    p.add_argument("--target-doc-vectors")
    p.add_argument("--min-seed-overlap", type=int, help="warn below this many usable seed pairs (default 50)")
    _add_model_options(p)
    _add_common(p)
    p.set_defaults(func=_cmd_transfer)

    p = subparsers.add_parser("baseline", help="random predictions from the training prior")
    p.add_argument("--train")
    p.add_argument("--train-format", choices=("jsonl", "tsv"), default="jsonl")
    p.add_argument("--test", required=True)
    p.add_argument("--test-format", choices=("jsonl", "tsv"), default="jsonl")
    p.add_argument("--source-language", default="eng")
    p.add_argument("--target-language", default="und")
    p.add_argument("--uniform", action="store_const", const=True, help="ignore the prior; draw uniformly")
    _add_common(p)
    p.set_defaults(func=_cmd_baseline)

    p = subparsers.add_parser("evaluate", help="score predictions against gold labels")
    p.add_argument("--gold", required=True)
    p.add_argument("--gold-format", choices=("jsonl", "tsv"), default="jsonl")
    p.add_argument("--predictions", required=True)
    p.add_argument("--language", default="und")
    p.add_argument("--method", default="unknown")
    _add_common(p)
    p.set_defaults(func=_cmd_evaluate)

    p = subparsers.add_parser("report", help="render a JSON report to text, TSV, and figures")
    p.add_argument("--report", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_report)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse and execute; returns the process exit code instead of raising."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_err:
        return int(exit_err.code) if exit_err.code is not None else 0
    try:
        return args.func(args)
    except InputError as err:
        print("input error: %s" % err, file=sys.stderr)
        return 3
    except NumericError as err:
        print("numeric error: %s" % err, file=sys.stderr)
        return 4
    except OSError as err:
        print("input error: %s" % err, file=sys.stderr)
        return 3


def main() -> None:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
