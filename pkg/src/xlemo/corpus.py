"""Corpus ingestion: tokenization, file formats, distant labeling, filtering.

File formats are deliberately minimal: JSONL with one document object per
line (keys: id, text, label?, genre?, probs?, language?), a 2-column TSV
(label TAB text), and parallel corpora as two line-aligned UTF-8 files.
"""

from __future__ import annotations

import json
import logging
import unicodedata
from collections import Counter
from dataclasses import dataclass, field, replace

from xlemo.errors import InputError
from xlemo.labels import DEFAULT_LABELS, GENRES, canonical_label, validate_label, validate_label_set

log = logging.getLogger(__name__)

PROB_SUM_TOL = 1e-6

# Emoji blocks peeled off word edges like punctuation. Multi-codepoint
# sequences (ZWJ, variation selectors, skin tones, flag pairs) stay whole.
_EMOJI_RANGES = (
    (0x1F1E6, 0x1F1FF),
    (0x1F300, 0x1F5FF),
    (0x1F600, 0x1F64F),
    (0x1F680, 0x1F6FF),
    (0x1F900, 0x1F9FF),
    (0x1FA70, 0x1FAFF),
    (0x2600, 0x26FF),
    (0x2700, 0x27BF),
    (0x2B00, 0x2B5F),
)
_EMOJI_MODIFIERS = {0x200D, 0xFE0E, 0xFE0F} | set(range(0x1F3FB, 0x1F400))


def _is_emoji(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _EMOJI_RANGES)


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _emoji_cluster(chunk: str, i: int) -> int:
    """End index of the emoji cluster starting at chunk[i]."""
    j = i + 1
    # flag = pair of regional indicators
    if 0x1F1E6 <= ord(chunk[i]) <= 0x1F1FF and j < len(chunk) and 0x1F1E6 <= ord(chunk[j]) <= 0x1F1FF:
        j += 1
    while j < len(chunk):
        cp = ord(chunk[j])
        if cp in _EMOJI_MODIFIERS:
            j += 1
            # ZWJ joins a further emoji into the same cluster
            if cp == 0x200D and j < len(chunk) and _is_emoji(chunk[j]):
                j += 1
        else:
            break
    return j


def tokenize(text: str) -> list[str]:
    """Deterministic language-agnostic tokenizer.

    NFC-normalize, lowercase, split on whitespace, then peel leading and
    trailing punctuation and emoji off each chunk into their own tokens.
    Word-internal punctuation is left alone. Idempotent on its own
    re-joined output.
    """
    if not text:
        return []
    text = unicodedata.normalize("NFC", text).lower()
    tokens: list[str] = []
    for chunk in text.split():
        lead: list[str] = []
        trail: list[str] = []
        start, end = 0, len(chunk)
        while start < end:
            ch = chunk[start]
            if _is_punct(ch):
                lead.append(ch)
                start += 1
            elif _is_emoji(ch):
                nxt = _emoji_cluster(chunk, start)
                lead.append(chunk[start:nxt])
                start = nxt
            else:
                break
        while end > start:
            ch = chunk[end - 1]
            if _is_punct(ch):
                trail.append(ch)
                end -= 1
            elif _is_emoji(ch):
                # walk back to the start of the trailing emoji run
                run = end - 1
                while run > start and (_is_emoji(chunk[run - 1]) or ord(chunk[run - 1]) in _EMOJI_MODIFIERS):
                    run -= 1
                clusters = []
                k = run
                while k < end:
                    if _is_emoji(chunk[k]):
                        nxt = _emoji_cluster(chunk, k)
                        clusters.append(chunk[k:nxt])
                        k = nxt
                    else:  # stray modifier, attach to previous cluster
                        if clusters:
                            clusters[-1] += chunk[k]
                        else:
                            clusters.append(chunk[k])
                        k += 1
                trail.extend(reversed(clusters))
                end = run
            else:
                break
        tokens.extend(lead)
        if end > start:
            tokens.append(chunk[start:end])
        tokens.extend(reversed(trail))
    return tokens


@dataclass
class Document:
    """One text unit with optional gold or soft emotion annotation."""

    id: str
    language: str
    raw_text: str
    tokens: list[str] = field(default_factory=list)
    gold_label: str | None = None
    soft_probs: dict[str, float] | None = None
    genre: str | None = None

    def __post_init__(self) -> None:
        if not self.tokens:
            self.tokens = tokenize(self.raw_text)
        if self.soft_probs is not None:
            total = sum(self.soft_probs.values())
            if abs(total - 1.0) > PROB_SUM_TOL:
                raise InputError(
                    "document %r: soft probabilities sum to %.8f, expected 1" % (self.id, total)
                )
            for label, p in self.soft_probs.items():
                if not (0.0 <= p <= 1.0):
                    raise InputError("document %r: probability %r out of [0,1] for %r" % (self.id, p, label))
        if self.genre is not None and self.genre not in GENRES:
            raise InputError("document %r: unknown genre %r (expected one of %s)" % (self.id, self.genre, GENRES))


def make_document(
    id: str,
    language: str,
    tokens: list[str],
    gold_label: str | None = None,
    soft_probs: dict[str, float] | None = None,
    genre: str | None = None,
) -> Document:
    """Build a Document from an existing token list.

    The raw text is the space-joined tokens; tokenize is idempotent on
    that form, so the tokens/raw_text invariant holds.
    """
    return Document(
        id=id,
        language=language,
        raw_text=" ".join(tokens),
        tokens=list(tokens),
        gold_label=gold_label,
        soft_probs=soft_probs,
        genre=genre,
    )


@dataclass
class LabeledCorpus:
    """Documents that all carry a gold label from one active label set."""

    documents: list[Document]
    label_set: tuple[str, ...]
    counts: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.label_set = validate_label_set(tuple(self.label_set))
        for doc in self.documents:
            if doc.gold_label is None:
                raise InputError("document %r has no gold label" % doc.id)
            if doc.gold_label not in self.label_set:
                raise InputError(
                    "document %r: label %r outside active set %s" % (doc.id, doc.gold_label, self.label_set)
                )
        actual = Counter(doc.gold_label for doc in self.documents)
        expected = {label: actual.get(label, 0) for label in self.label_set}
        if self.counts:
            if dict(self.counts) != expected:
                raise InputError("per-label counts %s do not match documents %s" % (self.counts, expected))
        self.counts = expected

    def __len__(self) -> int:
        return len(self.documents)

    @property
    def language(self) -> str | None:
        languages = {doc.language for doc in self.documents}
        if len(languages) == 1:
            return next(iter(languages))
        return None


@dataclass
class ParallelCorpus:
    """1:1 sentence-aligned token pairs between two languages."""

    pairs: list[tuple[list[str], list[str]]]
    source_language: str
    target_language: str

    def __post_init__(self) -> None:
        for i, (src, tgt) in enumerate(self.pairs):
            if not src or not tgt:
                raise InputError("pair %d has an empty side" % i)

    def __len__(self) -> int:
        return len(self.pairs)


def _parse_jsonl_document(obj: dict, lineno: int, language: str, label_set: tuple[str, ...], require_label: bool) -> Document:
    if not isinstance(obj, dict):
        raise InputError("line %d: expected a JSON object" % lineno)
    if "text" not in obj:
        raise InputError("line %d: missing required key 'text'" % lineno)
    label = obj.get("label")
    if label is not None:
        label = validate_label(str(label), label_set)
    elif require_label:
        raise InputError("line %d: missing required key 'label'" % lineno)
    probs = obj.get("probs")
    if probs is not None:
        probs = {validate_label(str(k), label_set): float(v) for k, v in probs.items()}
    genre = obj.get("genre")
    if genre is not None:
        genre = str(genre).lower()
    return Document(
        id=str(obj.get("id", "jsonl-%d" % lineno)),
        language=str(obj.get("language", language)),
        raw_text=str(obj["text"]),
        gold_label=label,
        soft_probs=probs,
        genre=genre,
    )


def load_documents(
    path: str,
    format: str = "jsonl",
    language: str = "und",
    label_set: tuple[str, ...] = DEFAULT_LABELS,
    require_label: bool = False,
) -> list[Document]:
    """Read documents from JSONL or TSV without demanding gold labels."""
    label_set = validate_label_set(label_set)
    if format not in ("jsonl", "tsv"):
        raise InputError("unknown corpus format %r (expected jsonl or tsv)" % format)
    docs: list[Document] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if format == "jsonl":
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise InputError("%s: line %d: %s" % (path, lineno, exc)) from exc
                docs.append(_parse_jsonl_document(obj, lineno, language, label_set, require_label))
            else:
                parts = line.split("\t")
                if len(parts) != 2:
                    raise InputError("%s: line %d: expected 2 tab-separated columns, got %d" % (path, lineno, len(parts)))
                label = validate_label(parts[0], label_set)
                docs.append(
                    Document(
                        id="tsv-%d" % lineno,
                        language=language,
                        raw_text=parts[1],
                        gold_label=label,
                    )
                )
    return docs


def load_labeled_corpus(
    path: str,
    format: str = "jsonl",
    language: str = "und",
    label_set: tuple[str, ...] = DEFAULT_LABELS,
) -> LabeledCorpus:
    """Load a gold-labeled corpus; labels outside the active set are rejected."""
    docs = load_documents(path, format, language, label_set, require_label=True)
    return LabeledCorpus(documents=docs, label_set=validate_label_set(label_set))


def save_labeled_corpus(corpus: LabeledCorpus, path: str, format: str = "jsonl") -> None:
    """Write a corpus back out; JSONL preserves everything, TSV only label/text."""
    if format not in ("jsonl", "tsv"):
        raise InputError("unknown corpus format %r (expected jsonl or tsv)" % format)
    with open(path, "w", encoding="utf-8") as handle:
        for doc in corpus.documents:
            if format == "jsonl":
                obj: dict = {"id": doc.id, "language": doc.language, "text": doc.raw_text, "label": doc.gold_label}
                if doc.genre is not None:
                    obj["genre"] = doc.genre
                if doc.soft_probs is not None:
                    obj["probs"] = {label: doc.soft_probs[label] for label in sorted(doc.soft_probs)}
                handle.write(json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n")
            else:
                handle.write("%s\t%s\n" % (doc.gold_label, doc.raw_text))


def load_parallel_corpus(
    src_path: str,
    tgt_path: str,
    source_language: str = "und",
    target_language: str = "und",
) -> ParallelCorpus:
    """Load two line-aligned files; pairs with an empty side are dropped."""
    with open(src_path, encoding="utf-8") as handle:
        src_lines = handle.read().split("\n")
    with open(tgt_path, encoding="utf-8") as handle:
        tgt_lines = handle.read().split("\n")
    # a single trailing newline does not count as a line
    if src_lines and src_lines[-1] == "":
        src_lines.pop()
    if tgt_lines and tgt_lines[-1] == "":
        tgt_lines.pop()
    if len(src_lines) != len(tgt_lines):
        raise InputError(
            "line-count mismatch: %s has %d lines, %s has %d" % (src_path, len(src_lines), tgt_path, len(tgt_lines))
        )
    pairs: list[tuple[list[str], list[str]]] = []
    dropped = 0
    for src_line, tgt_line in zip(src_lines, tgt_lines):
        src_tokens = tokenize(src_line)
        tgt_tokens = tokenize(tgt_line)
        if not src_tokens or not tgt_tokens:
            dropped += 1
            continue
        pairs.append((src_tokens, tgt_tokens))
    if dropped:
        log.info("dropped %d pairs with an empty side (%s / %s)", dropped, src_path, tgt_path)
    return ParallelCorpus(pairs=pairs, source_language=source_language, target_language=target_language)


@dataclass
class DistantLabelReport:
    """Why raw documents were kept or excluded during distant labeling."""

    kept: int = 0
    no_cues: int = 0
    conflicting: int = 0
    too_short: int = 0

    def as_dict(self) -> dict[str, int]:
        return {"kept": self.kept, "no_cues": self.no_cues, "conflicting": self.conflicting, "too_short": self.too_short}


def distant_label(
    raw_docs: list[Document],
    cue_map: dict[str, str],
    label_set: tuple[str, ...] = DEFAULT_LABELS,
    min_tokens: int = 6,
) -> tuple[LabeledCorpus, DistantLabelReport]:
    """Label documents whose cue tokens all agree on one emotion.

    Documents shorter than min_tokens, with no cue tokens, or with cues
    mapping to different labels are excluded; the report carries the
    exclusion counts.
    """
    label_set = validate_label_set(label_set)
    cues = {token: validate_label(label, label_set) for token, label in cue_map.items()}
    report = DistantLabelReport()
    kept: list[Document] = []
    for doc in raw_docs:
        if len(doc.tokens) < min_tokens:
            report.too_short += 1
            continue
        found = {cues[tok] for tok in doc.tokens if tok in cues}
        if not found:
            report.no_cues += 1
            continue
        if len(found) > 1:
            report.conflicting += 1
            continue
        kept.append(replace(doc, gold_label=found.pop()))
    report.kept = len(kept)
    log.info(
        "distant labeling kept %d of %d documents (no cues: %d, conflicting: %d, too short: %d)",
        report.kept, len(raw_docs), report.no_cues, report.conflicting, report.too_short,
    )
    return LabeledCorpus(documents=kept, label_set=label_set), report


def confidence_filter(
    documents: list[Document],
    threshold: float,
    label_set: tuple[str, ...] = DEFAULT_LABELS,
) -> LabeledCorpus:
    """Keep documents whose best soft probability clears the threshold.

    The gold label becomes the argmax; ties go to the earlier label in
    label-set order.
    """
    label_set = validate_label_set(label_set)
    if not 0.0 < threshold <= 1.0:
        raise InputError("threshold must be in (0, 1], got %r" % threshold)
    kept: list[Document] = []
    for doc in documents:
        if doc.soft_probs is None:
            raise InputError("document %r has no soft probabilities" % doc.id)
        best_label, best_p = None, -1.0
        for label in label_set:
            p = doc.soft_probs.get(label, 0.0)
            if p > best_p:
                best_label, best_p = label, p
        if best_p >= threshold:
            kept.append(replace(doc, gold_label=best_label))
    return LabeledCorpus(documents=kept, label_set=label_set)


def merge_corpora(corpora: list[LabeledCorpus]) -> LabeledCorpus:
    """Concatenate corpora sharing one language and label set."""
    if not corpora:
        raise InputError("nothing to merge")
    label_set = corpora[0].label_set
    for corpus in corpora[1:]:
        if corpus.label_set != label_set:
            raise InputError("label-set mismatch: %s vs %s" % (corpus.label_set, label_set))
    languages = {doc.language for corpus in corpora for doc in corpus.documents}
    if len(languages) > 1:
        raise InputError("language mismatch: %s" % sorted(languages))
    merged = [doc for corpus in corpora for doc in corpus.documents]
    return LabeledCorpus(documents=merged, label_set=label_set)


def label_prior(corpus: LabeledCorpus) -> dict[str, float]:
    """Empirical label distribution of a corpus."""
    total = len(corpus)
    if total == 0:
        raise InputError("cannot take a prior from an empty corpus")
    return {label: corpus.counts[label] / total for label in corpus.label_set}
