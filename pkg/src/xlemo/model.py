"""Emotion classifier over pretrained word embeddings.

The main encoder is a bidirectional recurrent network with additive
attention; the attention context (optionally concatenated with the
24-dim lexicon feature) feeds a small ReLU feed-forward head ending in a
softmax. Two simpler encoders share the head: mean pooling of in-vocab
embeddings, and externally precomputed sentence vectors keyed by
document id.

Embeddings stay frozen; only encoder and head weights train. Gradients
are exact and hand-derived, optimization is Adam on mean cross-entropy,
and every random draw flows through one seeded generator so runs
reproduce bit for bit.

All linear maps use the row-vector convention: y = x @ W + b with W
shaped (inputs, outputs).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from xlemo.corpus import Document, LabeledCorpus
from xlemo.embeddings import VectorSpace
from xlemo.errors import InputError, NumericError
from xlemo.lexicon import AF24_DIM, EmotionLexicon, TieBreakStats, af24_features

log = logging.getLogger(__name__)

MODE_KINDS = ("birnn_attention", "mean_pool_mlp", "precomputed_vectors")
INIT_SCALE = 0.08
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8
CHECKPOINT_FORMAT = "xlemo-classifier"


@dataclass(frozen=True)
class EncodingMode:
    """How documents become fixed-size features before the head."""

    kind: str = "birnn_attention"
    use_af24: bool = False

    def __post_init__(self) -> None:
        if self.kind not in MODE_KINDS:
            raise InputError("unknown encoding mode %r" % self.kind)


@dataclass(frozen=True)
class TrainConfig:
    batch_size: int = 32
    dropout: float = 0.1
    learning_rate: float = 1e-3
    max_epochs: int = 50
    patience: int = 3
    tolerance: float = 1e-4
    seed: int = 42

    def __post_init__(self) -> None:
        if self.batch_size < 1:
            raise InputError("batch_size must be >= 1")
        if not 0.0 <= self.dropout < 1.0:
            raise InputError("dropout must be in [0, 1)")
        if self.max_epochs < 1:
            raise InputError("max_epochs must be >= 1")
        if self.patience < 1:
            raise InputError("patience must be >= 1")


def _expected_shapes(
    mode: EncodingMode,
    n_labels: int,
    emb_dim: int,
    hidden_size: int,
    attention_size: int,
    mlp_sizes: tuple[int, ...],
) -> dict[str, tuple[int, ...]]:
    shapes: dict[str, tuple[int, ...]] = {}
    if mode.kind == "birnn_attention":
        for prefix in ("rnn_fwd", "rnn_bwd"):
            shapes["%s_w_in" % prefix] = (emb_dim, hidden_size)
            shapes["%s_w_rec" % prefix] = (hidden_size, hidden_size)
            shapes["%s_b" % prefix] = (hidden_size,)
        shapes["att_w"] = (2 * hidden_size, attention_size)
        shapes["att_b"] = (attention_size,)
        shapes["att_v"] = (attention_size,)
        feature_dim = 2 * hidden_size
    else:
        feature_dim = emb_dim
    if mode.use_af24:
        feature_dim += AF24_DIM
    dims = [feature_dim] + list(mlp_sizes)
    for i, width in enumerate(mlp_sizes):
        shapes["mlp%d_w" % i] = (dims[i], width)
        shapes["mlp%d_b" % i] = (width,)
    shapes["out_w"] = (dims[-1], n_labels)
    shapes["out_b"] = (n_labels,)
    return shapes


@dataclass
class ClassifierParams:
    """All trainable weights plus the dimensions that define them."""

    mode: EncodingMode
    labels: tuple[str, ...]
    emb_dim: int
    hidden_size: int
    attention_size: int
    mlp_sizes: tuple[int, ...]
    seed: int
    arrays: dict[str, np.ndarray]

    def __post_init__(self) -> None:
        self.labels = tuple(self.labels)
        self.mlp_sizes = tuple(self.mlp_sizes)
        if len(self.labels) < 2:
            raise InputError("need at least 2 labels")
        expected = _expected_shapes(
            self.mode, len(self.labels), self.emb_dim, self.hidden_size, self.attention_size, self.mlp_sizes
        )
        if set(self.arrays) != set(expected):
            raise InputError(
                "weight names do not match the architecture: %s vs %s"
                % (sorted(self.arrays), sorted(expected))
            )
        converted = {}
        for name, shape in expected.items():
            array = np.asarray(self.arrays[name], dtype=np.float64)
            if array.shape != shape:
                raise InputError("weight %r has shape %s, expected %s" % (name, array.shape, shape))
            if not np.all(np.isfinite(array)):
                raise NumericError("weight %r contains non-finite values" % name)
            converted[name] = array
        self.arrays = converted

    @property
    def feature_dim(self) -> int:
        base = 2 * self.hidden_size if self.mode.kind == "birnn_attention" else self.emb_dim
        return base + (AF24_DIM if self.mode.use_af24 else 0)


def init_params(
    mode: EncodingMode,
    labels: tuple[str, ...],
    emb_dim: int,
    hidden_size: int = 70,
    attention_size: int = 70,
    mlp_sizes: tuple[int, ...] = (50, 50, 50),
    seed: int = 42,
) -> ClassifierParams:
    """Uniform [-0.08, 0.08] initialization with a fixed draw order.

    Draws happen in this order regardless of options: forward RNN (input
    weights, recurrent weights, bias), backward RNN, attention (weights,
    bias, scoring vector), head layers in depth order, output projection.
    The 24 lexicon-feature rows of the first head matrix are appended as
    zeros after all draws, so turning the feature on neither shifts the
    random stream nor changes initial behavior on feature-free input.
    """
    if mode.kind != "birnn_attention":
        hidden_size = 0
        attention_size = 0
    rng = np.random.default_rng(seed)

    def draw(shape: tuple[int, ...]) -> np.ndarray:
        return rng.uniform(-INIT_SCALE, INIT_SCALE, size=shape)

    arrays: dict[str, np.ndarray] = {}
    if mode.kind == "birnn_attention":
        for prefix in ("rnn_fwd", "rnn_bwd"):
            arrays["%s_w_in" % prefix] = draw((emb_dim, hidden_size))
            arrays["%s_w_rec" % prefix] = draw((hidden_size, hidden_size))
            arrays["%s_b" % prefix] = draw((hidden_size,))
        arrays["att_w"] = draw((2 * hidden_size, attention_size))
        arrays["att_b"] = draw((attention_size,))
        arrays["att_v"] = draw((attention_size,))
        base_dim = 2 * hidden_size
    else:
        base_dim = emb_dim

    dims = [base_dim] + list(mlp_sizes)
    first_consumer = "mlp0_w" if mlp_sizes else "out_w"
    for i, width in enumerate(mlp_sizes):
        arrays["mlp%d_w" % i] = draw((dims[i], width))
        arrays["mlp%d_b" % i] = draw((width,))
    arrays["out_w"] = draw((dims[-1], len(labels)))
    arrays["out_b"] = draw((len(labels),))
    if mode.use_af24:
        matrix = arrays[first_consumer]
        arrays[first_consumer] = np.vstack([matrix, np.zeros((AF24_DIM, matrix.shape[1]))])
    return ClassifierParams(
        mode=mode,
        labels=tuple(labels),
        emb_dim=emb_dim,
        hidden_size=hidden_size,
        attention_size=attention_size,
        mlp_sizes=tuple(mlp_sizes),
        seed=seed,
        arrays=arrays,
    )


@dataclass
class EncodedDocument:
    """Per-document model input: embedding rows, in-vocab mask, feature."""

    x: np.ndarray
    mask: np.ndarray
    af: np.ndarray | None
    label_index: int | None = None


def encode_document(
    doc: Document,
    params: ClassifierParams,
    space: VectorSpace | None = None,
    lexicon: EmotionLexicon | None = None,
    tie_stats: TieBreakStats | None = None,
    doc_vectors: dict[str, np.ndarray] | None = None,
) -> EncodedDocument:
    """Resolve tokens against the embedding space; out-of-vocabulary
    tokens become zero rows with a cleared mask bit."""
    if params.mode.kind == "precomputed_vectors":
        if doc_vectors is None:
            raise InputError("precomputed_vectors mode needs document vectors")
        if doc.id not in doc_vectors:
            raise InputError("no precomputed vector for document %r" % doc.id)
        vector = np.asarray(doc_vectors[doc.id], dtype=np.float64)
        if vector.shape != (params.emb_dim,):
            raise InputError(
                "vector for document %r has shape %s, expected (%d,)" % (doc.id, vector.shape, params.emb_dim)
            )
        x = vector[None, :]
        mask = np.ones(1, dtype=bool)
    else:
        if space is None:
            raise InputError("encoding mode %r needs an embedding space" % params.mode.kind)
        if space.dim != params.emb_dim:
            raise InputError("embedding dimension %d does not match model dimension %d" % (space.dim, params.emb_dim))
        x = np.zeros((len(doc.tokens), params.emb_dim))
        mask = np.zeros(len(doc.tokens), dtype=bool)
        for t, token in enumerate(doc.tokens):
            if token in space:
                x[t] = space.vector(token)
                mask[t] = True
    af = None
    if params.mode.use_af24:
        if lexicon is None:
            raise InputError("the lexicon feature needs a lexicon")
        af = af24_features(doc.tokens, lexicon, tie_stats if tie_stats is not None else TieBreakStats())
    return EncodedDocument(x=x, mask=mask, af=af)


@dataclass
class ForwardResult:
    probs: np.ndarray
    attention: np.ndarray | None
    all_oov: bool
    cache: dict | None = None


def _softmax(values: np.ndarray) -> np.ndarray:
    shifted = values - values.max()
    exp = np.exp(shifted)
    return exp / exp.sum()


def _forward_encoded(
    params: ClassifierParams,
    enc: EncodedDocument,
    train: bool = False,
    rng: np.random.Generator | None = None,
    dropout: float = 0.0,
    want_cache: bool = False,
) -> ForwardResult:
    n_labels = len(params.labels)
    arrays = params.arrays
    kind = params.mode.kind
    n_tokens = enc.x.shape[0]
    if n_tokens == 0 or not enc.mask.any():
        return ForwardResult(
            probs=np.full(n_labels, 1.0 / n_labels),
            attention=np.zeros(n_tokens) if kind == "birnn_attention" else None,
            all_oov=True,
        )

    cache: dict = {"enc": enc}
    attention = None
    if kind == "birnn_attention":
        h = params.hidden_size
        hf = np.zeros((n_tokens, h))
        prev = np.zeros(h)
        for t in range(n_tokens):
            prev = np.tanh(enc.x[t] @ arrays["rnn_fwd_w_in"] + prev @ arrays["rnn_fwd_w_rec"] + arrays["rnn_fwd_b"])
            hf[t] = prev
        hb = np.zeros((n_tokens, h))
        nxt = np.zeros(h)
        for t in range(n_tokens - 1, -1, -1):
            nxt = np.tanh(enc.x[t] @ arrays["rnn_bwd_w_in"] + nxt @ arrays["rnn_bwd_w_rec"] + arrays["rnn_bwd_b"])
            hb[t] = nxt
        states = np.concatenate([hf, hb], axis=1)
        z = np.tanh(states @ arrays["att_w"] + arrays["att_b"])
        scores = z @ arrays["att_v"]
        visible = np.flatnonzero(enc.mask)
        alpha = np.zeros(n_tokens)
        alpha[visible] = _softmax(scores[visible])
        base = alpha @ states
        attention = alpha
        cache.update(hf=hf, hb=hb, states=states, z=z, alpha=alpha, visible=visible)
    elif kind == "mean_pool_mlp":
        base = enc.x[enc.mask].mean(axis=0)
    else:
        base = enc.x[0]

    u = np.concatenate([base, enc.af]) if params.mode.use_af24 else base
    cache["u"] = u

    fed_inputs: list[np.ndarray] = []
    drop_masks: list[np.ndarray | None] = []
    pre_relu: list[np.ndarray] = []
    current = u
    for i in range(len(params.mlp_sizes)):
        if train and dropout > 0.0:
            if rng is None:
                raise InputError("training with dropout needs a random generator")
            keep = rng.random(current.shape[0]) >= dropout
            mask = keep.astype(np.float64) / (1.0 - dropout)
        else:
            mask = None
        fed = current * mask if mask is not None else current
        q = fed @ arrays["mlp%d_w" % i] + arrays["mlp%d_b" % i]
        fed_inputs.append(fed)
        drop_masks.append(mask)
        pre_relu.append(q)
        current = np.maximum(q, 0.0)
    logits = current @ arrays["out_w"] + arrays["out_b"]
    probs = _softmax(logits)
    if want_cache:
        cache.update(
            fed_inputs=fed_inputs, drop_masks=drop_masks, pre_relu=pre_relu, last_act=current, logits=logits, probs=probs
        )
        return ForwardResult(probs=probs, attention=attention, all_oov=False, cache=cache)
    return ForwardResult(probs=probs, attention=attention, all_oov=False)


def forward_document(
    params: ClassifierParams,
    doc: Document,
    space: VectorSpace | None = None,
    lexicon: EmotionLexicon | None = None,
    tie_stats: TieBreakStats | None = None,
    doc_vectors: dict[str, np.ndarray] | None = None,
) -> ForwardResult:
    """Inference-mode forward pass for one document."""
    enc = encode_document(doc, params, space, lexicon, tie_stats, doc_vectors)
    return _forward_encoded(params, enc)


def _backward_encoded(params: ClassifierParams, result: ForwardResult, label_index: int, grads: dict[str, np.ndarray]) -> None:
    """Accumulate the gradient of one document's cross-entropy loss."""
    arrays = params.arrays
    cache = result.cache
    dlogits = cache["probs"].copy()
    dlogits[label_index] -= 1.0
    grads["out_w"] += np.outer(cache["last_act"], dlogits)
    grads["out_b"] += dlogits
    upstream = dlogits @ arrays["out_w"].T
    for i in range(len(params.mlp_sizes) - 1, -1, -1):
        dq = upstream * (cache["pre_relu"][i] > 0.0)
        grads["mlp%d_w" % i] += np.outer(cache["fed_inputs"][i], dq)
        grads["mlp%d_b" % i] += dq
        upstream = dq @ arrays["mlp%d_w" % i].T
        mask = cache["drop_masks"][i]
        if mask is not None:
            upstream = upstream * mask

    if params.mode.kind != "birnn_attention":
        return
    base_dim = 2 * params.hidden_size
    dbase = upstream[:base_dim]

    states, alpha, z, visible = cache["states"], cache["alpha"], cache["z"], cache["visible"]
    enc = cache["enc"]
    n_tokens = states.shape[0]
    h = params.hidden_size

    dalpha = states @ dbase
    dstates = np.outer(alpha, dbase)
    alpha_vis = alpha[visible]
    dalpha_vis = dalpha[visible]
    dscores = np.zeros(n_tokens)
    dscores[visible] = alpha_vis * (dalpha_vis - float(alpha_vis @ dalpha_vis))
    grads["att_v"] += z.T @ dscores
    dz = np.outer(dscores, arrays["att_v"])
    dpre_att = dz * (1.0 - z * z)
    grads["att_w"] += states.T @ dpre_att
    grads["att_b"] += dpre_att.sum(axis=0)
    dstates += dpre_att @ arrays["att_w"].T

    dhf = dstates[:, :h]
    dhb = dstates[:, h:]
    hf, hb = cache["hf"], cache["hb"]

    carry = np.zeros(h)
    for t in range(n_tokens - 1, -1, -1):
        dp = (dhf[t] + carry) * (1.0 - hf[t] * hf[t])
        grads["rnn_fwd_w_in"] += np.outer(enc.x[t], dp)
        prev = hf[t - 1] if t > 0 else np.zeros(h)
        grads["rnn_fwd_w_rec"] += np.outer(prev, dp)
        grads["rnn_fwd_b"] += dp
        carry = dp @ arrays["rnn_fwd_w_rec"].T
    carry = np.zeros(h)
    for t in range(n_tokens):
        dp = (dhb[t] + carry) * (1.0 - hb[t] * hb[t])
        grads["rnn_bwd_w_in"] += np.outer(enc.x[t], dp)
        nxt = hb[t + 1] if t < n_tokens - 1 else np.zeros(h)
        grads["rnn_bwd_w_rec"] += np.outer(nxt, dp)
        grads["rnn_bwd_b"] += dp
        carry = dp @ arrays["rnn_bwd_w_rec"].T


def loss_and_gradients(
    params: ClassifierParams,
    batch: list[EncodedDocument],
    train: bool = False,
    rng: np.random.Generator | None = None,
    dropout: float = 0.0,
) -> tuple[float, dict[str, np.ndarray]]:
    """Mean cross-entropy over the batch and its exact gradient.

    Documents with nothing in vocabulary predict uniformly; they add
    ln(n_labels) to the loss and nothing to the gradient, but still count
    in the mean's denominator.
    """
    if not batch:
        raise InputError("empty batch")
    n_labels = len(params.labels)
    grads = {name: np.zeros_like(array) for name, array in params.arrays.items()}
    total = 0.0
    for enc in batch:
        if enc.label_index is None:
            raise InputError("batch document has no label index")
        result = _forward_encoded(params, enc, train=train, rng=rng, dropout=dropout, want_cache=True)
        if result.all_oov:
            total += np.log(n_labels)
            continue
        logits = result.cache["logits"]
        shifted = logits - logits.max()
        total += np.log(np.sum(np.exp(shifted))) - shifted[enc.label_index]
        _backward_encoded(params, result, enc.label_index, grads)
    scale = 1.0 / len(batch)
    for name in grads:
        grads[name] *= scale
    return total * scale, grads


@dataclass
class TrainResult:
    params: ClassifierParams
    epoch_losses: list[float]
    best_epoch: int
    stopped_early: bool


def train(
    corpus: LabeledCorpus,
    params: ClassifierParams,
    config: TrainConfig,
    space: VectorSpace | None = None,
    lexicon: EmotionLexicon | None = None,
    tie_stats: TieBreakStats | None = None,
    doc_vectors: dict[str, np.ndarray] | None = None,
) -> TrainResult:
    """Adam on shuffled mini-batches with loss-plateau early stopping.

    Training ends once the epoch loss changes by less than the tolerance
    for `patience` consecutive epochs, or at the epoch cap. The returned
    weights are the ones from the lowest-loss epoch, not the last one.
    """
    if tuple(corpus.label_set) != params.labels:
        raise InputError(
            "corpus labels %s do not match model labels %s" % (tuple(corpus.label_set), params.labels)
        )
    if len(corpus) == 0:
        raise InputError("cannot train on an empty corpus")
    label_index = {label: i for i, label in enumerate(params.labels)}
    encoded = []
    for doc in corpus.documents:
        enc = encode_document(doc, params, space, lexicon, tie_stats, doc_vectors)
        enc.label_index = label_index[doc.gold_label]
        encoded.append(enc)
    n_oov = sum(1 for enc in encoded if not enc.mask.any() or enc.x.shape[0] == 0)
    if n_oov:
        log.warning("%d of %d training documents have no in-vocabulary tokens", n_oov, len(encoded))

    rng = np.random.default_rng(config.seed)
    work = ClassifierParams(
        mode=params.mode,
        labels=params.labels,
        emb_dim=params.emb_dim,
        hidden_size=params.hidden_size,
        attention_size=params.attention_size,
        mlp_sizes=params.mlp_sizes,
        seed=params.seed,
        arrays={name: array.copy() for name, array in params.arrays.items()},
    )
    adam_m = {name: np.zeros_like(array) for name, array in work.arrays.items()}
    adam_v = {name: np.zeros_like(array) for name, array in work.arrays.items()}
    step = 0

    history: list[float] = []
    best_loss = np.inf
    best_epoch = 0
    best_arrays = {name: array.copy() for name, array in work.arrays.items()}
    streak = 0
    stopped_early = False

    for epoch in range(1, config.max_epochs + 1):
        order = rng.permutation(len(encoded))
        epoch_total = 0.0
        for start in range(0, len(order), config.batch_size):
            chunk = [encoded[i] for i in order[start : start + config.batch_size]]
            loss, grads = loss_and_gradients(work, chunk, train=True, rng=rng, dropout=config.dropout)
            if not np.isfinite(loss):
                raise NumericError("non-finite loss at epoch %d" % epoch)
            step += 1
            for name, grad in grads.items():
                if not np.all(np.isfinite(grad)):
                    raise NumericError("non-finite gradient in %r at epoch %d" % (name, epoch))
                adam_m[name] = ADAM_BETA1 * adam_m[name] + (1.0 - ADAM_BETA1) * grad
                adam_v[name] = ADAM_BETA2 * adam_v[name] + (1.0 - ADAM_BETA2) * grad * grad
                m_hat = adam_m[name] / (1.0 - ADAM_BETA1**step)
                v_hat = adam_v[name] / (1.0 - ADAM_BETA2**step)
                work.arrays[name] -= config.learning_rate * m_hat / (np.sqrt(v_hat) + ADAM_EPS)
            epoch_total += loss * len(chunk)
        epoch_loss = epoch_total / len(encoded)
        history.append(epoch_loss)
        if epoch_loss < best_loss:
            best_loss = epoch_loss
            best_epoch = epoch
            best_arrays = {name: array.copy() for name, array in work.arrays.items()}
        if len(history) >= 2 and abs(history[-1] - history[-2]) < config.tolerance:
            streak += 1
            if streak >= config.patience:
                stopped_early = True
                break
        else:
            streak = 0

    final = ClassifierParams(
        mode=params.mode,
        labels=params.labels,
        emb_dim=params.emb_dim,
        hidden_size=params.hidden_size,
        attention_size=params.attention_size,
        mlp_sizes=params.mlp_sizes,
        seed=params.seed,
        arrays=best_arrays,
    )
    return TrainResult(params=final, epoch_losses=history, best_epoch=best_epoch, stopped_early=stopped_early)


@dataclass
class PredictionResult:
    label_set: tuple[str, ...]
    labels: list[str]
    probabilities: np.ndarray
    all_oov: list[bool]

    def soft_probs(self, i: int) -> dict[str, float]:
        return {label: float(p) for label, p in zip(self.label_set, self.probabilities[i])}


def predict(
    params: ClassifierParams,
    documents: list[Document],
    space: VectorSpace | None = None,
    lexicon: EmotionLexicon | None = None,
    tie_stats: TieBreakStats | None = None,
    doc_vectors: dict[str, np.ndarray] | None = None,
) -> PredictionResult:
    """Label every document; argmax ties go to the earlier label.

    Cross-lingual prediction is just this call with the other language's
    embedding space (and lexicon), since embeddings live outside the
    trained weights.
    """
    probabilities = np.zeros((len(documents), len(params.labels)))
    flags: list[bool] = []
    labels: list[str] = []
    for i, doc in enumerate(documents):
        result = _forward_encoded(params, encode_document(doc, params, space, lexicon, tie_stats, doc_vectors))
        probabilities[i] = result.probs
        flags.append(result.all_oov)
        labels.append(params.labels[int(np.argmax(result.probs))])
    n_oov = sum(flags)
    if n_oov:
        log.warning("%d of %d documents predicted uniformly (nothing in vocabulary)", n_oov, len(documents))
    return PredictionResult(label_set=params.labels, labels=labels, probabilities=probabilities, all_oov=flags)


def save_checkpoint(params: ClassifierParams, path: str) -> None:
    """Weights and architecture as JSON; embeddings are not included."""
    payload = {
        "format": CHECKPOINT_FORMAT,
        "version": 1,
        "mode": {"kind": params.mode.kind, "use_af24": params.mode.use_af24},
        "labels": list(params.labels),
        "emb_dim": params.emb_dim,
        "hidden_size": params.hidden_size,
        "attention_size": params.attention_size,
        "mlp_sizes": list(params.mlp_sizes),
        "seed": params.seed,
        "arrays": {
            name: {"shape": list(array.shape), "values": [float(v) for v in array.ravel()]}
            for name, array in sorted(params.arrays.items())
        },
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, indent=2)
        handle.write("\n")


def load_checkpoint(path: str) -> ClassifierParams:
    with open(path, encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as err:
            raise InputError("%s: not valid JSON: %s" % (path, err)) from err
    if payload.get("format") != CHECKPOINT_FORMAT:
        raise InputError("%s: not a classifier checkpoint" % path)
    arrays = {}
    for name, entry in payload["arrays"].items():
        arrays[name] = np.array(entry["values"], dtype=np.float64).reshape(entry["shape"])
    return ClassifierParams(
        mode=EncodingMode(kind=payload["mode"]["kind"], use_af24=payload["mode"]["use_af24"]),
        labels=tuple(payload["labels"]),
        emb_dim=payload["emb_dim"],
        hidden_size=payload["hidden_size"],
        attention_size=payload["attention_size"],
        mlp_sizes=tuple(payload["mlp_sizes"]),
        seed=payload["seed"],
        arrays=arrays,
    )
