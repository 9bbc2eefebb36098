"""Word alignment, dictionary extraction, and embedding-space alignment."""

import logging

import numpy as np
import pytest

from xlemo.align import (
    NULL_TOKEN,
    AlignmentMap,
    BilingualDictionary,
    TranslationTable,
    extract_dictionary,
    identical_string_seed,
    load_alignment,
    load_dictionary_tsv,
    map_space,
    procrustes_align,
    save_alignment,
    save_dictionary_tsv,
    train_ibm1,
    translate_retrieve,
    translate_retrieve_batch,
)
from xlemo.corpus import ParallelCorpus
from xlemo.embeddings import build_space
from xlemo.errors import InputError, NumericError

from conftest import build_rotated_spaces, build_translation_corpus


def _toy_parallel():
    return ParallelCorpus(
        pairs=[(["a", "b"], ["x", "y"]), (["a"], ["x"])],
        source_language="src",
        target_language="tgt",
    )


class TestTranslationModelTraining:
    # Frozen expectations below come from running expectation-maximization
    # by hand on the two-sentence corpus: uniform initialization over
    # co-occurring pairs, expected counts shared proportionally to the
    # current probabilities, then per-source renormalization.
    def test_toy_corpus_probabilities(self):
        table = train_ibm1(_toy_parallel(), iterations=5)
        np.testing.assert_allclose(table.prob("x", "a"), 0.8775979370264826, rtol=1e-12)
        np.testing.assert_allclose(table.prob("y", "a"), 0.12240206297351722, rtol=1e-12)
        np.testing.assert_allclose(table.prob("x", "b"), 0.10799297785836544, rtol=1e-12)
        np.testing.assert_allclose(table.prob("y", "b"), 0.8920070221416345, rtol=1e-12)
        # the empty-word row sees the same evidence as "a" here
        np.testing.assert_allclose(table.prob("x", NULL_TOKEN), 0.8775979370264826, rtol=1e-12)

    def test_toy_corpus_log_likelihood_trace(self):
        table = train_ibm1(_toy_parallel(), iterations=5)
        np.testing.assert_allclose(
            table.log_likelihoods,
            [
                -2.079441541679836,
                -1.8079244060814104,
                -1.7228408866573195,
                -1.6580061032483628,
                -1.6107884559535628,
            ],
            rtol=1e-12,
        )

    def test_first_iteration_likelihood_in_closed_form(self):
        # With uniform rows of 1/2, each of the three target tokens
        # contributes exactly log(1/2) no matter the sentence length.
        table = train_ibm1(_toy_parallel(), iterations=1)
        np.testing.assert_allclose(table.log_likelihoods[0], -3.0 * np.log(2.0), rtol=1e-12)

    @pytest.mark.parametrize("seed", [99, 123])
    def test_likelihood_never_decreases(self, seed):
        corpus, _ = build_translation_corpus(seed=seed, n_words=25, n_pairs=120)
        table = train_ibm1(corpus, iterations=6)
        diffs = np.diff(table.log_likelihoods)
        assert np.all(diffs >= -1e-9)

    def test_rows_are_distributions(self):
        corpus, _ = build_translation_corpus(seed=7, n_words=20, n_pairs=80)
        table = train_ibm1(corpus, iterations=4)
        table.validate()
        for row in table.probs.values():
            np.testing.assert_allclose(sum(row.values()), 1.0, atol=1e-9)

    def test_cooccurrence_counts_sentence_pairs_once(self):
        corpus = ParallelCorpus(
            pairs=[(["a", "a"], ["x", "x"]), (["a", "b"], ["x"]), (["a"], ["y"])],
            source_language="src",
            target_language="tgt",
        )
        table = train_ibm1(corpus, iterations=1)
        assert table.cooccur[("a", "x")] == 2
        assert table.cooccur[("b", "x")] == 1
        assert table.cooccur[("a", "y")] == 1
        assert table.cooccur[(NULL_TOKEN, "x")] == 2

    def test_empty_corpus_rejected(self):
        empty = ParallelCorpus(pairs=[], source_language="src", target_language="tgt")
        with pytest.raises(InputError):
            train_ibm1(empty)

    def test_zero_iterations_rejected(self):
        with pytest.raises(InputError):
            train_ibm1(_toy_parallel(), iterations=0)

    def test_validate_flags_bad_row(self):
        table = TranslationTable(probs={"a": {"x": 0.7, "y": 0.2}}, cooccur={})
        with pytest.raises(NumericError):
            table.validate()


class TestDictionaryExtraction:
    def _table(self, probs, cooccur):
        return TranslationTable(probs=probs, cooccur=cooccur, source_language="src", target_language="tgt")

    def test_argmax_pairs_pass_floors(self):
        table = self._table(
            {"cat": {"gato": 0.8, "perro": 0.2}, "dog": {"perro": 0.9, "gato": 0.1}},
            {("cat", "gato"): 3, ("dog", "perro"): 5},
        )
        result = extract_dictionary(table)
        assert result.pairs == {("cat", "gato"): 0.8, ("dog", "perro"): 0.9}

    def test_probability_floor(self):
        table = self._table({"w": {"t%d" % i: 1.0 / 12 for i in range(12)}}, {("w", "t0"): 9})
        assert len(extract_dictionary(table, min_prob=0.1, min_cooccur=1)) == 0
        assert len(extract_dictionary(table, min_prob=0.05, min_cooccur=1)) == 1

    def test_cooccurrence_floor(self):
        table = self._table({"w": {"t": 1.0}}, {("w", "t"): 1})
        assert len(extract_dictionary(table, min_cooccur=2)) == 0
        assert extract_dictionary(table, min_cooccur=1).pairs == {("w", "t"): 1.0}

    def test_tied_probabilities_take_earlier_word(self):
        table = self._table({"w": {"zeta": 0.5, "beta": 0.5}}, {("w", "beta"): 4, ("w", "zeta"): 4})
        assert extract_dictionary(table).pairs == {("w", "beta"): 0.5}

    def test_null_rows_and_targets_excluded(self):
        table = self._table(
            {NULL_TOKEN: {"t": 1.0}, "w": {NULL_TOKEN: 0.9, "t": 0.1}},
            {(NULL_TOKEN, "t"): 9, ("w", NULL_TOKEN): 9, ("w", "t"): 9},
        )
        assert len(extract_dictionary(table)) == 0

    def test_trained_toy_extraction(self):
        table = train_ibm1(_toy_parallel(), iterations=5)
        # "b" only ever co-occurs with its translation once, so the
        # default co-occurrence floor drops it.
        assert set(extract_dictionary(table).pairs) == {("a", "x")}
        loose = extract_dictionary(table, min_cooccur=1)
        assert set(loose.pairs) == {("a", "x"), ("b", "y")}

    def test_languages_carried_over(self):
        table = self._table({"w": {"t": 1.0}}, {("w", "t"): 2})
        result = extract_dictionary(table)
        assert (result.source_language, result.target_language) == ("src", "tgt")


class TestDictionaryFiles:
    def test_round_trip_is_byte_identical(self, tmp_path):
        dictionary = BilingualDictionary(source_language="src", target_language="tgt")
        dictionary.add("b", "y", 0.25)
        dictionary.add("a", "x", 1.0 / 3.0)
        first = str(tmp_path / "d1.tsv")
        second = str(tmp_path / "d2.tsv")
        save_dictionary_tsv(dictionary, first)
        loaded = load_dictionary_tsv(first, "src", "tgt")
        assert loaded.pairs == dictionary.pairs
        save_dictionary_tsv(loaded, second)
        assert open(first, "rb").read() == open(second, "rb").read()

    def test_two_column_rows_score_one(self, tmp_path):
        path = tmp_path / "d.tsv"
        path.write_text("cat\tgato\n\ndog\tperro\t0.5\n")
        loaded = load_dictionary_tsv(str(path))
        assert loaded.pairs == {("cat", "gato"): 1.0, ("dog", "perro"): 0.5}

    def test_bad_column_count_reports_line(self, tmp_path):
        path = tmp_path / "d.tsv"
        path.write_text("cat\tgato\ndog\n")
        with pytest.raises(InputError, match="line 2"):
            load_dictionary_tsv(str(path))


class TestIdenticalStringSeed:
    def test_shared_spellings_pair_up(self):
        src = build_space("src", ["taxi", "unique", "radio"], np.eye(3))
        tgt = build_space("tgt", ["radio", "taxi", "other"], np.eye(3))
        seed = identical_string_seed(src, tgt)
        assert seed.pairs == {("radio", "radio"): 1.0, ("taxi", "taxi"): 1.0}

    def test_disjoint_vocabularies_empty(self):
        src = build_space("src", ["aa"], np.ones((1, 2)))
        tgt = build_space("tgt", ["bb"], np.ones((1, 2)))
        assert len(identical_string_seed(src, tgt)) == 0


class TestProcrustes:
    def test_recovers_planted_rotation(self):
        src, tgt, seed = build_rotated_spaces(seed=17, dim=16, n_words=400, noise=1e-3)
        alignment = procrustes_align(src, tgt, seed)
        mapped = map_space(src, alignment)
        # rows were unit length before rotation; residual is noise-limited
        residual = np.max(np.abs(mapped.matrix - tgt.matrix))
        assert residual < 5e-3

    def test_map_is_orthogonal(self):
        src, tgt, seed = build_rotated_spaces(seed=3, dim=12, n_words=200)
        alignment = procrustes_align(src, tgt, seed)
        gram = alignment.matrix.T @ alignment.matrix
        np.testing.assert_allclose(gram, np.eye(12), atol=1e-9)

    def test_seed_order_does_not_matter(self):
        src, tgt, seed = build_rotated_spaces(seed=5, dim=8, n_words=100)
        shuffled = BilingualDictionary(
            source_language=seed.source_language, target_language=seed.target_language
        )
        for key in reversed(list(seed.pairs)):
            shuffled.add(key[0], key[1], seed.pairs[key])
        first = procrustes_align(src, tgt, seed)
        second = procrustes_align(src, tgt, shuffled)
        np.testing.assert_array_equal(first.matrix, second.matrix)

    def test_deterministic_across_runs(self):
        src, tgt, seed = build_rotated_spaces(seed=11, dim=8, n_words=100)
        first = procrustes_align(src, tgt, seed)
        second = procrustes_align(src, tgt, seed)
        np.testing.assert_array_equal(first.matrix, second.matrix)

    def test_unusable_pairs_are_skipped(self):
        src, tgt, seed = build_rotated_spaces(seed=5, dim=8, n_words=100)
        noisy = BilingualDictionary()
        for (s, t), score in seed.pairs.items():
            noisy.add(s, t, score)
        noisy.add("no-such-word", "xword0", 1.0)
        noisy.add("word0", "no-such-word", 1.0)
        np.testing.assert_array_equal(
            procrustes_align(src, tgt, noisy).matrix, procrustes_align(src, tgt, seed).matrix
        )

    def test_too_few_pairs_rejected(self):
        src, tgt, _ = build_rotated_spaces(seed=5, dim=8, n_words=100)
        seed = BilingualDictionary()
        seed.add("word0", "xword0", 1.0)
        seed.add("word1", "xword1", 1.0)
        with pytest.raises(InputError, match="3"):
            procrustes_align(src, tgt, seed)

    def test_underdetermined_seed_warns(self, caplog):
        src, tgt, _ = build_rotated_spaces(seed=5, dim=8, n_words=100)
        seed = BilingualDictionary()
        for i in range(4):
            seed.add("word%d" % i, "xword%d" % i, 1.0)
        with caplog.at_level(logging.WARNING, logger="xlemo.align"):
            procrustes_align(src, tgt, seed)
        assert any("seed pairs" in record.message for record in caplog.records)

    def test_dimension_mismatch_rejected(self):
        src = build_space("src", ["a", "b", "c"], np.eye(3))
        tgt = build_space("tgt", ["a", "b", "c"], np.eye(3)[:, :2])
        seed = identical_string_seed(src, src)
        with pytest.raises(InputError, match="dimension"):
            procrustes_align(src, tgt, seed)

    def test_identity_when_spaces_coincide(self):
        rng = np.random.default_rng(0)
        space = build_space("src", ["w%d" % i for i in range(10)], rng.normal(size=(10, 4)))
        seed = identical_string_seed(space, space)
        alignment = procrustes_align(src=space, tgt=space, seed=seed)
        np.testing.assert_allclose(alignment.matrix, np.eye(4), atol=1e-12)


class TestAlignmentMap:
    def test_non_orthogonal_matrix_rejected(self):
        with pytest.raises(NumericError, match="orthogonal"):
            AlignmentMap(matrix=np.array([[1.0, 0.0], [0.0, 2.0]]))

    def test_non_square_rejected(self):
        with pytest.raises(InputError, match="square"):
            AlignmentMap(matrix=np.ones((2, 3)))

    def test_round_trip_is_byte_identical(self, tmp_path):
        src, tgt, seed = build_rotated_spaces(seed=2, dim=6, n_words=80)
        alignment = procrustes_align(src, tgt, seed)
        first = str(tmp_path / "a1.json")
        second = str(tmp_path / "a2.json")
        save_alignment(alignment, first)
        loaded = load_alignment(first)
        np.testing.assert_array_equal(loaded.matrix, alignment.matrix)
        assert loaded.source_language == "src"
        assert loaded.target_language == "tgt"
        save_alignment(loaded, second)
        assert open(first, "rb").read() == open(second, "rb").read()

    def test_bad_json_rejected(self, tmp_path):
        path = tmp_path / "a.json"
        path.write_text("{not json")
        with pytest.raises(InputError, match="JSON"):
            load_alignment(str(path))

    def test_map_space_applies_rows(self):
        rng = np.random.default_rng(8)
        space = build_space("src", ["a", "b"], rng.normal(size=(2, 3)))
        rotation = np.linalg.qr(rng.normal(size=(3, 3)))[0]
        alignment = AlignmentMap(matrix=rotation)
        mapped = map_space(space, alignment)
        np.testing.assert_allclose(mapped.matrix, space.matrix @ rotation.T, atol=1e-15)
        assert mapped.vocabulary == space.vocabulary

    def test_map_space_dimension_guard(self):
        space = build_space("src", ["a"], np.ones((1, 3)))
        with pytest.raises(InputError, match="dimension"):
            map_space(space, AlignmentMap(matrix=np.eye(2)))


def _brute_force_csls(src_matrix, tgt_matrix, query_row, neighbors=10):
    """Corrected score of one query row against every target row."""

    def unit(rows):
        norms = np.linalg.norm(rows, axis=1, keepdims=True)
        return rows / np.where(norms == 0.0, 1.0, norms)

    s = unit(src_matrix)
    t = unit(tgt_matrix)
    sims_all = s @ t.T
    query_sims = sims_all[query_row]
    r_t = np.mean(sorted(query_sims)[-min(neighbors, len(query_sims)):])
    scores = np.empty(len(t))
    for j in range(len(t)):
        back = sims_all[:, j]
        r_s = np.mean(sorted(back)[-min(neighbors, len(back)):])
        scores[j] = 2.0 * query_sims[j] - r_t - r_s
    return scores


class TestRetrieval:
    def _spaces(self):
        src = build_space("src", ["q"], np.array([[1.0, 0.0]]))
        tgt = build_space(
            "tgt",
            ["far", "near", "mid"],
            np.array([[-1.0, 0.0], [2.0, 0.0], [1.0, 1.0]]),
        )
        return src, tgt

    def test_cosine_scores_and_order(self):
        src, tgt = self._spaces()
        hits = translate_retrieve("q", src, tgt, k=3)
        assert [w for w, _ in hits] == ["near", "mid", "far"]
        np.testing.assert_allclose(
            [score for _, score in hits], [1.0, np.sqrt(0.5), -1.0], atol=1e-12
        )

    def test_tied_scores_take_earlier_target_row(self):
        src = build_space("src", ["q"], np.array([[1.0, 0.0]]))
        tgt = build_space("tgt", ["zz", "aa"], np.array([[3.0, 0.0], [1.0, 0.0]]))
        hits = translate_retrieve("q", src, tgt, k=2)
        assert [w for w, _ in hits] == ["zz", "aa"]

    def test_k_clamps_to_vocabulary(self):
        src, tgt = self._spaces()
        assert len(translate_retrieve("q", src, tgt, k=50)) == 3

    def test_batch_matches_single(self):
        src, tgt, seed = build_rotated_spaces(seed=23, dim=8, n_words=60)
        aligned = map_space(src, procrustes_align(src, tgt, seed))
        words = ["word%d" % i for i in range(10)]
        batch = translate_retrieve_batch(words, aligned, tgt, k=2, metric="csls")
        for word in words:
            single = translate_retrieve(word, aligned, tgt, k=2, metric="csls")
            assert [w for w, _ in single] == [w for w, _ in batch[word]]
            np.testing.assert_allclose(
                [s for _, s in single], [s for _, s in batch[word]], rtol=1e-12
            )

    def test_csls_matches_brute_force(self):
        rng = np.random.default_rng(41)
        src = build_space("src", ["s%d" % i for i in range(30)], rng.normal(size=(30, 8)))
        tgt = build_space("tgt", ["t%d" % i for i in range(25)], rng.normal(size=(25, 8)))
        batch = translate_retrieve_batch(["s3", "s17"], src, tgt, k=25, metric="csls")
        for word in ("s3", "s17"):
            expected = _brute_force_csls(src.matrix, tgt.matrix, src.vocabulary[word])
            got = {w: score for w, score in batch[word]}
            for j in range(25):
                np.testing.assert_allclose(got["t%d" % j], expected[j], atol=1e-12)

    def test_cosine_retrieval_on_rotated_spaces(self):
        src, tgt, seed = build_rotated_spaces(seed=17, dim=16, n_words=300)
        aligned = map_space(src, procrustes_align(src, tgt, seed))
        words = ["word%d" % i for i in range(100)]
        batch = translate_retrieve_batch(words, aligned, tgt, k=1)
        correct = sum(1 for w in words if batch[w][0][0] == "x" + w)
        assert correct >= 95

    def test_rejections(self):
        src, tgt = self._spaces()
        with pytest.raises(InputError):
            translate_retrieve("missing", src, tgt)
        with pytest.raises(InputError):
            translate_retrieve("q", src, tgt, k=0)
        with pytest.raises(InputError):
            translate_retrieve("q", src, tgt, metric="euclidean")
