from __future__ import annotations

import numpy as np
import pytest

from coordfuse.data import EmbeddingTable, load_stopwords, preprocess_transcript
from coordfuse.exceptions import DataValidationError


@pytest.fixture
def table():
    tokens = ["cat", "sat", "runs", "mat"]
    rng = np.random.default_rng(0)
    return EmbeddingTable.from_matrix(tokens, rng.standard_normal((4, 6)))


class TestEmbeddingTable:
    def test_unk_row_is_mean(self):
        matrix = np.zeros((2, 100))
        matrix[0, 0] = 1.0
        matrix[1, 1] = 1.0
        table = EmbeddingTable.from_matrix(["a1", "b2"], matrix)
        expected = np.zeros(100)
        expected[0] = expected[1] = 0.5
        np.testing.assert_array_equal(table.unk_row, expected)

    def test_lookup_matrix_appends_unk(self, table):
        lookup = table.lookup_matrix()
        assert lookup.shape == (5, 6)
        np.testing.assert_array_equal(lookup[table.unk_index], table.unk_row)

    def test_empty_rejected(self):
        with pytest.raises(DataValidationError, match="empty vocabulary"):
            EmbeddingTable.from_matrix([], np.zeros((0, 3)))


class TestPreprocess:
    def test_stopword_and_punctuation_removal(self, table):
        doc = preprocess_transcript(["The cat sat."], {"the"}, table)
        assert doc.sentences == [[table.vocab["cat"], table.vocab["sat"]]]

    def test_punctuation_only_document(self, table):
        with pytest.raises(DataValidationError, match="empty document"):
            preprocess_transcript(["...", "!!"], set(), table)

    def test_oov_maps_to_unk(self, table):
        doc = preprocess_transcript(["zxqv runs"], set(), table)
        assert doc.sentences == [[table.unk_index, table.vocab["runs"]]]

    def test_empty_sentences_dropped(self, table):
        doc = preprocess_transcript(["the the", "cat mat"], {"the"}, table)
        assert doc.sentence_count == 1
        assert doc.raw_sentence_count == 2

    def test_idempotent_on_detokenized_text(self, table):
        stop = load_stopwords()
        doc = preprocess_transcript(
            ["The cat sat on a mat!", "It runs, and the cat runs."], stop, table
        )
        index_to_token = {i: t for t, i in table.vocab.items()}
        detok = [" ".join(index_to_token[i] for i in sent) for sent in doc.sentences]
        again = preprocess_transcript(detok, stop, table)
        assert again.sentences == doc.sentences

    def test_stopword_list_is_frozen_and_lowercase(self):
        stop = load_stopwords()
        assert "the" in stop and "and" in stop
        assert all(w == w.lower() for w in stop)
