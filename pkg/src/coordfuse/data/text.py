"""Transcript preprocessing and word-embedding tables."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from ..exceptions import DataValidationError
from ..validation import as_float_matrix, check_finite_matrix

_TOKEN_SPLIT = re.compile(r"[^a-z0-9]+")


@lru_cache(maxsize=1)
def load_stopwords():
    """The frozen English stop word list shipped with the package."""
    text = resources.files("coordfuse.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


@dataclass
class EmbeddingTable:
    """Token -> dense vector table with a mean-vector UNK fallback."""

    dim: int
    vocab: dict
    matrix: np.ndarray
    unk_row: np.ndarray

    @classmethod
    def from_matrix(cls, tokens, matrix):
        matrix = check_finite_matrix(as_float_matrix(matrix, "embeddings"), "embeddings")
        if len(tokens) != matrix.shape[0]:
            raise DataValidationError("token list does not match embedding row count")
        if matrix.shape[0] == 0:
            raise DataValidationError("empty vocabulary")
        vocab = {tok: i for i, tok in enumerate(tokens)}
        return cls(dim=matrix.shape[1], vocab=vocab, matrix=matrix,
                   unk_row=matrix.mean(axis=0))

    @property
    def unk_index(self):
        return len(self.vocab)

    @property
    def vocab_size(self):
        """Row count of the lookup matrix, UNK included."""
        return len(self.vocab) + 1

    def lookup_matrix(self):
        """Embedding matrix with the UNK row appended as the last row."""
        return np.vstack([self.matrix, self.unk_row[None, :]])

    def index_of(self, token):
        return self.vocab.get(token, self.unk_index)

    def tokens(self):
        return list(self.vocab)


@dataclass
class TranscriptDoc:
    """Sentences of token indices into an embedding lookup matrix."""

    sentences: list
    vocab_size: int
    raw_sentence_count: int = 0

    def __post_init__(self):
        for sent in self.sentences:
            if not sent:
                raise DataValidationError("transcript contains an empty sentence")
            if max(sent) >= self.vocab_size:
                raise DataValidationError("token index out of vocabulary range")

    @property
    def sentence_count(self):
        return len(self.sentences)

    @property
    def token_count(self):
        return sum(len(s) for s in self.sentences)


def tokenize(text):
    """Lowercase and split on runs of non-alphanumeric characters."""
    return [tok for tok in _TOKEN_SPLIT.split(text.lower()) if tok]


def preprocess_transcript(raw_sentences, stoplist, table):
    """Tokenise, drop stop words, map to indices (unknown tokens -> UNK).

    Sentences that end up empty are dropped; a document with nothing left
    raises an "empty document" error.
    """
    sentences = []
    for raw in raw_sentences:
        kept = [table.index_of(tok) for tok in tokenize(raw) if tok not in stoplist]
        if kept:
            sentences.append(kept)
    if not sentences:
        raise DataValidationError("empty document after preprocessing")
    return TranscriptDoc(
        sentences=sentences,
        vocab_size=table.vocab_size,
        raw_sentence_count=len(raw_sentences),
    )
