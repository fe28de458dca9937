"""Seeded synthetic sessions standing in for a private interview corpus.

The coupled ("healthy"-proxy) class mixes a shared smoothed latent, delayed
per channel, into every channel, which plants a strong delayed-correlation
signature; the other class uses independent smoothed noise. Transcripts for
the coupled class stay on a single topic with probability
``text_topic_purity`` while the other class hops topics per sentence.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from functools import lru_cache

import numpy as np

from ..exceptions import DataValidationError
from ..validation import check_count, check_positive, check_unit_interval
from .records import LABEL_HEALTHY, LABEL_SCHIZOPHRENIA, SessionRecord
from .series import FeatureSeries
from .text import EmbeddingTable, load_stopwords, preprocess_transcript

RATE_HZ = 100.0
SMOOTH_WINDOW = 25

AUDIO_CHANNELS = ["LA", "LP", "TBCL", "TBCD", "TTCL", "TTCD", "AP", "PER"]
VIDEO_CHANNELS = ["AU09", "AU10", "AU12", "AU14", "AU15",
                  "AU17", "AU20", "AU23", "AU25", "AU26"]

N_TOPICS = 3
WORDS_PER_TOPIC = 20
EMBEDDING_DIM = 100

_CONSONANTS = "bdfgklmnprstvz"
_VOWELS = "aeiou"


@dataclass(frozen=True)
class SynthConfig:
    n_subjects_per_class: int = 9
    sessions_per_subject: int = 2
    session_len_s: float = 90.0
    coupling_strength: float = 0.8
    coupling_lag_frames: int = 30
    text_topic_purity: float = 0.9
    seed: int = 7

    def __post_init__(self):
        check_count(self.n_subjects_per_class, "n_subjects_per_class")
        check_count(self.sessions_per_subject, "sessions_per_subject")
        check_positive(self.session_len_s, "session_len_s")
        check_unit_interval(self.coupling_strength, "coupling_strength")
        check_count(self.coupling_lag_frames, "coupling_lag_frames", minimum=0)
        check_unit_interval(self.text_topic_purity, "text_topic_purity")


@dataclass
class SyntheticLexicon:
    """Topic word lists and their embedding table, fixed by a seed."""

    table: EmbeddingTable
    topic_words: list


def _make_word(rng):
    n_syllables = int(rng.integers(2, 4))
    return "".join(
        _CONSONANTS[rng.integers(len(_CONSONANTS))] + _VOWELS[rng.integers(len(_VOWELS))]
        for _ in range(n_syllables)
    )


@lru_cache(maxsize=8)
def lexicon_for_seed(seed):
    """Deterministic vocabulary: topic-clustered embeddings, fresh words."""
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), 0xA11CE]))
    stop = load_stopwords()
    words, topic_words = [], []
    used = set(stop)
    for _ in range(N_TOPICS):
        topic = []
        while len(topic) < WORDS_PER_TOPIC:
            w = _make_word(rng)
            if w not in used:
                used.add(w)
                topic.append(w)
        topic_words.append(topic)
        words.extend(topic)
    centroids = rng.standard_normal((N_TOPICS, EMBEDDING_DIM)) * 2.0
    rows = np.vstack([
        centroids[t] + 0.5 * rng.standard_normal(EMBEDDING_DIM)
        for t in range(N_TOPICS)
        for _ in range(WORDS_PER_TOPIC)
    ])
    return SyntheticLexicon(table=EmbeddingTable.from_matrix(words, rows),
                            topic_words=topic_words)


def _smooth(x, window=SMOOTH_WINDOW):
    kernel = np.ones(window) / window
    return np.convolve(x, kernel, mode="same")


def _independent_series(rng, n_channels, frames):
    return np.vstack([_smooth(rng.standard_normal(frames)) for _ in range(n_channels)])


def _coupled_series(rng, n_channels, frames, strength, max_lag):
    latent = _smooth(rng.standard_normal(frames + max_lag))
    lags = rng.integers(0, max_lag + 1, size=n_channels)
    values = np.empty((n_channels, frames))
    for c in range(n_channels):
        own = _smooth(rng.standard_normal(frames))
        shifted = latent[max_lag - lags[c]:max_lag - lags[c] + frames]
        values[c] = (1.0 - strength) * own + strength * shifted
    return values


def _raw_sentences(rng, label, cfg, lexicon):
    """Plain-prose sentences; stop words and punctuation get filtered later."""
    stop = sorted(load_stopwords())
    n_sentences = int(rng.integers(5, 9))
    pure = label == LABEL_HEALTHY and rng.random() < cfg.text_topic_purity
    home_topic = int(rng.integers(N_TOPICS))
    sentences = []
    for _ in range(n_sentences):
        topic = home_topic if pure else int(rng.integers(N_TOPICS))
        n_words = int(rng.integers(4, 9))
        words = []
        for _ in range(n_words):
            if rng.random() < 0.3:
                words.append(stop[rng.integers(len(stop))])
            words.append(lexicon.topic_words[topic][rng.integers(WORDS_PER_TOPIC)])
        text = " ".join(words)
        ending = "." if rng.random() < 0.8 else "?"
        sentences.append(text.capitalize() + ending)
    return sentences


def session_materials(label, cfg, rng):
    """Raw per-session arrays and prose, before any file round-trip."""
    if label not in (LABEL_HEALTHY, LABEL_SCHIZOPHRENIA):
        raise DataValidationError(f"unknown label {label!r}")
    frames = round(cfg.session_len_s * RATE_HZ)
    lexicon = lexicon_for_seed(cfg.seed)
    if label == LABEL_HEALTHY:
        audio = _coupled_series(rng, len(AUDIO_CHANNELS), frames,
                                cfg.coupling_strength, cfg.coupling_lag_frames)
        video = _coupled_series(rng, len(VIDEO_CHANNELS), frames,
                                cfg.coupling_strength, cfg.coupling_lag_frames)
    else:
        audio = _independent_series(rng, len(AUDIO_CHANNELS), frames)
        video = _independent_series(rng, len(VIDEO_CHANNELS), frames)
    sentences = _raw_sentences(rng, label, cfg, lexicon)
    return audio, video, sentences


def synth_session(label, cfg, rng, subject_id="s000", session_id="sess000"):
    """Generate one fully-assembled session, deterministic given the rng state."""
    audio, video, sentences = session_materials(label, cfg, rng)
    lexicon = lexicon_for_seed(cfg.seed)
    doc = preprocess_transcript(sentences, load_stopwords(), lexicon.table)
    return SessionRecord(
        subject_id=subject_id,
        session_id=session_id,
        label=label,
        audio=FeatureSeries(values=audio, rate_hz=RATE_HZ, channel_names=list(AUDIO_CHANNELS)),
        video=FeatureSeries(values=video, rate_hz=RATE_HZ, channel_names=list(VIDEO_CHANNELS)),
        transcript=doc,
        duration_s=cfg.session_len_s,
    )


def roster_plan(cfg, total_sessions=None):
    """Subjects and their session counts.

    Extra sessions beyond ``sessions_per_subject`` (when ``total_sessions``
    asks for more) go round-robin to subjects in alternating class order, so
    both classes keep similar session counts.
    """
    subjects = []
    for i in range(cfg.n_subjects_per_class):
        subjects.append((f"sz{i:02d}", LABEL_SCHIZOPHRENIA))
        subjects.append((f"hc{i:02d}", LABEL_HEALTHY))
    counts = {sid: cfg.sessions_per_subject for sid, _ in subjects}
    if total_sessions is not None:
        base = cfg.sessions_per_subject * len(subjects)
        extra = total_sessions - base
        if extra < 0:
            raise DataValidationError(
                f"total_sessions={total_sessions} below the {base} implied by the config"
            )
        for j in range(extra):
            counts[subjects[j % len(subjects)][0]] += 1
    return subjects, counts


def generate_sessions(cfg, total_sessions=None):
    """Yield (SessionRecord, raw_sentences) for the whole synthetic roster."""
    subjects, counts = roster_plan(cfg, total_sessions)
    session_no = 0
    for subj_idx, (subject_id, label) in enumerate(subjects):
        for k in range(counts[subject_id]):
            rng = np.random.default_rng(np.random.SeedSequence([int(cfg.seed), subj_idx, k]))
            session_id = f"sess{session_no:03d}"
            session_no += 1
            audio, video, sentences = session_materials(label, cfg, rng)
            lexicon = lexicon_for_seed(cfg.seed)
            doc = preprocess_transcript(sentences, load_stopwords(), lexicon.table)
            record = SessionRecord(
                subject_id=subject_id,
                session_id=session_id,
                label=label,
                audio=FeatureSeries(values=audio, rate_hz=RATE_HZ,
                                    channel_names=list(AUDIO_CHANNELS)),
                video=FeatureSeries(values=video, rate_hz=RATE_HZ,
                                    channel_names=list(VIDEO_CHANNELS)),
                transcript=doc,
                duration_s=cfg.session_len_s,
            )
            yield record, sentences


def config_as_dict(cfg):
    return asdict(cfg)
