from .records import (
    LABEL_HEALTHY,
    LABEL_SCHIZOPHRENIA,
    LABELS,
    SessionFeatures,
    SessionRecord,
    target_value,
)
from .series import FeatureSeries, Segment, SegmentationResult, SegmentWindower, segment_series
from .synthetic import (
    AUDIO_CHANNELS,
    RATE_HZ,
    VIDEO_CHANNELS,
    SynthConfig,
    generate_sessions,
    lexicon_for_seed,
    roster_plan,
    synth_session,
)
from .text import EmbeddingTable, TranscriptDoc, load_stopwords, preprocess_transcript, tokenize
from . import io

__all__ = [
    "AUDIO_CHANNELS",
    "EmbeddingTable",
    "FeatureSeries",
    "LABELS",
    "LABEL_HEALTHY",
    "LABEL_SCHIZOPHRENIA",
    "RATE_HZ",
    "Segment",
    "SegmentationResult",
    "SegmentWindower",
    "SessionFeatures",
    "SessionRecord",
    "SynthConfig",
    "TranscriptDoc",
    "VIDEO_CHANNELS",
    "generate_sessions",
    "io",
    "lexicon_for_seed",
    "load_stopwords",
    "preprocess_transcript",
    "roster_plan",
    "segment_series",
    "synth_session",
    "target_value",
    "tokenize",
]
