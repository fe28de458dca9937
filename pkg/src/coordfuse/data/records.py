"""Session-level record types shared across the pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..exceptions import DataValidationError
from .series import FeatureSeries
from .text import TranscriptDoc

LABEL_SCHIZOPHRENIA = "schizophrenia"
LABEL_HEALTHY = "healthy"
LABELS = (LABEL_SCHIZOPHRENIA, LABEL_HEALTHY)


@dataclass
class SessionRecord:
    """One interview session with all three modalities attached."""

    subject_id: str
    session_id: str
    label: str
    audio: FeatureSeries
    video: FeatureSeries
    transcript: TranscriptDoc
    duration_s: float

    def __post_init__(self):
        if not self.subject_id:
            raise DataValidationError("subject_id must be non-empty")
        if self.label not in LABELS:
            raise DataValidationError(f"unknown label {self.label!r}, expected one of {LABELS}")
        if not self.duration_s > 0:
            raise DataValidationError("duration_s must be positive")


@dataclass
class SessionFeatures:
    """Model-ready view of a session: correlation maps plus the token doc."""

    session_id: str
    subject_id: str
    label: str
    audio_maps: list = field(default_factory=list)
    video_maps: list = field(default_factory=list)
    doc: TranscriptDoc | None = None
    duration_s: float = 0.0

    def require(self, modality):
        """Return the given modality's input, failing loudly if absent."""
        if modality == "audio":
            if not self.audio_maps:
                raise DataValidationError(f"session {self.session_id}: missing audio maps")
            return self.audio_maps
        if modality == "video":
            if not self.video_maps:
                raise DataValidationError(f"session {self.session_id}: missing video maps")
            return self.video_maps
        if modality == "text":
            if self.doc is None or not self.doc.sentences:
                raise DataValidationError(f"session {self.session_id}: missing transcript")
            return self.doc
        raise ValueError(f"unknown modality {modality!r}")


def target_value(label):
    """BCE target: the schizophrenia class is the positive class."""
    return 1.0 if label == LABEL_SCHIZOPHRENIA else 0.0


def balanced_targets(labels):
    return np.array([target_value(lbl) for lbl in labels], dtype=np.float64)
