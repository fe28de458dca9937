"""Multichannel time series and fixed-window segmentation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ..exceptions import DataValidationError
from ..validation import as_float_matrix, check_finite_matrix, check_positive


@dataclass
class FeatureSeries:
    """A channels x frames matrix at a fixed frame rate."""

    values: np.ndarray
    rate_hz: float
    channel_names: list = field(default_factory=list)

    def __post_init__(self):
        self.values = check_finite_matrix(as_float_matrix(self.values, "series"), "series")
        check_positive(self.rate_hz, "rate_hz")
        if self.values.shape[0] < 1 or self.values.shape[1] < 1:
            raise DataValidationError("series needs at least one channel and one frame")
        if not self.channel_names:
            self.channel_names = [f"ch{i}" for i in range(self.values.shape[0])]
        if len(self.channel_names) != self.values.shape[0]:
            raise DataValidationError(
                f"{len(self.channel_names)} channel names for {self.values.shape[0]} channels"
            )

    @property
    def channels(self):
        return self.values.shape[0]

    @property
    def frames(self):
        return self.values.shape[1]

    @property
    def duration_s(self):
        return self.frames / self.rate_hz


@dataclass
class Segment:
    """One windowed chunk of a parent series."""

    parent_session: str
    modality: str
    start_s: float
    end_s: float
    rate_hz: float
    values: np.ndarray

    def __post_init__(self):
        self.values = as_float_matrix(self.values, "segment")
        expected = round((self.end_s - self.start_s) * self.rate_hz)
        if self.values.shape[1] != expected:
            raise DataValidationError(
                f"segment frame count {self.values.shape[1]} != round((end-start)*rate) = {expected}"
            )

    @property
    def frames(self):
        return self.values.shape[1]

    @property
    def duration_s(self):
        return self.end_s - self.start_s


class SegmentationResult(list):
    """List of segments plus a flag for sessions shorter than the minimum."""

    def __init__(self, segments, too_short=False):
        super().__init__(segments)
        self.too_short = too_short


def segment_series(series, window_s, hop_s, min_s, parent_session="", modality=""):
    """Cut a series into windows starting at 0 with step ``hop_s``.

    A trailing partial window is kept iff it lasts at least ``min_s``.
    A series yielding no segments at all comes back flagged too_short.
    """
    if not 0 < hop_s <= window_s:
        raise DataValidationError(f"need 0 < hop_s <= window_s, got hop={hop_s} window={window_s}")
    if min_s > window_s:
        raise DataValidationError(f"min_s {min_s} exceeds window_s {window_s}")
    if series.frames == 0:
        raise DataValidationError("empty series")
    # Frame-integer arithmetic avoids float drift in window boundaries.
    rate = series.rate_hz
    window_f = round(window_s * rate)
    hop_f = round(hop_s * rate)
    min_f = round(min_s * rate)
    total = series.frames
    segments = []
    start = 0
    while start < total:
        end = min(start + window_f, total)
        if end - start >= min_f:
            segments.append(Segment(
                parent_session=parent_session,
                modality=modality,
                start_s=start / rate,
                end_s=end / rate,
                rate_hz=rate,
                values=series.values[:, start:end],
            ))
        if start + window_f >= total:
            break
        start += hop_f
    return SegmentationResult(segments, too_short=not segments)


class SegmentWindower(BaseEstimator, TransformerMixin):
    """Stateless transformer wrapping :func:`segment_series`."""

    def __init__(self, window_s=40.0, hop_s=35.0, min_s=5.0, modality="audio"):
        self.window_s = window_s
        self.hop_s = hop_s
        self.min_s = min_s
        self.modality = modality

    def fit(self, X=None, y=None):
        return self

    def transform(self, series, parent_session=""):
        return segment_series(
            series, self.window_s, self.hop_s, self.min_s,
            parent_session=parent_session, modality=self.modality,
        )
