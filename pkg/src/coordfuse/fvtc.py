"""Delayed auto/cross-correlation structures over channel pairs.

For a segment with channels x(i), entry (i, j, d) of the structure is the
Pearson correlation between x_i[0:T-d] and x_j[d:T], for every ordered
channel pair and every delay d = 0..max_delay. Zero-variance slices yield
0 by policy, so constant channels never produce NaN.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .exceptions import DataValidationError
from .validation import check_count


@dataclass(frozen=True)
class FvtcConfig:
    max_delay: int = 50
    normalization: str = "pearson"
    zero_variance_policy: str = "emit_zero"

    def __post_init__(self):
        check_count(self.max_delay, "max_delay")
        if self.normalization != "pearson":
            raise DataValidationError(f"unsupported normalization {self.normalization!r}")
        if self.zero_variance_policy != "emit_zero":
            raise DataValidationError(f"unsupported policy {self.zero_variance_policy!r}")


@dataclass
class FvtcStructure:
    """C x C x (D+1) correlation tensor; delay is the trailing axis."""

    tensor: np.ndarray

    @property
    def channels(self):
        return self.tensor.shape[0]

    @property
    def max_delay(self):
        return self.tensor.shape[2] - 1


@dataclass
class FvtcMap:
    """Row-major (i*C + j) flattening of the structure: C^2 x (D+1)."""

    values: np.ndarray
    channels: int

    @property
    def max_delay(self):
        return self.values.shape[1] - 1


def xcorr_delay(x, y, d):
    """Pearson correlation between x[0:T-d] and y[d:T] (0 if degenerate)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise DataValidationError("xcorr_delay expects equal-length 1-D inputs")
    t = x.size
    if d < 0 or d >= t:
        raise DataValidationError(f"delay {d} exceeds segment length {t}")
    a = x[:t - d] if d else x
    b = y[d:]
    a = a - a.mean()
    b = b - b.mean()
    denom = np.sqrt(np.dot(a, a) * np.dot(b, b))
    if denom == 0.0:
        return 0.0
    return float(np.clip(np.dot(a, b) / denom, -1.0, 1.0))


def compute_fvtc(segment, cfg):
    """Vectorised kernel filling the full ordered-pair x delay tensor.

    Per delay d it forms the cross-correlation matrix between the leading
    and trailing slices of all channels in one pass. The d = 0 slice is
    mirrored from its lower triangle and its diagonal pinned to exactly 1
    (0 for constant channels) so the structure invariants hold exactly.
    """
    values = np.asarray(segment.values, dtype=np.float64)
    n_channels, frames = values.shape
    d_max = cfg.max_delay
    if frames <= d_max:
        raise DataValidationError(
            f"segment too short: {frames} frames for max delay {d_max}"
        )
    tensor = np.empty((n_channels, n_channels, d_max + 1))
    for d in range(d_max + 1):
        lead = values[:, :frames - d] if d else values
        trail = values[:, d:]
        lead = lead - lead.mean(axis=1, keepdims=True)
        trail = trail - trail.mean(axis=1, keepdims=True)
        lead_norm = np.sqrt(np.einsum("ct,ct->c", lead, lead))
        trail_norm = np.sqrt(np.einsum("ct,ct->c", trail, trail))
        cov = lead @ trail.T
        denom = np.outer(lead_norm, trail_norm)
        with np.errstate(invalid="ignore", divide="ignore"):
            corr = np.where(denom > 0.0, cov / np.where(denom > 0.0, denom, 1.0), 0.0)
        tensor[:, :, d] = np.clip(corr, -1.0, 1.0)
    slice0 = tensor[:, :, 0]
    lower = np.tril(slice0)
    tensor[:, :, 0] = lower + np.tril(slice0, -1).T
    constant = values.std(axis=1) == 0.0
    np.fill_diagonal(tensor[:, :, 0], np.where(constant, 0.0, 1.0))
    return FvtcStructure(tensor=tensor)


def fvtc_to_map(structure):
    c = structure.channels
    d1 = structure.max_delay + 1
    return FvtcMap(values=structure.tensor.reshape(c * c, d1).copy(), channels=c)


def map_to_fvtc(fmap):
    c = fmap.channels
    return FvtcStructure(tensor=fmap.values.reshape(c, c, fmap.values.shape[1]).copy())


def grid_search_delay(candidates, evaluate):
    """argmax of ``evaluate`` over candidate delays, ties to the smaller D."""
    candidates = list(candidates)
    if not candidates:
        raise DataValidationError("empty candidate list")
    best_d, best_score = None, None
    for d in sorted(candidates):
        score = evaluate(d)
        if best_score is None or score > best_score:
            best_d, best_score = d, score
    return best_d


def dump_map(path, fmap):
    """Binary cache format: little-endian uint32 (C, D) then row-major f8."""
    with open(path, "wb") as fh:
        fh.write(struct.pack("<II", fmap.channels, fmap.max_delay))
        fh.write(np.ascontiguousarray(fmap.values, dtype="<f8").tobytes())


def load_map(path):
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 8:
        raise DataValidationError(f"truncated FVTC map file: {path}")
    c, d = struct.unpack_from("<II", blob, 0)
    expected = c * c * (d + 1)
    payload = np.frombuffer(blob, dtype="<f8", offset=8)
    if payload.size != expected:
        raise DataValidationError(
            f"corrupt FVTC map file {path}: {payload.size} values for C={c} D={d}"
        )
    return FvtcMap(values=payload.reshape(c * c, d + 1).astype(np.float64), channels=c)


class FvtcExtractor(BaseEstimator, TransformerMixin):
    """Transformer turning segments into flattened correlation maps."""

    def __init__(self, max_delay=50):
        self.max_delay = max_delay

    def fit(self, X=None, y=None):
        return self

    def transform(self, segments):
        cfg = FvtcConfig(max_delay=self.max_delay)
        return [fvtc_to_map(compute_fvtc(seg, cfg)).values for seg in segments]
