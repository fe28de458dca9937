"""File formats: feature CSV, embeddings, transcripts, roster.

Feature CSV: first line ``# rate_hz=<float> channels=<name,...>``, then one
comma-separated frame per line (rows are frames, columns are channels).
Transcripts: tab-separated ``session_id<TAB>speaker<TAB>sentence`` lines;
only subject-tagged lines are used. Embeddings: ``token v1 ... vD`` lines.
Roster: CSV with subject_id, session_id, label, file paths, duration_s.
"""

from __future__ import annotations

import csv
import warnings
from pathlib import Path

import numpy as np

from ..exceptions import DataValidationError
from .series import FeatureSeries
from .text import EmbeddingTable

SUBJECT_SPEAKER = "SUBJ"


def write_feature_csv(path, series):
    lines = ["# rate_hz=%r channels=%s" % (float(series.rate_hz), ",".join(series.channel_names))]
    for frame in series.values.T:
        lines.append(",".join("%.6g" % v for v in frame))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_feature_csv(path, expected_channels=None):
    path = Path(path)
    if not path.exists():
        raise DataValidationError(f"feature file not found: {path}")
    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith("#"):
            raise DataValidationError(f"{path}: missing '# rate_hz=... channels=...' header")
        fields = dict(
            part.split("=", 1) for part in header.lstrip("#").split() if "=" in part
        )
        if "rate_hz" not in fields or "channels" not in fields:
            raise DataValidationError(f"{path}: malformed header {header!r}")
        try:
            rate_hz = float(fields["rate_hz"])
        except ValueError:
            raise DataValidationError(f"{path}: bad rate_hz in header") from None
        names = [n for n in fields["channels"].split(",") if n]
        rows = []
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            if len(cells) != len(names):
                raise DataValidationError(
                    f"{path}: row {lineno} has {len(cells)} values for {len(names)} channels"
                )
            try:
                row = [float(c) for c in cells]
            except ValueError:
                raise DataValidationError(f"{path}: unparsable value at row {lineno}") from None
            for col, v in enumerate(row, start=1):
                if not np.isfinite(v):
                    raise DataValidationError(
                        f"{path}: non-finite value at row {lineno}, column {col}"
                    )
            rows.append(row)
    if not rows:
        raise DataValidationError(f"{path}: no frames")
    if expected_channels is not None and len(names) != expected_channels:
        raise DataValidationError(
            f"{path}: channel count mismatch, expected {expected_channels} got {len(names)}"
        )
    values = np.asarray(rows, dtype=np.float64).T
    return FeatureSeries(values=values, rate_hz=rate_hz, channel_names=names)


def write_embeddings(path, table):
    lines = []
    for token, row_idx in table.vocab.items():
        coords = " ".join("%r" % v for v in table.matrix[row_idx])
        lines.append(f"{token} {coords}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_embeddings(path, dim=100):
    """Read token + vector lines; first occurrence of a token wins."""
    path = Path(path)
    if not path.exists():
        raise DataValidationError(f"embedding file not found: {path}")
    tokens, rows = [], []
    seen = {}
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            token, coords = parts[0], parts[1:]
            if len(coords) != dim:
                raise DataValidationError(
                    f"{path}: line {lineno} has {len(coords)} values, expected {dim}"
                )
            if token in seen:
                warnings.warn(f"duplicate embedding token {token!r} at line {lineno}; first kept")
                continue
            try:
                vec = [float(c) for c in coords]
            except ValueError:
                raise DataValidationError(f"{path}: unparsable value at line {lineno}") from None
            seen[token] = len(tokens)
            tokens.append(token)
            rows.append(vec)
    if not tokens:
        raise DataValidationError(f"{path}: empty vocabulary")
    return EmbeddingTable.from_matrix(tokens, np.asarray(rows, dtype=np.float64))


def write_transcripts(path, lines):
    """``lines`` is an iterable of (session_id, speaker, sentence)."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for session_id, speaker, sentence in lines:
            fh.write(f"{session_id}\t{speaker}\t{sentence}\n")


def load_transcripts(path, speaker=SUBJECT_SPEAKER):
    """Map session_id -> raw subject sentences (other speakers dropped)."""
    path = Path(path)
    if not path.exists():
        raise DataValidationError(f"transcript file not found: {path}")
    sessions = {}
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t", 2)
            if len(parts) != 3:
                raise DataValidationError(f"{path}: line {lineno} is not 3 tab-separated fields")
            session_id, tag, sentence = parts
            if tag == speaker:
                sessions.setdefault(session_id, []).append(sentence)
    return sessions


ROSTER_FIELDS = ["subject_id", "session_id", "label", "audio_path", "video_path", "duration_s"]


def write_roster(path, rows):
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=ROSTER_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row[k] for k in ROSTER_FIELDS})


def load_roster(path):
    path = Path(path)
    if not path.exists():
        raise DataValidationError(f"roster file not found: {path}")
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ROSTER_FIELDS:
            raise DataValidationError(f"{path}: expected columns {ROSTER_FIELDS}")
        rows = []
        for row in reader:
            row["duration_s"] = float(row["duration_s"])
            rows.append(row)
    if not rows:
        raise DataValidationError(f"{path}: empty roster")
    return rows
