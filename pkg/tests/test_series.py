from __future__ import annotations

import numpy as np
import pytest

from coordfuse.data import FeatureSeries, SegmentWindower, segment_series
from coordfuse.exceptions import DataValidationError


def make_series(duration_s, channels=2, rate=100.0, seed=0):
    rng = np.random.default_rng(seed)
    return FeatureSeries(
        values=rng.standard_normal((channels, round(duration_s * rate))),
        rate_hz=rate,
    )


class TestFeatureSeries:
    def test_rejects_nan(self):
        values = np.zeros((2, 10))
        values[1, 3] = np.nan
        with pytest.raises(DataValidationError, match="non-finite"):
            FeatureSeries(values=values, rate_hz=100.0)

    def test_rejects_bad_rate(self):
        with pytest.raises(DataValidationError, match="rate_hz"):
            FeatureSeries(values=np.zeros((1, 5)), rate_hz=0.0)

    def test_channel_name_mismatch(self):
        with pytest.raises(DataValidationError, match="channel names"):
            FeatureSeries(values=np.zeros((2, 5)), rate_hz=1.0, channel_names=["only"])


class TestSegmentation:
    def test_paper_overlap_setting_three_segments(self):
        # 100 s at window 40 / hop 35 (5 s overlap): [0,40) [35,75) [70,100).
        series = make_series(100.0)
        segs = segment_series(series, 40.0, 35.0, 5.0)
        assert [(s.start_s, s.end_s) for s in segs] == [(0.0, 40.0), (35.0, 75.0), (70.0, 100.0)]
        assert not segs.too_short

    def test_exact_fit_single_segment(self):
        segs = segment_series(make_series(20.0), 20.0, 20.0, 5.0)
        assert len(segs) == 1
        assert (segs[0].start_s, segs[0].end_s) == (0.0, 20.0)

    def test_below_minimum_flags_too_short(self):
        segs = segment_series(make_series(4.0), 20.0, 20.0, 5.0)
        assert len(segs) == 0
        assert segs.too_short

    def test_invalid_hop(self):
        with pytest.raises(DataValidationError, match="hop"):
            segment_series(make_series(10.0), 5.0, 6.0, 1.0)

    def test_starts_form_arithmetic_progression(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            duration = float(rng.uniform(10, 200))
            window = float(rng.uniform(5, 50))
            hop = float(rng.uniform(1, window))
            series = make_series(duration, channels=1, seed=int(rng.integers(1000)))
            segs = segment_series(series, window, hop, min(5.0, window))
            hop_f = round(hop * series.rate_hz)
            for idx, seg in enumerate(segs):
                assert round(seg.start_s * series.rate_hz) == idx * hop_f
                assert seg.duration_s >= min(5.0, window) - 1e-9
                assert seg.frames == round((seg.end_s - seg.start_s) * series.rate_hz)

    def test_overlap_identity_default_audio(self):
        w = SegmentWindower()
        assert w.window_s - w.hop_s == 5.0

    def test_windower_transform_matches_function(self):
        series = make_series(100.0)
        via_estimator = SegmentWindower(window_s=40.0, hop_s=35.0, min_s=5.0).transform(series)
        direct = segment_series(series, 40.0, 35.0, 5.0)
        assert len(via_estimator) == len(direct)
        for a, b in zip(via_estimator, direct):
            np.testing.assert_array_equal(a.values, b.values)

    def test_get_params_roundtrip(self):
        w = SegmentWindower(window_s=20.0, hop_s=15.0, min_s=5.0, modality="video")
        params = w.get_params()
        assert params["window_s"] == 20.0
        clone = SegmentWindower(**params)
        assert clone.get_params() == params
