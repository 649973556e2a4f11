"""Normalization, window scores, and the flagging rule.

Window sums are exactly rounded, so the oracle here is exact rational
arithmetic (fractions.Fraction) rounded once at the end; every score
comparison in this file is bitwise.
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argus import (
    ClassRecord,
    DisagreementConfig,
    SteeringTrace,
    categorical_disagree,
    disagreement_score,
    flag_disagreement,
    normalize_angle,
    signal_series,
    window_scores,
    write_signal_csv,
)


def _trace(primary, secondary, first=0, fps=30):
    n = len(primary)
    return SteeringTrace(
        frame_index=np.arange(first, first + n, dtype=np.int64),
        primary_angle_deg=np.asarray(primary, dtype=np.float64),
        secondary_angle_deg=np.asarray(secondary, dtype=np.float64),
        fps=fps,
    )


def _constant_trace(p, s, n, first=0):
    return _trace([p] * n, [s] * n, first=first)


def _exact_window_sum(primary, secondary, cfg):
    """Exact-rational oracle for one windowed sum.

    The elementwise steps (clamp, divide, subtract, abs) are single
    IEEE operations with a unique result, so they are reproduced with
    plain Python floats; the summation, which is what the
    implementation claims to round exactly, is done in Fraction and
    rounded once.
    """
    r = cfg.angle_range_deg
    total = Fraction(0)
    for p, s in zip(primary, secondary):
        pn = min(max(float(p), -r), r) / r
        sn = min(max(float(s), -r), r) / r
        total += Fraction(abs(pn - sn))
    return float(total)


# ---------------------------------------------------------------------------
# normalization and flagging


def test_normalize_angle_exact_points():
    assert normalize_angle(0.0, 10.0) == 0.0
    assert normalize_angle(10.0, 10.0) == 1.0
    assert normalize_angle(-10.0, 10.0) == -1.0
    assert normalize_angle(5.0, 10.0) == 0.5
    assert normalize_angle(-2.5, 10.0) == -0.25


def test_normalize_angle_clamps():
    assert normalize_angle(15.0, 10.0) == 1.0
    assert normalize_angle(-200.0, 10.0) == -1.0
    assert normalize_angle(1e9, 10.0) == 1.0


def test_normalize_angle_arrays():
    out = normalize_angle(np.asarray([-20.0, -5.0, 0.0, 5.0, 20.0]), 10.0)
    assert isinstance(out, np.ndarray)
    assert list(out) == [-1.0, -0.5, 0.0, 0.5, 1.0]


def test_normalize_angle_rejects_bad_input():
    with pytest.raises(ValueError, match="finite"):
        normalize_angle(np.nan, 10.0)
    with pytest.raises(ValueError, match="angle_range_deg"):
        normalize_angle(1.0, 0.0)
    with pytest.raises(ValueError, match="angle_range_deg"):
        normalize_angle(1.0, -5.0)
    with pytest.raises(ValueError, match="angle_range_deg"):
        normalize_angle(1.0, np.inf)


@given(st.floats(-100, 100), st.floats(0.1, 50).filter(lambda r: r > 0))
def test_normalize_angle_range_property(angle, rng):
    out = normalize_angle(angle, rng)
    assert -1.0 <= out <= 1.0


def test_flag_is_strict():
    assert not flag_disagreement(10.0, 10.0)
    assert flag_disagreement(10.000000000000002, 10.0)
    assert not flag_disagreement(9.999999999999998, 10.0)
    assert flag_disagreement(0.1, 0.0)
    assert not flag_disagreement(0.0, 0.0)


def test_config_validation():
    with pytest.raises(ValueError, match="angle_range_deg"):
        DisagreementConfig(angle_range_deg=0.0)
    with pytest.raises(ValueError, match="window_len"):
        DisagreementConfig(window_len=0)
    with pytest.raises(ValueError, match="window_len"):
        DisagreementConfig(window_len=2.5)
    with pytest.raises(ValueError, match="threshold"):
        DisagreementConfig(threshold=-1.0)
    with pytest.raises(ValueError, match="threshold"):
        DisagreementConfig(threshold=np.nan)


# ---------------------------------------------------------------------------
# window scores


def test_constant_divergence_hand_value():
    # primary +2, secondary -2 at range 10: per-frame difference 0.4,
    # thirty frames sum to 12.0 on the nose
    cfg = DisagreementConfig()
    trace = _constant_trace(2.0, -2.0, 40)
    assert disagreement_score(trace, 29, cfg) == 12.0
    assert disagreement_score(trace, 39, cfg) == 12.0
    assert disagreement_score(trace, 29, cfg) == _exact_window_sum(
        [2.0] * 30, [-2.0] * 30, cfg
    )


def test_max_separation_saturates_at_2L():
    cfg = DisagreementConfig()
    trace = _constant_trace(50.0, -50.0, 30)
    assert disagreement_score(trace, 29, cfg) == 60.0


def test_identical_streams_score_zero():
    cfg = DisagreementConfig()
    trace = _trace(np.linspace(-3, 3, 35), np.linspace(-3, 3, 35))
    assert disagreement_score(trace, 34, cfg) == 0.0


def test_score_window_errors():
    cfg = DisagreementConfig(window_len=5)
    trace = _constant_trace(1.0, 0.0, 10, first=100)
    with pytest.raises(ValueError, match="frame 99 not in trace"):
        disagreement_score(trace, 99, cfg)
    with pytest.raises(ValueError, match="not fully covered"):
        disagreement_score(trace, 102, cfg)  # window would start at 98
    gapped = SteeringTrace(
        frame_index=np.asarray([0, 1, 2, 4, 5, 6]),
        primary_angle_deg=np.zeros(6),
        secondary_angle_deg=np.zeros(6),
    )
    with pytest.raises(ValueError, match="not fully covered"):
        disagreement_score(gapped, 6, DisagreementConfig(window_len=5))


def test_window_scores_matches_scalar_bitwise():
    cfg = DisagreementConfig(window_len=7)
    rng = np.random.default_rng(3)
    trace = _trace(rng.uniform(-12, 12, 60), rng.uniform(-12, 12, 60), first=5)
    end_frames, scores = window_scores(trace, cfg)
    assert list(end_frames) == list(range(11, 65))
    for f, score in zip(end_frames, scores):
        assert disagreement_score(trace, int(f), cfg) == score


def test_window_scores_requires_contiguity():
    gapped = SteeringTrace(
        frame_index=np.asarray([0, 1, 3]),
        primary_angle_deg=np.zeros(3),
        secondary_angle_deg=np.zeros(3),
    )
    with pytest.raises(ValueError, match="gaps"):
        window_scores(gapped, DisagreementConfig(window_len=2))


def test_window_scores_requires_enough_frames():
    trace = _constant_trace(0.0, 0.0, 10)
    with pytest.raises(ValueError, match="shorter than window_len"):
        window_scores(trace, DisagreementConfig(window_len=11))


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(8, 50),
    window=st.integers(1, 8),
    seed=st.integers(0, 2**32 - 1),
)
def test_window_scores_exact_rounding_property(n, window, seed):
    rng = np.random.default_rng(seed)
    trace = _trace(rng.uniform(-15, 15, n), rng.uniform(-15, 15, n))
    cfg = DisagreementConfig(window_len=window)
    _, scores = window_scores(trace, cfg)
    p = trace.primary_angle_deg
    s = trace.secondary_angle_deg
    for i, score in enumerate(scores):
        expected = _exact_window_sum(p[i : i + window], s[i : i + window], cfg)
        assert score == expected
        assert 0.0 <= score <= 2.0 * window


@settings(max_examples=30, deadline=None)
@given(n=st.integers(5, 40), seed=st.integers(0, 2**32 - 1))
def test_scores_symmetric_in_stream_order(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-12, 12, n)
    b = rng.uniform(-12, 12, n)
    cfg = DisagreementConfig(window_len=min(5, n))
    _, fwd = window_scores(_trace(a, b), cfg)
    _, rev = window_scores(_trace(b, a), cfg)
    assert np.array_equal(fwd, rev)


# ---------------------------------------------------------------------------
# signal series and CSV


def test_signal_series_flags_and_frames():
    cfg = DisagreementConfig(window_len=3, threshold=0.6)
    # per-frame normalized difference is 0.1; windows sum to
    # 0.30000000000000004 until the +10 spike enters
    primary = [1.0, 1.0, 1.0, 1.0, 10.0]
    secondary = [0.0, 0.0, 0.0, 0.0, 0.0]
    signals = signal_series(_trace(primary, secondary), cfg)
    assert [sig.frame_index for sig in signals] == [2, 3, 4]
    assert [sig.flagged for sig in signals] == [False, False, True]
    assert signals[2].score == math.fsum([0.1, 0.1, 1.0])


def test_signal_series_threshold_boundary():
    cfg = DisagreementConfig(window_len=2, threshold=1.0)
    # both windows sum to exactly 1.0: strictly-greater means unflagged
    signals = signal_series(_trace([5.0, 5.0, 5.0], [0.0, 0.0, 0.0]), cfg)
    assert [sig.score for sig in signals] == [1.0, 1.0]
    assert not any(sig.flagged for sig in signals)


def test_write_signal_csv(tmp_path):
    cfg = DisagreementConfig(window_len=2, threshold=0.5)
    signals = signal_series(_trace([5.0, 5.0, 0.0], [0.0, 0.0, 0.0]), cfg)
    path = tmp_path / "signal.csv"
    write_signal_csv(signals, path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "frame_index,score,flagged"
    assert lines[1] == "1,1.0,true"
    assert lines[2] == "2,0.5,false"


# ---------------------------------------------------------------------------
# categorical


def test_categorical_disagree():
    same = ClassRecord("a", 1, (1, 2, 3, 4, 5), (1, 9, 8, 7, 6))
    diff = ClassRecord("b", 1, (1, 2, 3, 4, 5), (2, 1, 3, 4, 5))
    assert not categorical_disagree(same)
    assert categorical_disagree(diff)


def test_categorical_disagree_rejects_empty():
    broken = ClassRecord("a", 1, (), (1, 2, 3, 4, 5))
    with pytest.raises(ValueError, match="empty prediction list"):
        categorical_disagree(broken)
