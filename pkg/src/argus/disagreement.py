"""Disagreement signals between paired decision streams.

Continuous case: each steering suggestion is normalized to [-1, 1] by a
fixed angle range (out-of-range values clamp to the limits), absolute
differences of the normalized pair are summed over a trailing window of
L samples, and the sum is compared against a threshold delta.  Scores
therefore live in [0, 2L] and only frames with a complete trailing
window get a score.  Window sums are exactly rounded (math.fsum), so a
score never depends on summation order and clean hand-computed values
land on their decimal representation (a constant 0.4 difference over a
30-frame window scores 12.0, not 12.000000000000004).  Categorical
case: the two systems disagree when their top-1 predictions differ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .streams import ClassRecord, SteeringTrace


@dataclass(frozen=True)
class DisagreementConfig:
    """Normalization range (degrees), window length (samples), threshold.

    Defaults: a [-10, 10] degree range, a 30-sample window (one second
    at 30 fps) and delta=10 in windowed-sum units.
    """

    angle_range_deg: float = 10.0
    window_len: int = 30
    threshold: float = 10.0

    def __post_init__(self) -> None:
        if not np.isfinite(self.angle_range_deg) or self.angle_range_deg <= 0:
            raise ValueError(f"angle_range_deg must be finite and > 0, got {self.angle_range_deg}")
        if int(self.window_len) != self.window_len or self.window_len < 1:
            raise ValueError(f"window_len must be an integer >= 1, got {self.window_len}")
        if not np.isfinite(self.threshold) or self.threshold < 0:
            raise ValueError(f"threshold must be finite and >= 0, got {self.threshold}")


@dataclass(frozen=True)
class DisagreementSignal:
    """Score for the trailing window ending at frame_index, plus its flag."""

    frame_index: int
    score: float
    flagged: bool


def normalize_angle(angle_deg, angle_range_deg: float):
    """Map degrees to [-1, 1] by the symmetric range, clamping overflow.

    Accepts scalars or arrays; rejects non-finite input.
    """
    if not np.isfinite(angle_range_deg) or angle_range_deg <= 0:
        raise ValueError(f"angle_range_deg must be finite and > 0, got {angle_range_deg}")
    arr = np.asarray(angle_deg, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("angle_deg must be finite")
    out = np.clip(arr, -angle_range_deg, angle_range_deg) / angle_range_deg
    return float(out) if np.isscalar(angle_deg) else out


def flag_disagreement(score: float, threshold: float) -> bool:
    """Strict rule: flagged iff score > threshold (equality does not flag)."""
    return bool(score > threshold)


def _normalized_diff(trace: SteeringTrace, cfg: DisagreementConfig) -> np.ndarray:
    p = normalize_angle(trace.primary_angle_deg, cfg.angle_range_deg)
    s = normalize_angle(trace.secondary_angle_deg, cfg.angle_range_deg)
    return np.abs(p - s)


def disagreement_score(trace: SteeringTrace, t: int, cfg: DisagreementConfig) -> float:
    """Windowed sum of |normalized difference| over frames t-L+1 .. t.

    The trace must contain every frame of the window; otherwise raises
    ValueError (no padding, no partial windows).
    """
    L = cfg.window_len
    pos = int(np.searchsorted(trace.frame_index, t))
    if pos >= len(trace) or trace.frame_index[pos] != t:
        raise ValueError(f"frame {t} not in trace")
    lo = pos - L + 1
    if lo < 0 or trace.frame_index[lo] != t - L + 1:
        raise ValueError(
            f"window [{t - L + 1}, {t}] not fully covered by trace "
            f"(first frame {trace.first_frame}, or gap inside the window)"
        )
    d = _normalized_diff(trace, cfg)
    return math.fsum(d[lo : pos + 1].tolist())


def window_scores(trace: SteeringTrace, cfg: DisagreementConfig) -> tuple[np.ndarray, np.ndarray]:
    """Scores for every complete trailing window of a contiguous trace.

    Returns (end_frames, scores), one entry per frame from
    first_frame + L - 1 through last_frame.  Each score is summed the
    same way as disagreement_score, so the two agree bit for bit.
    """
    if not trace.is_contiguous():
        raise ValueError("trace has frame index gaps; windowed evaluation needs contiguity")
    L = cfg.window_len
    if len(trace) < L:
        raise ValueError(f"trace length {len(trace)} shorter than window_len {L}")
    d = _normalized_diff(trace, cfg).tolist()
    scores = np.asarray([math.fsum(d[i : i + L]) for i in range(len(d) - L + 1)])
    end_frames = trace.frame_index[L - 1 :]
    return end_frames, scores


def signal_series(trace: SteeringTrace, cfg: DisagreementConfig) -> list[DisagreementSignal]:
    """One DisagreementSignal per complete trailing window, in frame order."""
    end_frames, scores = window_scores(trace, cfg)
    flags = scores > cfg.threshold
    return [
        DisagreementSignal(int(f), float(sc), bool(fl))
        for f, sc, fl in zip(end_frames, scores, flags)
    ]


def categorical_disagree(record: ClassRecord) -> bool:
    """True when the two systems' top-1 predictions differ."""
    if not record.primary_topk or not record.secondary_topk:
        raise ValueError(f"record id={record.item_id!r} has an empty prediction list")
    return record.primary_topk[0] != record.secondary_topk[0]


def write_signal_csv(signals: list[DisagreementSignal], path: str | Path) -> None:
    """Write frame_index,score,flagged rows; floats keep full precision."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("frame_index,score,flagged\n")
        for sig in signals:
            flag = "true" if sig.flagged else "false"
            fh.write(f"{sig.frame_index},{repr(sig.score)},{flag}\n")
