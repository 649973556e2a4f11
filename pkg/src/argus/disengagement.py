"""Evaluating the disagreement signal against disengagement events.

Frames around each control transfer are labeled: the five seconds
before an event plus one second after form a disengagement period
(clipped to the trace, overlaps merged), everything else is normal.
Trailing windows are sampled at a fixed stride wholly inside each
period; windows straddling a boundary are discarded.  A flagged normal
window is a false accept, an unflagged disengagement window a false
reject, and sweeping the threshold over a grid traces the FAR/FRR
tradeoff with mean error (FAR+FRR)/2 as the scalar objective.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .disagreement import DisagreementConfig, window_scores
from .streams import DisengagementEvent, SteeringTrace

PRE_EVENT_SECONDS = 5
POST_EVENT_SECONDS = 1

PERIOD_LABELS = ("disengagement", "normal")


@dataclass(frozen=True)
class Period:
    """An inclusive frame range carrying one label."""

    start: int
    end: int
    label: str

    def __post_init__(self) -> None:
        if self.label not in PERIOD_LABELS:
            raise ValueError(f"label must be one of {PERIOD_LABELS}, got {self.label!r}")
        if self.start > self.end:
            raise ValueError(f"empty period [{self.start}, {self.end}]")


@dataclass(frozen=True)
class RocPoint:
    """FAR/FRR at one threshold; mean_error = (far + frr) / 2."""

    delta: float
    far: float
    frr: float
    mean_error: float


@dataclass(frozen=True)
class RocSweepResult:
    """All sweep points, the argmin point, and the window class counts."""

    points: list[RocPoint]
    best: RocPoint
    n_disengagement_windows: int
    n_normal_windows: int


def build_periods(trace: SteeringTrace, events: list[DisengagementEvent]) -> list[Period]:
    """Label the trace: merged event neighborhoods, then the complement.

    Each event contributes [event - 5*fps, event + 1*fps], clipped to
    the trace range.  Overlapping or touching neighborhoods merge.
    Events outside the trace range are rejected.
    """
    first, last = trace.first_frame, trace.last_frame
    for ev in events:
        if not first <= ev.frame_index <= last:
            raise ValueError(
                f"event at frame {ev.frame_index} outside trace range [{first}, {last}]"
            )
    pre = PRE_EVENT_SECONDS * trace.fps
    post = POST_EVENT_SECONDS * trace.fps
    spans = sorted(
        (max(first, ev.frame_index - pre), min(last, ev.frame_index + post)) for ev in events
    )
    merged: list[list[int]] = []
    for lo, hi in spans:
        if merged and lo <= merged[-1][1] + 1:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    periods: list[Period] = []
    cursor = first
    for lo, hi in merged:
        if cursor < lo:
            periods.append(Period(cursor, lo - 1, "normal"))
        periods.append(Period(lo, hi, "disengagement"))
        cursor = hi + 1
    if cursor <= last:
        periods.append(Period(cursor, last, "normal"))
    return periods


def sample_windows(
    periods: list[Period], window_len: int, stride: int
) -> list[tuple[int, str]]:
    """(end_frame, label) for every stride-spaced window inside a period.

    A window of length L ending at t covers [t-L+1, t]; only windows
    entirely inside one period are kept.
    """
    if window_len < 1:
        raise ValueError(f"window_len must be >= 1, got {window_len}")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    out: list[tuple[int, str]] = []
    for period in periods:
        t = period.start + window_len - 1
        while t <= period.end:
            out.append((t, period.label))
            t += stride
    return out


def _window_labels_and_scores(
    trace: SteeringTrace,
    events: list[DisengagementEvent],
    cfg: DisagreementConfig,
    stride: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Scores and boolean labels (True = disengagement) for sampled windows."""
    periods = build_periods(trace, events)
    windows = sample_windows(periods, cfg.window_len, stride)
    end_frames, scores = window_scores(trace, cfg)
    first_scored = int(end_frames[0])
    ts = np.asarray([t for t, _ in windows], dtype=np.int64)
    labels = np.asarray([label == "disengagement" for _, label in windows], dtype=bool)
    return scores[ts - first_scored], labels


def far_frr(
    trace: SteeringTrace,
    events: list[DisengagementEvent],
    cfg: DisagreementConfig,
    stride: int | None = None,
) -> tuple[float | None, float | None]:
    """False-accept and false-reject rates at cfg.threshold.

    FAR: flagged fraction of normal windows.  FRR: unflagged fraction
    of disengagement windows.  A rate whose window class is empty comes
    back as None rather than 0.  Default stride is the window length
    (non-overlapping windows).
    """
    if stride is None:
        stride = cfg.window_len
    win_scores, labels = _window_labels_and_scores(trace, events, cfg, stride)
    flagged = win_scores > cfg.threshold
    n_pos = int(labels.sum())
    n_neg = int((~labels).sum())
    far = float(flagged[~labels].sum()) / n_neg if n_neg else None
    frr = float((~flagged)[labels].sum()) / n_pos if n_pos else None
    return far, frr


def default_delta_grid(cfg: DisagreementConfig) -> np.ndarray:
    """0 .. 2L in steps of 0.5 (the full score range, 4L+1 points)."""
    return np.arange(4 * cfg.window_len + 1) * 0.5


def roc_sweep(
    trace: SteeringTrace,
    events: list[DisengagementEvent],
    cfg: DisagreementConfig,
    deltas=None,
    stride: int | None = None,
) -> RocSweepResult:
    """FAR/FRR at every threshold in the grid, plus the mean-error argmin.

    Window scores are computed once; each grid point only re-thresholds
    them.  Ties on mean_error resolve to the smallest delta.  Raises if
    either window class is empty (every point would be undefined).
    """
    if deltas is None:
        deltas = default_delta_grid(cfg)
    deltas = np.asarray(deltas, dtype=np.float64)
    if deltas.size == 0:
        raise ValueError("empty delta grid")
    if not np.all(np.isfinite(deltas)) or np.any(deltas < 0):
        raise ValueError("delta grid must be finite and nonnegative")
    if stride is None:
        stride = cfg.window_len
    win_scores, labels = _window_labels_and_scores(trace, events, cfg, stride)
    pos_scores = win_scores[labels]
    neg_scores = win_scores[~labels]
    if pos_scores.size == 0:
        raise ValueError("no disengagement windows; cannot evaluate FRR")
    if neg_scores.size == 0:
        raise ValueError("no normal windows; cannot evaluate FAR")
    points: list[RocPoint] = []
    best: RocPoint | None = None
    for delta in deltas:
        far = float((neg_scores > delta).sum()) / neg_scores.size
        frr = float((pos_scores <= delta).sum()) / pos_scores.size
        point = RocPoint(float(delta), far, frr, (far + frr) / 2.0)
        points.append(point)
        if (
            best is None
            or point.mean_error < best.mean_error
            or (point.mean_error == best.mean_error and point.delta < best.delta)
        ):
            best = point
    return RocSweepResult(
        points=points,
        best=best,
        n_disengagement_windows=int(pos_scores.size),
        n_normal_windows=int(neg_scores.size),
    )


def write_roc_csv(points: list[RocPoint], path: str | Path) -> None:
    """Write delta,far,frr,mean_error rows at full float precision."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("delta,far,frr,mean_error\n")
        for pt in points:
            fh.write(f"{repr(pt.delta)},{repr(pt.far)},{repr(pt.frr)},{repr(pt.mean_error)}\n")


def write_roc_svg(result: RocSweepResult, path: str | Path) -> None:
    """Tiny self-contained FAR-vs-FRR plot with the optimum circled."""
    size, margin = 480, 56
    span = size - 2 * margin

    def sx(v: float) -> float:
        return margin + v * span

    def sy(v: float) -> float:
        return size - margin - v * span

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<rect x="{margin}" y="{margin}" width="{span}" height="{span}" '
        'fill="none" stroke="#444"/>',
    ]
    for frac in (0.25, 0.5, 0.75):
        x = sx(frac)
        y = sy(frac)
        lines.append(
            f'<line x1="{x:.1f}" y1="{margin}" x2="{x:.1f}" y2="{size - margin}" '
            'stroke="#ddd"/>'
        )
        lines.append(
            f'<line x1="{margin}" y1="{y:.1f}" x2="{size - margin}" y2="{y:.1f}" '
            'stroke="#ddd"/>'
        )
    coords = " ".join(f"{sx(pt.far):.2f},{sy(pt.frr):.2f}" for pt in result.points)
    lines.append(f'<polyline points="{coords}" fill="none" stroke="#1f6fb2" stroke-width="1.5"/>')
    best = result.best
    lines.append(
        f'<circle cx="{sx(best.far):.2f}" cy="{sy(best.frr):.2f}" r="6" '
        'fill="none" stroke="red" stroke-width="2"/>'
    )
    lines.append(
        f'<text x="{size / 2:.0f}" y="{size - margin / 3:.0f}" text-anchor="middle" '
        f'font-size="13">false accept rate</text>'
    )
    lines.append(
        f'<text x="{margin / 3:.0f}" y="{size / 2:.0f}" text-anchor="middle" '
        f'font-size="13" transform="rotate(-90 {margin / 3:.0f} {size / 2:.0f})">'
        "false reject rate</text>"
    )
    lines.append(
        f'<text x="{size / 2:.0f}" y="{margin / 2:.0f}" text-anchor="middle" font-size="13">'
        f"optimum: delta={best.delta:g}, mean error={best.mean_error:.4f}</text>"
    )
    lines.append("</svg>")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
