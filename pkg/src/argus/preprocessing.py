"""Frame compositions and dataset balancing for steering predictors.

Five ways to build a fixed-size network input from a 30 fps frame
buffer, all emitting 256x144 (width x height) arrays with 3 channels,
values in [0, 1]:

  m1  luma differences over 10-frame segments: (t-20)-(t-30),
      (t-10)-(t-20), t-(t-10)
  m2  luma differences at mixed offsets from the current frame:
      t-(t-10), t-(t-5), t-(t-1)
  m3  plain luma of frames t-20, t-10, t
  m4  per-color-channel 3x3 Sobel edge magnitude of frame t
  m5  the RGB frame t

Difference channels are computed as luma(F_a - F_b) (identical to
luma(F_a) - luma(F_b), since luma is linear) and mapped affinely from
[-1, 1] to [0, 1] after a bilinear resize, so a constant video maps to
exactly 0.5 and a constant brightness offset cancels at the pixel
subtraction.  Balancing caps each 1-degree steering bin on [-10, 10)
at the smallest occupied bin's count.
"""

from __future__ import annotations

from dataclasses import dataclass

import cv2
import numpy as np

NET_WIDTH = 256
NET_HEIGHT = 144

LUMA_WEIGHTS = (0.299, 0.587, 0.114)

M1_SEGMENTS = ((20, 30), (10, 20), (0, 10))
M2_OFFSETS = (10, 5, 1)
M3_OFFSETS = (20, 10, 0)

BIN_LO = -10.0
BIN_HI = 10.0
NUM_BINS = 20

_METHOD_NAMES = ("m1", "m2", "m3", "m4", "m5")


def check_frame(frame: np.ndarray) -> np.ndarray:
    """Validate one H x W x 3 float frame with values in [0, 1]."""
    frame = np.asarray(frame, dtype=np.float64)
    if frame.ndim != 3 or frame.shape[2] != 3:
        raise ValueError(f"frame must be H x W x 3, got shape {frame.shape}")
    if not np.all(np.isfinite(frame)):
        raise ValueError("frame has non-finite values")
    if frame.min() < 0.0 or frame.max() > 1.0:
        raise ValueError("frame values must lie in [0, 1]")
    return frame


def frame_from_u8(frame_u8: np.ndarray) -> np.ndarray:
    """Convert an 8-bit H x W x 3 frame to float64 in [0, 1]."""
    frame_u8 = np.asarray(frame_u8)
    if frame_u8.dtype != np.uint8:
        raise ValueError(f"expected uint8 input, got {frame_u8.dtype}")
    return check_frame(frame_u8.astype(np.float64) / 255.0)


@dataclass(eq=False)
class FrameBuffer:
    """Contiguous frames at 30 fps: frames[i] is video frame start + i.

    The deepest composition reaches 30 frames back, so an operational
    buffer holds at least 31 frames; shorter buffers are allowed and
    each composition checks its own history requirement.
    """

    frames: np.ndarray
    start: int = 0

    def __post_init__(self) -> None:
        self.frames = np.asarray(self.frames, dtype=np.float64)
        if self.frames.ndim != 4 or self.frames.shape[3] != 3:
            raise ValueError(f"frames must be D x H x W x 3, got shape {self.frames.shape}")
        if self.frames.shape[0] < 1:
            raise ValueError("buffer needs at least one frame")
        if not np.all(np.isfinite(self.frames)):
            raise ValueError("buffer has non-finite values")
        if self.frames.min() < 0.0 or self.frames.max() > 1.0:
            raise ValueError("buffer values must lie in [0, 1]")

    def __len__(self) -> int:
        return self.frames.shape[0]

    @property
    def end(self) -> int:
        return self.start + len(self) - 1

    def frame(self, t: int) -> np.ndarray:
        if not self.start <= t <= self.end:
            raise ValueError(f"frame {t} outside buffer [{self.start}, {self.end}]")
        return self.frames[t - self.start]


@dataclass(frozen=True, eq=False)
class NetInput:
    """One composed network input: 144 x 256 x 3 pixels in [0, 1]."""

    pixels: np.ndarray
    method: str
    frame_index: int


def to_grayscale(frame: np.ndarray) -> np.ndarray:
    """Luma 0.299 R + 0.587 G + 0.114 B; also accepts difference frames."""
    r, g, b = LUMA_WEIGHTS
    return frame[..., 0] * r + frame[..., 1] * g + frame[..., 2] * b


def _resize(img: np.ndarray) -> np.ndarray:
    """Bilinear resample to NET_WIDTH x NET_HEIGHT (array shape 144 x 256)."""
    return cv2.resize(img, (NET_WIDTH, NET_HEIGHT), interpolation=cv2.INTER_LINEAR)


def _map_unit(diff_channel: np.ndarray) -> np.ndarray:
    """Affine [-1, 1] -> [0, 1]."""
    return (diff_channel + 1.0) * 0.5


def _need_history(buf: FrameBuffer, t: int, deepest: int, method: str) -> None:
    if t > buf.end or t - deepest < buf.start:
        raise ValueError(
            f"{method} at frame {t} needs frames [{t - deepest}, {t}], "
            f"buffer covers [{buf.start}, {buf.end}]"
        )


def _finish(channels: list[np.ndarray], method: str, t: int) -> NetInput:
    pixels = np.clip(np.stack(channels, axis=-1), 0.0, 1.0)
    return NetInput(pixels=pixels, method=method, frame_index=t)


def compose_m1(buf: FrameBuffer, t: int) -> NetInput:
    """Three luma differences over consecutive 10-frame segments."""
    _need_history(buf, t, 30, "m1")
    channels = [
        _map_unit(_resize(to_grayscale(buf.frame(t - a) - buf.frame(t - b))))
        for a, b in M1_SEGMENTS
    ]
    return _finish(channels, "m1", t)


def compose_m2(buf: FrameBuffer, t: int) -> NetInput:
    """Luma differences of the current frame against t-10, t-5, t-1."""
    _need_history(buf, t, 10, "m2")
    channels = [
        _map_unit(_resize(to_grayscale(buf.frame(t) - buf.frame(t - d))))
        for d in M2_OFFSETS
    ]
    return _finish(channels, "m2", t)


def compose_m3(buf: FrameBuffer, t: int) -> NetInput:
    """Luma of frames t-20, t-10, t as the three channels."""
    _need_history(buf, t, 20, "m3")
    channels = [_resize(to_grayscale(buf.frame(t - d))) for d in M3_OFFSETS]
    return _finish(channels, "m3", t)


def _sobel_magnitude(channel: np.ndarray) -> np.ndarray:
    """3x3 Sobel magnitude / 4 (unit step response), edge-replicated, clipped."""
    p = np.pad(channel, 1, mode="edge")
    gx = (p[:-2, 2:] + 2.0 * p[1:-1, 2:] + p[2:, 2:]) - (
        p[:-2, :-2] + 2.0 * p[1:-1, :-2] + p[2:, :-2]
    )
    gy = (p[2:, :-2] + 2.0 * p[2:, 1:-1] + p[2:, 2:]) - (
        p[:-2, :-2] + 2.0 * p[:-2, 1:-1] + p[:-2, 2:]
    )
    return np.clip(np.sqrt(gx * gx + gy * gy) / 4.0, 0.0, 1.0)


def compose_m4(frame: np.ndarray, t: int = 0) -> NetInput:
    """Per-color-channel Sobel edge magnitude of a single frame."""
    frame = check_frame(frame)
    channels = [_resize(_sobel_magnitude(frame[..., c])) for c in range(3)]
    return _finish(channels, "m4", t)


def compose_m5(frame: np.ndarray, t: int = 0) -> NetInput:
    """The RGB frame itself, resized."""
    frame = check_frame(frame)
    pixels = np.clip(_resize(frame), 0.0, 1.0)
    return NetInput(pixels=pixels, method="m5", frame_index=t)


def compose(method: str, buf: FrameBuffer, t: int) -> NetInput:
    """Dispatch by method name; m4/m5 take their single frame from the buffer."""
    if method == "m1":
        return compose_m1(buf, t)
    if method == "m2":
        return compose_m2(buf, t)
    if method == "m3":
        return compose_m3(buf, t)
    if method == "m4":
        return compose_m4(buf.frame(t), t)
    if method == "m5":
        return compose_m5(buf.frame(t), t)
    raise ValueError(f"method must be one of {_METHOD_NAMES}, got {method!r}")


def history_depth(method: str) -> int:
    """How many frames before t a method needs."""
    depths = {"m1": 30, "m2": 10, "m3": 20, "m4": 0, "m5": 0}
    if method not in depths:
        raise ValueError(f"method must be one of {_METHOD_NAMES}, got {method!r}")
    return depths[method]


# ---------------------------------------------------------------------------
# Steering-angle histogram balancing


def bin_occupancy(angles_deg: np.ndarray) -> np.ndarray:
    """Counts per 1-degree bin over [-10, 10); out-of-range angles ignored."""
    angles = np.asarray(angles_deg, dtype=np.float64)
    if angles.ndim != 1:
        raise ValueError("angles must be a flat array")
    if not np.all(np.isfinite(angles)):
        raise ValueError("angles must be finite")
    in_range = (angles >= BIN_LO) & (angles < BIN_HI)
    idx = np.floor(angles[in_range] - BIN_LO).astype(np.int64)
    return np.bincount(idx, minlength=NUM_BINS)


def balance_dataset(angles_deg, keep: str = "first", seed: int | None = None) -> np.ndarray:
    """Boolean keep-mask capping every bin at the smallest occupied count.

    Bins are 1 degree wide, half-open, covering [-10, 10); angles
    outside are dropped.  keep="first" retains the earliest frames of
    each overfull bin; keep="random" samples them with the given seed.
    Raises if every angle is out of range.
    """
    angles = np.asarray(angles_deg, dtype=np.float64)
    if angles.ndim != 1:
        raise ValueError("angles must be a flat array")
    if not np.all(np.isfinite(angles)):
        raise ValueError("angles must be finite")
    if keep not in ("first", "random"):
        raise ValueError(f"keep must be 'first' or 'random', got {keep!r}")
    in_range = (angles >= BIN_LO) & (angles < BIN_HI)
    if not in_range.any():
        raise ValueError(f"no angles inside [{BIN_LO}, {BIN_HI})")
    counts = bin_occupancy(angles)
    threshold = int(counts[counts > 0].min())
    idx = np.full(angles.shape, -1, dtype=np.int64)
    idx[in_range] = np.floor(angles[in_range] - BIN_LO).astype(np.int64)
    rng = np.random.default_rng(seed) if keep == "random" else None
    mask = np.zeros(angles.shape, dtype=bool)
    for b in range(NUM_BINS):
        members = np.flatnonzero(idx == b)
        if members.size == 0:
            continue
        if members.size <= threshold:
            chosen = members
        elif rng is None:
            chosen = members[:threshold]
        else:
            chosen = rng.choice(members, size=threshold, replace=False)
        mask[chosen] = True
    return mask
