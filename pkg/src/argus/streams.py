"""Domain types and file I/O for paired decision streams.

Two stream families are supported: categorical classification logs
(per-item top-k lists from a primary and a secondary system, JSONL) and
continuous steering traces (per-frame angle pairs, CSV) with optional
disengagement event files.  Readers validate eagerly and report the
offending line; writers emit a canonical form that round-trips byte
for byte.  Streams must be pre-aligned per item/frame; resampling of
misaligned sources is a caller obligation.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

INITIATORS = ("human", "machine")

CLASS_LOG_FIELDS = ("id", "truth", "p_topk", "s_topk", "p_probs", "s_probs")
TRACE_HEADER = ("frame_index", "primary_angle_deg", "secondary_angle_deg")
EVENTS_HEADER = ("frame_index", "initiator")


class LogFormatError(ValueError):
    """Raised when an input file violates its format contract."""


def _fmt(x: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    return repr(float(x))


@dataclass
class ClassRecord:
    """One logged item: truth plus both systems' ranked predictions.

    Top-k lists hold at least five distinct class indices, most
    confident first.  Probability vectors are optional; when present
    they are dense over all classes and argmax-consistent with the
    top-1 entry.
    """

    item_id: str
    truth: int | None
    primary_topk: tuple[int, ...]
    secondary_topk: tuple[int, ...]
    primary_probs: np.ndarray | None = None
    secondary_probs: np.ndarray | None = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassRecord):
            return NotImplemented
        return (
            self.item_id == other.item_id
            and self.truth == other.truth
            and self.primary_topk == other.primary_topk
            and self.secondary_topk == other.secondary_topk
            and _probs_equal(self.primary_probs, other.primary_probs)
            and _probs_equal(self.secondary_probs, other.secondary_probs)
        )


def _probs_equal(a: np.ndarray | None, b: np.ndarray | None) -> bool:
    if a is None or b is None:
        return (a is None) == (b is None)
    return np.array_equal(a, b)


def _check_probs(probs: np.ndarray, top1: int, num_classes: int, where: str) -> None:
    if probs.shape != (num_classes,):
        raise LogFormatError(f"{where}: probs length {probs.shape[0]} != num_classes {num_classes}")
    if not np.all(np.isfinite(probs)) or np.any(probs < 0):
        raise LogFormatError(f"{where}: probs must be finite and nonnegative")
    total = float(probs.sum())
    if abs(total - 1.0) > 1e-6:
        raise LogFormatError(f"{where}: probs sum to {total!r}, expected 1 within 1e-6")
    if probs[top1] != probs.max():
        raise LogFormatError(f"{where}: probs argmax {int(np.argmax(probs))} != top-1 entry {top1}")


def _check_record(rec: ClassRecord, num_classes: int, where: str) -> None:
    for name, topk in (("p_topk", rec.primary_topk), ("s_topk", rec.secondary_topk)):
        if len(topk) < 5:
            raise LogFormatError(f"{where}: {name} has {len(topk)} entries, need >= 5")
        if len(set(topk)) != len(topk):
            raise LogFormatError(f"{where}: {name} contains duplicate class indices")
        for c in topk:
            if not 0 <= c < num_classes:
                raise LogFormatError(f"{where}: {name} class {c} out of range [0, {num_classes})")
    if rec.truth is not None and not 0 <= rec.truth < num_classes:
        raise LogFormatError(f"{where}: truth {rec.truth} out of range [0, {num_classes})")
    if rec.primary_probs is not None:
        _check_probs(rec.primary_probs, rec.primary_topk[0], num_classes, f"{where}: p_probs")
    if rec.secondary_probs is not None:
        _check_probs(rec.secondary_probs, rec.secondary_topk[0], num_classes, f"{where}: s_probs")


@dataclass(eq=False)
class ClassLog:
    """A validated collection of ClassRecords over a fixed label space."""

    num_classes: int
    records: list[ClassRecord] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.num_classes < 1:
            raise LogFormatError(f"num_classes must be >= 1, got {self.num_classes}")
        seen: set[str] = set()
        for i, rec in enumerate(self.records):
            where = f"record {i} (id={rec.item_id!r})"
            if rec.item_id in seen:
                raise LogFormatError(f"{where}: duplicate item id")
            seen.add(rec.item_id)
            _check_record(rec, self.num_classes, where)

    def __len__(self) -> int:
        return len(self.records)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassLog):
            return NotImplemented
        return self.num_classes == other.num_classes and self.records == other.records

    @cached_property
    def truth_array(self) -> np.ndarray:
        """Truths as int64; raises if any record lacks one."""
        missing = next((r.item_id for r in self.records if r.truth is None), None)
        if missing is not None:
            raise ValueError(f"record id={missing!r} has no truth label")
        return np.asarray([r.truth for r in self.records], dtype=np.int64)

    @cached_property
    def primary_topk_array(self) -> np.ndarray:
        return np.asarray([r.primary_topk[:5] for r in self.records], dtype=np.int64)

    @cached_property
    def secondary_topk_array(self) -> np.ndarray:
        return np.asarray([r.secondary_topk[:5] for r in self.records], dtype=np.int64)

    def has_probs(self) -> bool:
        return all(
            r.primary_probs is not None and r.secondary_probs is not None for r in self.records
        )


@dataclass(frozen=True)
class SteeringSample:
    """One aligned frame: steering suggestions from both systems, degrees."""

    frame_index: int
    primary_angle_deg: float
    secondary_angle_deg: float


@dataclass(eq=False)
class SteeringTrace:
    """Columnar per-frame angle pairs at a fixed frame rate.

    frame_index is strictly increasing but not necessarily contiguous;
    windowed operations require contiguity and check it themselves.
    """

    frame_index: np.ndarray
    primary_angle_deg: np.ndarray
    secondary_angle_deg: np.ndarray
    fps: int = 30

    def __post_init__(self) -> None:
        self.frame_index = np.asarray(self.frame_index, dtype=np.int64)
        self.primary_angle_deg = np.asarray(self.primary_angle_deg, dtype=np.float64)
        self.secondary_angle_deg = np.asarray(self.secondary_angle_deg, dtype=np.float64)
        n = self.frame_index.shape[0]
        if self.primary_angle_deg.shape[0] != n or self.secondary_angle_deg.shape[0] != n:
            raise LogFormatError("trace columns have mismatched lengths")
        if n == 0:
            raise LogFormatError("trace is empty")
        if self.fps < 1:
            raise LogFormatError(f"fps must be >= 1, got {self.fps}")
        diffs = np.diff(self.frame_index)
        if np.any(diffs <= 0):
            bad = int(np.argmax(diffs <= 0))
            raise LogFormatError(
                f"frame_index not strictly increasing at row {bad + 1} "
                f"({self.frame_index[bad]} -> {self.frame_index[bad + 1]})"
            )
        for name, col in (
            ("primary_angle_deg", self.primary_angle_deg),
            ("secondary_angle_deg", self.secondary_angle_deg),
        ):
            if not np.all(np.isfinite(col)):
                bad = int(np.argmin(np.isfinite(col)))
                raise LogFormatError(f"{name} not finite at row {bad}")

    def __len__(self) -> int:
        return self.frame_index.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SteeringTrace):
            return NotImplemented
        return (
            self.fps == other.fps
            and np.array_equal(self.frame_index, other.frame_index)
            and np.array_equal(self.primary_angle_deg, other.primary_angle_deg)
            and np.array_equal(self.secondary_angle_deg, other.secondary_angle_deg)
        )

    @property
    def first_frame(self) -> int:
        return int(self.frame_index[0])

    @property
    def last_frame(self) -> int:
        return int(self.frame_index[-1])

    def is_contiguous(self) -> bool:
        return self.last_frame - self.first_frame + 1 == len(self)

    @property
    def samples(self) -> list[SteeringSample]:
        return [
            SteeringSample(int(f), float(p), float(s))
            for f, p, s in zip(self.frame_index, self.primary_angle_deg, self.secondary_angle_deg)
        ]

    @classmethod
    def from_samples(cls, samples: list[SteeringSample], fps: int = 30) -> "SteeringTrace":
        return cls(
            frame_index=np.asarray([s.frame_index for s in samples], dtype=np.int64),
            primary_angle_deg=np.asarray([s.primary_angle_deg for s in samples]),
            secondary_angle_deg=np.asarray([s.secondary_angle_deg for s in samples]),
            fps=fps,
        )


@dataclass(frozen=True)
class DisengagementEvent:
    """A control-transfer event tied to a trace frame."""

    frame_index: int
    initiator: str

    def __post_init__(self) -> None:
        if self.initiator not in INITIATORS:
            raise LogFormatError(
                f"initiator {self.initiator!r} not in {INITIATORS}"
            )
        if self.frame_index < 0:
            raise LogFormatError(f"frame_index must be >= 0, got {self.frame_index}")


# ---------------------------------------------------------------------------
# Classification logs (JSONL)


def write_class_log(log: ClassLog, path: str | Path) -> None:
    """Write a log as JSONL: a num_classes header line, then one record per line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"num_classes": log.num_classes}) + "\n")
        for rec in log.records:
            obj = {
                "id": rec.item_id,
                "truth": None if rec.truth is None else int(rec.truth),
                "p_topk": [int(c) for c in rec.primary_topk],
                "s_topk": [int(c) for c in rec.secondary_topk],
                "p_probs": None
                if rec.primary_probs is None
                else [float(p) for p in rec.primary_probs],
                "s_probs": None
                if rec.secondary_probs is None
                else [float(p) for p in rec.secondary_probs],
            }
            fh.write(json.dumps(obj) + "\n")


def _parse_topk(val: object, name: str, where: str) -> tuple[int, ...]:
    if not isinstance(val, list) or not all(isinstance(c, int) for c in val):
        raise LogFormatError(f"{where}: {name} must be a list of ints")
    return tuple(val)


def read_class_log(path: str | Path) -> ClassLog:
    """Parse and validate a JSONL classification log.

    Raises LogFormatError naming the file and 1-based line of the first
    violation (bad JSON, missing keys, out-of-range classes, duplicate
    ids, malformed probability vectors).
    """
    path = Path(path)
    records: list[ClassRecord] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        header_line = fh.readline()
        if not header_line.strip():
            raise LogFormatError(f"{path}:1: missing num_classes header")
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as exc:
            raise LogFormatError(f"{path}:1: bad JSON header: {exc}") from exc
        if not isinstance(header, dict) or not isinstance(header.get("num_classes"), int):
            raise LogFormatError(f"{path}:1: header must be {{\"num_classes\": int}}")
        num_classes = header["num_classes"]
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            where = f"{path}:{lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise LogFormatError(f"{where}: bad JSON: {exc}") from exc
            if not isinstance(obj, dict):
                raise LogFormatError(f"{where}: record must be a JSON object")
            missing = [k for k in CLASS_LOG_FIELDS if k not in obj]
            if missing:
                raise LogFormatError(f"{where}: missing keys {missing}")
            if not isinstance(obj["id"], str):
                raise LogFormatError(f"{where}: id must be a string")
            truth = obj["truth"]
            if truth is not None and not isinstance(truth, int):
                raise LogFormatError(f"{where}: truth must be int or null")
            rec = ClassRecord(
                item_id=obj["id"],
                truth=truth,
                primary_topk=_parse_topk(obj["p_topk"], "p_topk", where),
                secondary_topk=_parse_topk(obj["s_topk"], "s_topk", where),
                primary_probs=_parse_probs(obj["p_probs"], "p_probs", where),
                secondary_probs=_parse_probs(obj["s_probs"], "s_probs", where),
            )
            if rec.item_id in seen:
                raise LogFormatError(f"{where}: duplicate item id {rec.item_id!r}")
            seen.add(rec.item_id)
            _check_record(rec, num_classes, where)
            records.append(rec)
    # Records were validated line by line above; skip the constructor's
    # second pass, which could not report line numbers anyway.
    log = ClassLog.__new__(ClassLog)
    log.num_classes = num_classes
    log.records = records
    return log


def _parse_probs(val: object, name: str, where: str) -> np.ndarray | None:
    if val is None:
        return None
    if not isinstance(val, list):
        raise LogFormatError(f"{where}: {name} must be a list or null")
    arr = np.asarray(val, dtype=np.float64)
    if arr.ndim != 1:
        raise LogFormatError(f"{where}: {name} must be a flat list")
    return arr


# ---------------------------------------------------------------------------
# Steering traces and disengagement events (CSV)


def write_steering_trace(trace: SteeringTrace, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(TRACE_HEADER) + "\n")
        for f, p, s in zip(
            trace.frame_index, trace.primary_angle_deg, trace.secondary_angle_deg
        ):
            fh.write(f"{int(f)},{_fmt(p)},{_fmt(s)}\n")


def read_steering_trace(path: str | Path, fps: int = 30) -> SteeringTrace:
    """Parse a frame_index,primary_angle_deg,secondary_angle_deg CSV.

    Rows must be strictly increasing in frame_index; duplicates and
    out-of-order rows are rejected with their line number.
    """
    path = Path(path)
    frames: list[int] = []
    primary: list[float] = []
    secondary: list[float] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise LogFormatError(f"{path}:1: empty file") from None
        if tuple(header) != TRACE_HEADER:
            raise LogFormatError(
                f"{path}:1: header {header!r} != {list(TRACE_HEADER)!r}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            where = f"{path}:{lineno}"
            if len(row) != 3:
                raise LogFormatError(f"{where}: expected 3 fields, got {len(row)}")
            try:
                f = int(row[0])
                p = float(row[1])
                s = float(row[2])
            except ValueError as exc:
                raise LogFormatError(f"{where}: {exc}") from exc
            if not (np.isfinite(p) and np.isfinite(s)):
                raise LogFormatError(f"{where}: angles must be finite")
            if frames:
                if f == frames[-1]:
                    raise LogFormatError(f"{where}: duplicate frame_index {f}")
                if f < frames[-1]:
                    raise LogFormatError(
                        f"{where}: frame_index {f} not increasing (previous {frames[-1]})"
                    )
            frames.append(f)
            primary.append(p)
            secondary.append(s)
    if not frames:
        raise LogFormatError(f"{path}: no data rows")
    return SteeringTrace(
        frame_index=np.asarray(frames, dtype=np.int64),
        primary_angle_deg=np.asarray(primary),
        secondary_angle_deg=np.asarray(secondary),
        fps=fps,
    )


def write_disengagements(events: list[DisengagementEvent], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(EVENTS_HEADER) + "\n")
        for ev in events:
            fh.write(f"{ev.frame_index},{ev.initiator}\n")


def read_disengagements(path: str | Path) -> list[DisengagementEvent]:
    """Parse a frame_index,initiator CSV; initiator is human or machine."""
    path = Path(path)
    events: list[DisengagementEvent] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise LogFormatError(f"{path}:1: empty file") from None
        if tuple(header) != EVENTS_HEADER:
            raise LogFormatError(f"{path}:1: header {header!r} != {list(EVENTS_HEADER)!r}")
        last = None
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            where = f"{path}:{lineno}"
            if len(row) != 2:
                raise LogFormatError(f"{where}: expected 2 fields, got {len(row)}")
            try:
                f = int(row[0])
            except ValueError as exc:
                raise LogFormatError(f"{where}: {exc}") from exc
            try:
                ev = DisengagementEvent(frame_index=f, initiator=row[1])
            except LogFormatError as exc:
                raise LogFormatError(f"{where}: {exc}") from exc
            if last is not None and f <= last:
                raise LogFormatError(f"{where}: frame_index {f} not increasing")
            last = f
            events.append(ev)
    return events
