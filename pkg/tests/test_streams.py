"""Stream types, file round-trips, and reader diagnostics."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argus import (
    ClassLog,
    ClassRecord,
    DisengagementEvent,
    LogFormatError,
    SteeringSample,
    SteeringTrace,
    read_class_log,
    read_disengagements,
    read_steering_trace,
    write_class_log,
    write_disengagements,
    write_steering_trace,
)


def _record(i=0, truth=3, p=(3, 4, 5, 6, 7), s=(3, 4, 5, 6, 7), pp=None, sp=None):
    return ClassRecord(
        item_id=f"item-{i}",
        truth=truth,
        primary_topk=tuple(p),
        secondary_topk=tuple(s),
        primary_probs=pp,
        secondary_probs=sp,
    )


def _probs(top1, n=10):
    v = np.full(n, 0.5 / (n - 1))
    v[top1] = 0.5
    return v


# ---------------------------------------------------------------------------
# classification logs


def test_class_log_roundtrip(tmp_path):
    log = ClassLog(
        num_classes=10,
        records=[
            _record(0),
            _record(1, truth=None, p=(1, 2, 3, 4, 5), s=(2, 1, 3, 4, 5)),
            _record(2, truth=9, p=(9, 0, 1, 2, 3), s=(8, 9, 0, 1, 2)),
        ],
    )
    path = tmp_path / "log.jsonl"
    write_class_log(log, path)
    back = read_class_log(path)
    assert back == log
    path2 = tmp_path / "log2.jsonl"
    write_class_log(back, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_class_log_roundtrip_with_probs(tmp_path):
    log = ClassLog(
        num_classes=10,
        records=[_record(0, pp=_probs(3), sp=_probs(3))],
    )
    path = tmp_path / "log.jsonl"
    write_class_log(log, path)
    back = read_class_log(path)
    assert back == log
    assert back.has_probs()
    path2 = tmp_path / "log2.jsonl"
    write_class_log(back, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_class_log_reader_reports_line_numbers(tmp_path):
    path = tmp_path / "log.jsonl"
    good = (
        '{"id": "a", "truth": 3, "p_topk": [3, 4, 5, 6, 7], '
        '"s_topk": [3, 4, 5, 6, 7], "p_probs": null, "s_probs": null}'
    )
    cases = [
        ("not json", "bad JSON"),
        ('["a list"]', "must be a JSON object"),
        ('{"id": "b"}', "missing keys"),
        ('{"id": 5, "truth": 1, "p_topk": [1,2,3,4,5], "s_topk": [1,2,3,4,5], '
         '"p_probs": null, "s_probs": null}', "id must be a string"),
        ('{"id": "b", "truth": "x", "p_topk": [1,2,3,4,5], "s_topk": [1,2,3,4,5], '
         '"p_probs": null, "s_probs": null}', "truth must be int or null"),
        ('{"id": "b", "truth": 1, "p_topk": [1,2,3,4], "s_topk": [1,2,3,4,5], '
         '"p_probs": null, "s_probs": null}', "need >= 5"),
        ('{"id": "b", "truth": 1, "p_topk": [1,1,3,4,5], "s_topk": [1,2,3,4,5], '
         '"p_probs": null, "s_probs": null}', "duplicate class indices"),
        ('{"id": "b", "truth": 1, "p_topk": [1,2,3,4,99], "s_topk": [1,2,3,4,5], '
         '"p_probs": null, "s_probs": null}', "out of range"),
        ('{"id": "b", "truth": 99, "p_topk": [1,2,3,4,5], "s_topk": [1,2,3,4,5], '
         '"p_probs": null, "s_probs": null}', "truth 99 out of range"),
        ('{"id": "b", "truth": 1, "p_topk": "nope", "s_topk": [1,2,3,4,5], '
         '"p_probs": null, "s_probs": null}', "list of ints"),
        ('{"id": "a", "truth": 3, "p_topk": [3,4,5,6,7], "s_topk": [3,4,5,6,7], '
         '"p_probs": null, "s_probs": null}', "duplicate item id"),
    ]
    for bad_line, message in cases:
        path.write_text(
            '{"num_classes": 10}\n' + good + "\n" + bad_line + "\n", encoding="utf-8"
        )
        with pytest.raises(LogFormatError) as err:
            read_class_log(path)
        assert ":3:" in str(err.value), bad_line
        assert message in str(err.value), bad_line


def test_class_log_reader_header_errors(tmp_path):
    path = tmp_path / "log.jsonl"
    for header, message in [
        ("", "missing num_classes header"),
        ("not json", "bad JSON header"),
        ('{"something": 1}', "num_classes"),
        ('{"num_classes": "ten"}', "num_classes"),
    ]:
        path.write_text(header + "\n", encoding="utf-8")
        with pytest.raises(LogFormatError) as err:
            read_class_log(path)
        assert ":1:" in str(err.value)
        assert message in str(err.value)


def test_class_log_reader_prob_errors(tmp_path):
    path = tmp_path / "log.jsonl"
    base = '{{"id": "a", "truth": 1, "p_topk": [1,2,3,4,5], "s_topk": [1,2,3,4,5], "p_probs": {}, "s_probs": null}}'
    full = "[" + ",".join(["0.1"] * 10) + "]"
    for probs, message in [
        ('"x"', "must be a list or null"),
        ("[0.5, 0.5]", "length 2 != num_classes 10"),
        ("[[0.1], [0.2]]", "flat list"),
        (full.replace("0.1", "-0.1", 1), "finite and nonnegative"),
        (full.replace("0.1]", "0.4]"), "sum to"),
        (full.replace("[0.1", "[0.55").replace("0.1]", "0.05]").replace(",0.1", ",0.05"),
         "argmax"),
    ]:
        path.write_text('{"num_classes": 10}\n' + base.format(probs) + "\n", encoding="utf-8")
        with pytest.raises(LogFormatError) as err:
            read_class_log(path)
        assert ":2:" in str(err.value), probs
        assert message in str(err.value), probs


def test_class_log_skips_blank_lines(tmp_path):
    path = tmp_path / "log.jsonl"
    rec = (
        '{"id": "a", "truth": 3, "p_topk": [3,4,5,6,7], "s_topk": [3,4,5,6,7], '
        '"p_probs": null, "s_probs": null}'
    )
    path.write_text('{"num_classes": 10}\n\n' + rec + "\n\n", encoding="utf-8")
    assert len(read_class_log(path)) == 1


def test_class_log_constructor_validation():
    with pytest.raises(LogFormatError, match="num_classes must be >= 1"):
        ClassLog(num_classes=0, records=[])
    with pytest.raises(LogFormatError, match="duplicate item id"):
        ClassLog(num_classes=10, records=[_record(0), _record(0)])
    with pytest.raises(LogFormatError, match="need >= 5"):
        ClassLog(num_classes=10, records=[_record(0, p=(1, 2, 3))])
    with pytest.raises(LogFormatError, match="out of range"):
        ClassLog(num_classes=5, records=[_record(0)])


def test_truth_array_requires_labels():
    log = ClassLog(num_classes=10, records=[_record(0, truth=None)])
    with pytest.raises(ValueError, match="has no truth label"):
        log.truth_array


def test_has_probs():
    assert not ClassLog(num_classes=10, records=[_record(0)]).has_probs()
    both = ClassLog(num_classes=10, records=[_record(0, pp=_probs(3), sp=_probs(3))])
    assert both.has_probs()
    one_sided = ClassLog(num_classes=10, records=[_record(0, pp=_probs(3))])
    assert not one_sided.has_probs()


def test_topk_arrays_use_first_five():
    log = ClassLog(num_classes=10, records=[_record(0, p=(3, 4, 5, 6, 7, 8, 9))])
    assert log.primary_topk_array.shape == (1, 5)
    assert list(log.primary_topk_array[0]) == [3, 4, 5, 6, 7]


# ---------------------------------------------------------------------------
# steering traces


def _trace(frames, primary, secondary, fps=30):
    return SteeringTrace(
        frame_index=np.asarray(frames, dtype=np.int64),
        primary_angle_deg=np.asarray(primary, dtype=np.float64),
        secondary_angle_deg=np.asarray(secondary, dtype=np.float64),
        fps=fps,
    )


def test_trace_roundtrip(tmp_path):
    trace = _trace([0, 1, 2, 5], [0.0, -1.5, 2.25, 10.125], [0.5, 0.5, -0.5, 1e-12])
    path = tmp_path / "trace.csv"
    write_steering_trace(trace, path)
    back = read_steering_trace(path)
    assert back == trace
    path2 = tmp_path / "trace2.csv"
    write_steering_trace(back, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_trace_reader_errors(tmp_path):
    path = tmp_path / "trace.csv"
    header = "frame_index,primary_angle_deg,secondary_angle_deg\n"
    for body, lineno, message in [
        ("", ":1:", "empty file"),
        ("frame,angle\n0,1.0\n", ":1:", "header"),
        (header + "0,1.0\n", ":2:", "expected 3 fields"),
        (header + "0,1.0,x\n", ":2:", "could not convert"),
        (header + "0,1.0,nan\n", ":2:", "must be finite"),
        (header + "0,1.0,2.0\n0,1.0,2.0\n", ":3:", "duplicate frame_index"),
        (header + "5,1.0,2.0\n3,1.0,2.0\n", ":3:", "not increasing"),
    ]:
        if body:
            path.write_text(body, encoding="utf-8")
        else:
            path.write_text("", encoding="utf-8")
        with pytest.raises(LogFormatError) as err:
            read_steering_trace(path)
        assert lineno in str(err.value), body
        assert message in str(err.value), body
    path.write_text(header, encoding="utf-8")
    with pytest.raises(LogFormatError, match="no data rows"):
        read_steering_trace(path)


def test_trace_constructor_validation():
    with pytest.raises(LogFormatError, match="mismatched lengths"):
        _trace([0, 1], [0.0], [0.0, 1.0])
    with pytest.raises(LogFormatError, match="empty"):
        _trace([], [], [])
    with pytest.raises(LogFormatError, match="fps"):
        _trace([0], [0.0], [0.0], fps=0)
    with pytest.raises(LogFormatError, match="not strictly increasing at row 2"):
        _trace([0, 3, 3], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0])
    with pytest.raises(LogFormatError, match="not finite at row 1"):
        _trace([0, 1], [0.0, np.nan], [0.0, 0.0])


def test_trace_properties():
    trace = _trace([2, 3, 4], [0.0, 1.0, 2.0], [0.0, 0.0, 0.0])
    assert trace.first_frame == 2
    assert trace.last_frame == 4
    assert trace.is_contiguous()
    assert len(trace) == 3
    gapped = _trace([0, 2], [0.0, 1.0], [0.0, 0.0])
    assert not gapped.is_contiguous()


def test_trace_samples_roundtrip():
    trace = _trace([0, 1], [0.5, -0.5], [1.5, 2.5])
    samples = trace.samples
    assert samples[0] == SteeringSample(0, 0.5, 1.5)
    assert SteeringTrace.from_samples(samples, fps=trace.fps) == trace


@settings(max_examples=50, deadline=None)
@given(
    frames=st.lists(st.integers(0, 10**7), unique=True, min_size=1, max_size=40).map(sorted),
    data=st.data(),
)
def test_trace_roundtrip_property(tmp_path_factory, frames, data):
    n = len(frames)
    finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
    primary = data.draw(st.lists(finite, min_size=n, max_size=n))
    secondary = data.draw(st.lists(finite, min_size=n, max_size=n))
    trace = _trace(frames, primary, secondary)
    path = tmp_path_factory.mktemp("rt") / "trace.csv"
    write_steering_trace(trace, path)
    back = read_steering_trace(path)
    assert back == trace
    path2 = path.with_suffix(".2.csv")
    write_steering_trace(back, path2)
    assert path.read_bytes() == path2.read_bytes()


# ---------------------------------------------------------------------------
# disengagement events


def test_events_roundtrip(tmp_path):
    events = [DisengagementEvent(10, "human"), DisengagementEvent(500, "machine")]
    path = tmp_path / "events.csv"
    write_disengagements(events, path)
    assert read_disengagements(path) == events
    path2 = tmp_path / "events2.csv"
    write_disengagements(read_disengagements(path), path2)
    assert path.read_bytes() == path2.read_bytes()


def test_events_reader_errors(tmp_path):
    path = tmp_path / "events.csv"
    header = "frame_index,initiator\n"
    for body, lineno, message in [
        ("", ":1:", "empty file"),
        ("frame,who\n", ":1:", "header"),
        (header + "10\n", ":2:", "expected 2 fields"),
        (header + "x,human\n", ":2:", "invalid literal"),
        (header + "10,alien\n", ":2:", "initiator"),
        (header + "10,human\n10,human\n", ":3:", "not increasing"),
        (header + "10,human\n5,machine\n", ":3:", "not increasing"),
    ]:
        path.write_text(body, encoding="utf-8")
        with pytest.raises(LogFormatError) as err:
            read_disengagements(path)
        assert lineno in str(err.value), body
        assert message in str(err.value), body


def test_event_validation():
    with pytest.raises(LogFormatError, match="initiator"):
        DisengagementEvent(0, "nobody")
    with pytest.raises(LogFormatError, match="frame_index"):
        DisengagementEvent(-1, "human")


def test_empty_events_file_roundtrip(tmp_path):
    path = tmp_path / "events.csv"
    write_disengagements([], path)
    assert read_disengagements(path) == []
