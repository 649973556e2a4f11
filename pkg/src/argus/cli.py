"""Command line front end.

Every subcommand reads validated stream files, writes deterministic
CSV/JSON reports into --out, and drops a manifest.json capturing the
resolved configuration, the seed, and sha256 digests of every input
and output.  Re-running a subcommand with --from-manifest replays the
stored configuration (after checking the input digests) and reproduces
the reports byte for byte.

Exit codes: 0 success, 2 invalid input or arguments, 3 infeasible
generator spec, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import cv2
import numpy as np

from . import __version__
from .arbitration import (
    arguing_machines_error,
    detector_metrics,
    ensemble_error,
    random_arbitrator_draws,
    random_arbitrator_expectation,
    topk_error,
)
from .disagreement import DisagreementConfig, signal_series, write_signal_csv
from .disengagement import default_delta_grid, roc_sweep, write_roc_csv, write_roc_svg
from .preprocessing import (
    NET_HEIGHT,
    NET_WIDTH,
    FrameBuffer,
    bin_occupancy,
    balance_dataset,
    compose,
    frame_from_u8,
    history_depth,
)
from .streams import (
    LogFormatError,
    read_class_log,
    read_disengagements,
    read_steering_trace,
    write_class_log,
    write_disengagements,
    write_steering_trace,
)
from .synthgen import (
    ClassLogSpec,
    InfeasibleSpecError,
    SteeringScenarioSpec,
    gen_class_log,
    gen_steering_scenario,
    reference_class_spec,
    reference_steering_spec,
)


class _CliError(ValueError):
    """Bad arguments or inputs detected by the CLI layer (exit 2)."""


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _digest_input(path: Path) -> str:
    """Digest a file, or a frame directory as its sorted .png contents."""
    if not path.is_dir():
        return _sha256(path)
    h = hashlib.sha256()
    for p in sorted(path.glob("*.png")):
        h.update(p.name.encode())
        h.update(b"\0")
        h.update(_sha256(p).encode())
        h.update(b"\n")
    return h.hexdigest()


def _write_json(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _write_manifest(command: str, config: dict, inputs: dict, outdir: Path) -> None:
    manifest = {
        "tool": "argus",
        "version": __version__,
        "command": command,
        "config": config,
        "inputs": {
            name: {"path": str(Path(p).resolve()), "sha256": _digest_input(Path(p))}
            for name, p in inputs.items()
        },
        "outputs": {
            f.name: _sha256(f)
            for f in sorted(outdir.iterdir())
            if f.is_file() and f.name != "manifest.json"
        },
    }
    _write_json(manifest, outdir / "manifest.json")


def _load_manifest(path: str, command: str) -> dict:
    try:
        manifest = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise _CliError(f"cannot read manifest {path}: {exc}") from exc
    if manifest.get("command") != command:
        raise _CliError(
            f"manifest {path} was written by {manifest.get('command')!r}, "
            f"not {command!r}"
        )
    for name, entry in manifest.get("inputs", {}).items():
        p = Path(entry["path"])
        if not p.exists():
            raise _CliError(f"manifest input {name} missing: {p}")
        digest = _digest_input(p)
        if digest != entry["sha256"]:
            raise _CliError(
                f"manifest input {name} changed since the recorded run: {p} "
                f"(sha256 {digest} != {entry['sha256']})"
            )
    return manifest["config"]


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _need(args, flag: str):
    value = getattr(args, flag.strip("-").replace("-", "_"))
    if value is None:
        raise _CliError(f"{flag} is required (or use --from-manifest)")
    return value


# ---------------------------------------------------------------------------
# arbitrate


def _run_arbitrate(config: dict, outdir: Path) -> dict:
    log = read_class_log(config["log"])
    if len(log) == 0:
        raise _CliError(f"empty log: {config['log']}")
    ks = config["ks"]
    seed = config["seed"]
    mc_draws = config["mc_draws"]
    rf = float(
        (log.primary_topk_array[:, 0] != log.secondary_topk_array[:, 0]).sum()
    ) / len(log)
    budget = config["budget_fraction"] if config["budget_fraction"] is not None else rf
    reviewed = int(np.floor(budget * len(log)))

    want_ensemble = config["ensemble"]
    if want_ensemble == "require" and not log.has_probs():
        missing = next(
            r.item_id for r in log.records
            if r.primary_probs is None or r.secondary_probs is None
        )
        raise _CliError(f"--ensemble require, but record id={missing!r} has no probs")
    use_ensemble = want_ensemble == "require" or (
        want_ensemble == "auto" and log.has_probs()
    )

    rows = []
    rows.append({"method": "primary_only", "review_fraction": 0.0}
                | {f"top{k}_error_pct": topk_error(log, "primary", k) for k in ks})
    rows.append({"method": "secondary_only", "review_fraction": 0.0}
                | {f"top{k}_error_pct": topk_error(log, "secondary", k) for k in ks})
    if use_ensemble:
        rows.append({"method": "ensemble", "review_fraction": 0.0}
                    | {f"top{k}_error_pct": ensemble_error(log, k) for k in ks})
    rand_row = {"method": "random_arbitrator", "review_fraction": reviewed / len(log)}
    for k in ks:
        draws = random_arbitrator_draws(log, budget, k, range(seed, seed + mc_draws))
        rand_row[f"top{k}_error_pct"] = float(draws.mean())
        rand_row[f"top{k}_stderr_pct"] = (
            float(draws.std(ddof=1) / np.sqrt(draws.size)) if draws.size > 1 else 0.0
        )
        rand_row[f"top{k}_expected_pct"] = random_arbitrator_expectation(log, budget, k)
    rows.append(rand_row)
    am_row = {"method": "arguing_machines"}
    for k in ks:
        err, review = arguing_machines_error(log, k)
        am_row[f"top{k}_error_pct"] = err
        am_row["review_fraction"] = review
    rows.append(am_row)

    table1 = {
        "num_records": len(log),
        "k_values": ks,
        "budget_fraction": budget,
        "mc_draws": mc_draws,
        "seed": seed,
        "rows": rows,
    }
    _write_json(table1, outdir / "table1.json")
    cols = ["method", "review_fraction"] + [f"top{k}_error_pct" for k in ks]
    with open(outdir / "table1.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(cols) + "\n")
        for row in rows:
            fh.write(",".join(_csv_cell(row.get(c)) for c in cols) + "\n")

    det_rows = []
    for k in ks:
        met = detector_metrics(log, k)
        det_rows.append(
            {
                "k": k,
                "tp": met.tp,
                "fp": met.fp,
                "fn": met.fn,
                "precision_pct": met.precision_pct,
                "recall_pct": met.recall_pct,
            }
        )
    _write_json({"rows": det_rows}, outdir / "table2.json")
    det_cols = ["k", "tp", "fp", "fn", "precision_pct", "recall_pct"]
    with open(outdir / "table2.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(det_cols) + "\n")
        for row in det_rows:
            fh.write(",".join(_csv_cell(row[c]) for c in det_cols) + "\n")
    return {"log": config["log"]}


def _csv_cell(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, float):
        return repr(value)
    return str(value)


# ---------------------------------------------------------------------------
# signal / sweep


def _run_signal(config: dict, outdir: Path) -> dict:
    trace = read_steering_trace(config["trace"], fps=config["fps"])
    cfg = DisagreementConfig(
        angle_range_deg=config["range_deg"],
        window_len=config["window"],
        threshold=config["threshold"],
    )
    write_signal_csv(signal_series(trace, cfg), outdir / "signal.csv")
    return {"trace": config["trace"]}


def _run_sweep(config: dict, outdir: Path) -> dict:
    trace = read_steering_trace(config["trace"], fps=config["fps"])
    events = read_disengagements(config["events"])
    cfg = DisagreementConfig(
        angle_range_deg=config["range_deg"], window_len=config["window"]
    )
    result = roc_sweep(
        trace, events, cfg, deltas=np.asarray(config["grid"]), stride=config["stride"]
    )
    write_roc_csv(result.points, outdir / "roc.csv")
    summary = {
        "best": {
            "delta": result.best.delta,
            "far": result.best.far,
            "frr": result.best.frr,
            "mean_error": result.best.mean_error,
        },
        "n_disengagement_windows": result.n_disengagement_windows,
        "n_normal_windows": result.n_normal_windows,
        "n_grid_points": len(result.points),
        "window": config["window"],
        "stride": config["stride"],
        "range_deg": config["range_deg"],
    }
    _write_json(summary, outdir / "sweep.json")
    if config["svg"]:
        write_roc_svg(result, outdir / "roc.svg")
    return {"trace": config["trace"], "events": config["events"]}


def _parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise _CliError(f"--grid must be START:STOP:STEP, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise _CliError(f"--grid must be numeric START:STOP:STEP, got {text!r}") from exc
    if step <= 0 or stop < start:
        raise _CliError(f"--grid needs step > 0 and stop >= start, got {text!r}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [float(start + i * step) for i in range(count)]


# ---------------------------------------------------------------------------
# preprocess


def _load_frames(config: dict) -> FrameBuffer:
    src = Path(config["input"])
    if src.is_dir():
        paths = sorted(src.glob("*.png"))
        if not paths:
            raise _CliError(f"no .png frames in {src}")
        frames = []
        for p in paths:
            img = cv2.imread(str(p), cv2.IMREAD_COLOR)
            if img is None:
                raise _CliError(f"cannot decode {p}")
            frames.append(frame_from_u8(img[:, :, ::-1]))  # BGR -> RGB
        return FrameBuffer(np.stack(frames), start=config["start"])
    if not src.is_file():
        raise _CliError(f"input {src} is neither a directory nor a file")
    sidecar_path = config["sidecar"] or str(src) + ".json"
    try:
        meta = json.loads(Path(sidecar_path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise _CliError(f"cannot read sidecar {sidecar_path}: {exc}") from exc
    for key in ("width", "height", "frames"):
        if not isinstance(meta.get(key), int):
            raise _CliError(f"sidecar {sidecar_path} missing integer {key!r}")
    if meta.get("dtype", "uint8") != "uint8":
        raise _CliError(f"raw input must be uint8, sidecar says {meta.get('dtype')!r}")
    t, h, w = meta["frames"], meta["height"], meta["width"]
    raw = np.fromfile(src, dtype=np.uint8)
    if raw.size != t * 3 * h * w:
        raise _CliError(
            f"{src}: {raw.size} bytes does not match frames*3*height*width = {t * 3 * h * w}"
        )
    planar = raw.reshape(t, 3, h, w).transpose(0, 2, 3, 1)
    return FrameBuffer(planar.astype(np.float64) / 255.0, start=config["start"])


def _run_preprocess(config: dict, outdir: Path) -> dict:
    buf = _load_frames(config)
    method = config["method"]
    first = buf.start + history_depth(method)
    if first > buf.end:
        raise _CliError(
            f"{method} needs {history_depth(method)} frames of history; "
            f"buffer [{buf.start}, {buf.end}] has no valid frame"
        )
    composed = []
    for t in range(first, buf.end + 1):
        net = compose(method, buf, t)
        net.pixels.astype(np.float32).transpose(2, 0, 1).tofile(
            outdir / f"netinput_{t:06d}.bin"
        )
        composed.append(t)
    meta = {
        "method": method,
        "width": NET_WIDTH,
        "height": NET_HEIGHT,
        "channels": 3,
        "dtype": "float32",
        "layout": "chw",
        "fps": config["fps"],
        "frames": composed,
    }
    _write_json(meta, outdir / "meta.json")
    inputs = {"input": config["input"]}
    if not Path(config["input"]).is_dir():
        inputs["sidecar"] = config["sidecar"] or config["input"] + ".json"
    return inputs


# ---------------------------------------------------------------------------
# balance


def _run_balance(config: dict, outdir: Path) -> dict:
    trace = read_steering_trace(config["trace"], fps=config["fps"])
    column = config["column"]
    angles = (
        trace.primary_angle_deg if column == "primary" else trace.secondary_angle_deg
    )
    mask = balance_dataset(angles, keep=config["keep"], seed=config["seed"])
    with open(outdir / "balance.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("frame_index,angle_deg,keep\n")
        for f, a, m in zip(trace.frame_index, angles, mask):
            fh.write(f"{int(f)},{repr(float(a))},{'true' if m else 'false'}\n")
    before = bin_occupancy(angles)
    after = bin_occupancy(angles[mask])
    summary = {
        "column": column,
        "total": int(angles.size),
        "in_range": int(before.sum()),
        "kept": int(mask.sum()),
        "threshold": int(before[before > 0].min()),
        "bin_counts_before": [int(x) for x in before],
        "bin_counts_after": [int(x) for x in after],
    }
    _write_json(summary, outdir / "balance.json")
    return {"trace": config["trace"]}


# ---------------------------------------------------------------------------
# simulate


def _run_simulate_log(config: dict, outdir: Path) -> dict:
    spec = ClassLogSpec(
        n=config["n"],
        fail1=config["fail1"],
        fail5=config["fail5"],
        disagree=config["disagree"],
        tp1=config["tp1"],
        tp5=config["tp5"],
        seed=config["seed"],
        num_classes=config["classes"],
        with_probs=config["with_probs"],
        s_fail1=config["s_fail1"],
        s_fail5=config["s_fail5"],
        ens_fail1=config["ens_fail1"],
        ens_fail5=config["ens_fail5"],
    )
    write_class_log(gen_class_log(spec), outdir / "log.jsonl")
    return {}


def _run_simulate_steering(config: dict, outdir: Path) -> dict:
    spec = SteeringScenarioSpec(
        duration_frames=config["duration"],
        fps=config["fps"],
        event_frames=tuple(config["events"]),
        baseline_noise_deg=config["noise_deg"],
        divergence_deg=config["divergence_deg"],
        ramp_len_frames=config["ramp_frames"],
        seed=config["seed"],
        noise_ar1=config["ar1"],
    )
    trace, events = gen_steering_scenario(spec)
    write_steering_trace(trace, outdir / "trace.csv")
    write_disengagements(events, outdir / "events.csv")
    return {}


# ---------------------------------------------------------------------------
# argument parsing and dispatch

_RUNNERS = {
    "arbitrate": _run_arbitrate,
    "signal": _run_signal,
    "sweep": _run_sweep,
    "preprocess": _run_preprocess,
    "balance": _run_balance,
    "simulate-log": _run_simulate_log,
    "simulate-steering": _run_simulate_steering,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="argus",
        description="Disagreement monitoring and arbitration evaluation "
        "for paired decision streams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", required=True, help="output directory for reports")
        p.add_argument(
            "--from-manifest",
            default=None,
            help="replay the configuration recorded in a previous run's manifest",
        )

    p = sub.add_parser("arbitrate", help="score arbitration policies on a class log")
    common(p)
    p.add_argument("--log", default=None, help="classification log (JSONL)")
    p.add_argument("--k", action="append", type=int, default=None,
                   help="top-k values to score (repeatable; default 1 and 5)")
    p.add_argument("--seed", type=int, default=None,
                   help="base seed for the random arbitrator draws")
    p.add_argument("--budget", type=float, default=None,
                   help="random arbitrator review budget (default: measured "
                        "disagreement fraction)")
    p.add_argument("--mc-draws", type=int, default=100,
                   help="Monte Carlo draws for the random arbitrator")
    p.add_argument("--ensemble", choices=("auto", "require", "skip"), default="auto")

    p = sub.add_parser("signal", help="export the disagreement signal of a trace")
    common(p)
    p.add_argument("--trace", default=None)
    p.add_argument("--fps", type=int, default=30)
    p.add_argument("--range-deg", type=float, default=10.0)
    p.add_argument("--window", type=int, default=30)
    p.add_argument("--threshold", type=float, default=10.0)

    p = sub.add_parser("sweep", help="FAR/FRR threshold sweep against events")
    common(p)
    p.add_argument("--trace", default=None)
    p.add_argument("--events", default=None)
    p.add_argument("--fps", type=int, default=30)
    p.add_argument("--range-deg", type=float, default=10.0)
    p.add_argument("--window", type=int, default=30)
    p.add_argument("--stride", type=int, default=None,
                   help="window sampling stride (default: window length)")
    p.add_argument("--grid", default=None,
                   help="threshold grid START:STOP:STEP (default 0:2L:0.5)")
    p.add_argument("--svg", action="store_true", help="also write roc.svg")

    p = sub.add_parser("preprocess", help="compose network inputs from frames")
    common(p)
    p.add_argument("--method", choices=("m1", "m2", "m3", "m4", "m5"), default=None)
    p.add_argument("--input", default=None,
                   help="directory of 8-bit PNG frames, or raw planar uint8 .bin")
    p.add_argument("--sidecar", default=None,
                   help="JSON sidecar for raw input (default: <input>.json)")
    p.add_argument("--fps", type=int, default=30)
    p.add_argument("--start", type=int, default=0,
                   help="video index of the first supplied frame")

    p = sub.add_parser("balance", help="cap steering-angle bins at the rarest bin")
    common(p)
    p.add_argument("--trace", default=None)
    p.add_argument("--fps", type=int, default=30)
    p.add_argument("--column", choices=("primary", "secondary"), default="primary")
    p.add_argument("--keep", choices=("first", "random"), default="first")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("simulate-log", help="generate a classification log")
    common(p)
    p.add_argument("--reference", action="store_true",
                   help="use the documented 50000-item benchmark counts")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--fail1", type=int, default=None)
    p.add_argument("--fail5", type=int, default=None)
    p.add_argument("--disagree", type=int, default=None)
    p.add_argument("--tp1", type=int, default=None)
    p.add_argument("--tp5", type=int, default=None)
    p.add_argument("--classes", type=int, default=1000)
    p.add_argument("--with-probs", action="store_true")
    p.add_argument("--s-fail1", type=int, default=None)
    p.add_argument("--s-fail5", type=int, default=None)
    p.add_argument("--ens-fail1", type=int, default=None)
    p.add_argument("--ens-fail5", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("simulate-steering", help="generate a steering scenario")
    common(p)
    p.add_argument("--reference", action="store_true",
                   help="use the documented 20-event benchmark scenario")
    p.add_argument("--duration", type=int, default=None)
    p.add_argument("--fps", type=int, default=30)
    p.add_argument("--events", default=None,
                   help="comma-separated event frames, e.g. 2500,7500")
    p.add_argument("--noise-deg", type=float, default=0.0)
    p.add_argument("--divergence-deg", type=float, default=0.0)
    p.add_argument("--ramp-frames", type=int, default=0)
    p.add_argument("--ar1", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=None)

    return parser


def _resolve_config(args) -> dict:
    """Turn parsed flags into the JSON-serializable config dict."""
    cmd = args.command
    if cmd == "arbitrate":
        return {
            "log": _need(args, "--log"),
            "ks": sorted(set(args.k)) if args.k else [1, 5],
            "seed": _need(args, "--seed"),
            "budget_fraction": args.budget,
            "mc_draws": args.mc_draws,
            "ensemble": args.ensemble,
        }
    if cmd == "signal":
        return {
            "trace": _need(args, "--trace"),
            "fps": args.fps,
            "range_deg": args.range_deg,
            "window": args.window,
            "threshold": args.threshold,
        }
    if cmd == "sweep":
        window = args.window
        grid = (
            _parse_grid(args.grid)
            if args.grid is not None
            else [float(x) for x in default_delta_grid(DisagreementConfig(window_len=window))]
        )
        return {
            "trace": _need(args, "--trace"),
            "events": _need(args, "--events"),
            "fps": args.fps,
            "range_deg": args.range_deg,
            "window": window,
            "stride": args.stride if args.stride is not None else window,
            "grid": grid,
            "svg": bool(args.svg),
        }
    if cmd == "preprocess":
        return {
            "method": _need(args, "--method"),
            "input": _need(args, "--input"),
            "sidecar": args.sidecar,
            "fps": args.fps,
            "start": args.start,
        }
    if cmd == "balance":
        if args.keep == "random" and args.seed is None:
            raise _CliError("--seed is required with --keep random")
        return {
            "trace": _need(args, "--trace"),
            "fps": args.fps,
            "column": args.column,
            "keep": args.keep,
            "seed": args.seed,
        }
    if cmd == "simulate-log":
        seed = _need(args, "--seed")
        if args.reference:
            ref = reference_class_spec(
                num_classes=args.classes, with_probs=args.with_probs, seed=seed
            )
            return {
                "n": ref.n, "fail1": ref.fail1, "fail5": ref.fail5,
                "disagree": ref.disagree, "tp1": ref.tp1, "tp5": ref.tp5,
                "seed": seed, "classes": ref.num_classes,
                "with_probs": ref.with_probs,
                "s_fail1": ref.s_fail1, "s_fail5": ref.s_fail5,
                "ens_fail1": ref.ens_fail1, "ens_fail5": ref.ens_fail5,
            }
        return {
            "n": _need(args, "--n"),
            "fail1": _need(args, "--fail1"),
            "fail5": _need(args, "--fail5"),
            "disagree": _need(args, "--disagree"),
            "tp1": _need(args, "--tp1"),
            "tp5": _need(args, "--tp5"),
            "seed": seed,
            "classes": args.classes,
            "with_probs": bool(args.with_probs),
            "s_fail1": args.s_fail1,
            "s_fail5": args.s_fail5,
            "ens_fail1": args.ens_fail1,
            "ens_fail5": args.ens_fail5,
        }
    if cmd == "simulate-steering":
        seed = _need(args, "--seed")
        if args.reference:
            ref = reference_steering_spec(seed=seed)
            return {
                "duration": ref.duration_frames, "fps": ref.fps,
                "events": list(ref.event_frames),
                "noise_deg": ref.baseline_noise_deg,
                "divergence_deg": ref.divergence_deg,
                "ramp_frames": ref.ramp_len_frames,
                "seed": seed, "ar1": ref.noise_ar1,
            }
        events_text = _need(args, "--events")
        try:
            events = [int(x) for x in events_text.split(",") if x.strip()]
        except ValueError as exc:
            raise _CliError(f"--events must be comma-separated ints, got {events_text!r}") from exc
        return {
            "duration": _need(args, "--duration"),
            "fps": args.fps,
            "events": events,
            "noise_deg": args.noise_deg,
            "divergence_deg": args.divergence_deg,
            "ramp_frames": args.ramp_frames,
            "seed": seed,
            "ar1": args.ar1,
        }
    raise _CliError(f"unknown command {cmd!r}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.from_manifest is not None:
            config = _load_manifest(args.from_manifest, args.command)
        else:
            config = _resolve_config(args)
        outdir = _outdir(args)
        inputs = _RUNNERS[args.command](config, outdir)
        _write_manifest(args.command, config, inputs, outdir)
    except InfeasibleSpecError as exc:
        print(f"error: infeasible spec: {exc}", file=sys.stderr)
        return 3
    except (LogFormatError, _CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: internal invariant violated: {exc}", file=sys.stderr)
        return 4
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
