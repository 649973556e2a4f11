"""Sweep the flag threshold and pick the FAR/FRR operating point.

Runs the full benchmark steering scenario (twenty ramped takeover
events in roughly 55 minutes of 30 fps driving), scores every
non-overlapping 30-frame window, and walks the threshold grid.  Low
thresholds flag everything (FAR 1), high thresholds flag nothing
(FRR 1); the sweep reports the argmin of the mean error between those
extremes and writes roc.csv plus an SVG of the tradeoff.
"""

import sys
from pathlib import Path

from argus.disagreement import DisagreementConfig
from argus.disengagement import roc_sweep, write_roc_csv, write_roc_svg
from argus.synthgen import gen_steering_scenario, reference_steering_spec


def main(outdir: str = "demo_out/threshold_sweep") -> None:
    trace, events = gen_steering_scenario(reference_steering_spec())
    cfg = DisagreementConfig(angle_range_deg=10.0, window_len=30)
    result = roc_sweep(trace, events, cfg)

    print(f"{result.n_disengagement_windows} disengagement windows, "
          f"{result.n_normal_windows} normal windows")
    print("\ndelta    FAR     FRR     mean")
    shown = {0.0, 1.0, 2.0, 3.0, 4.0, 6.0, 10.0, 20.0, 60.0}
    for pt in result.points:
        if pt.delta in shown:
            star = "  <- best" if pt.delta == result.best.delta else ""
            print(f"{pt.delta:5.1f}  {pt.far:.4f}  {pt.frr:.4f}  "
                  f"{pt.mean_error:.4f}{star}")
    print(f"\nbest threshold {result.best.delta}: mean error "
          f"{result.best.mean_error:.4f} "
          f"({100 * (1 - result.best.mean_error):.1f}% balanced accuracy)")

    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    write_roc_csv(result.points, out / "roc.csv")
    write_roc_svg(result, out / "roc.svg")
    print(f"wrote {out}/roc.csv and {out}/roc.svg")


if __name__ == "__main__":
    main(*sys.argv[1:])
