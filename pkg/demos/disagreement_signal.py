"""Watch the windowed disagreement score rise ahead of a disengagement.

A short synthetic drive holds the two steering estimates together at
one noisy baseline, then lets them drift apart over a five second ramp
before each takeover event.  The score integrates the normalized gap
over a one second window, so it climbs during the ramp and crosses the
flag threshold well before the event frame.
"""

import numpy as np

from argus.disagreement import DisagreementConfig, signal_series
from argus.synthgen import SteeringScenarioSpec, gen_steering_scenario

SPEC = SteeringScenarioSpec(
    duration_frames=3_000,
    fps=30,
    event_frames=(1_200, 2_400),
    baseline_noise_deg=0.5,
    divergence_deg=4.0,
    ramp_len_frames=150,
    seed=3,
)


def main() -> None:
    trace, events = gen_steering_scenario(SPEC)
    cfg = DisagreementConfig(angle_range_deg=10.0, window_len=30, threshold=6.0)
    signals = signal_series(trace, cfg)

    scores = np.asarray([s.score for s in signals])
    flagged = np.asarray([s.flagged for s in signals])
    frames = np.asarray([s.frame_index for s in signals])
    print(f"{len(signals)} scored windows, {int(flagged.sum())} flagged "
          f"at threshold {cfg.threshold}")

    prev_event = -1
    for ev in events:
        # only windows that lie fully after the previous event count as
        # warning for this one
        clear_of_prev = frames - cfg.window_len + 1 > prev_event
        mask = flagged & clear_of_prev & (frames <= ev.frame_index)
        first_flag = int(frames[mask].min()) if mask.any() else None
        prev_event = ev.frame_index
        print(f"\nevent at frame {ev.frame_index} ({ev.initiator}):")
        if first_flag is None:
            print("  never flagged before the event")
            continue
        print(f"  first flag at frame {first_flag}, "
              f"{(ev.frame_index - first_flag) / trace.fps:.1f}s of warning")
        # a small strip chart around the ramp
        for t in range(ev.frame_index - 180, ev.frame_index + 1, 30):
            i = int(np.searchsorted(frames, t))
            bar = "#" * int(scores[i] * 2)
            mark = " <- flag" if flagged[i] else ""
            print(f"  frame {frames[i]:>5}  score {scores[i]:6.2f}  {bar}{mark}")


if __name__ == "__main__":
    main()
