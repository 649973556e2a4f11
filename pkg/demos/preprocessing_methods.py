"""Compare the five network-input compositions on a synthetic clip.

The clip is a bright square orbiting a gray background, so motion
shows up cleanly.  The difference methods m1 and m2 cancel the static
background to the 0.5 midpoint and paint only the moving square, m3
stacks three grayscale snapshots of the recent past, m4 extracts
spatial edges, and m5 passes the frame through.  Every composition
lands on the 256x144x3 network grid in [0, 1].
"""

import numpy as np

from argus.preprocessing import FrameBuffer, compose, history_depth


def orbiting_square_clip(n_frames: int = 40) -> FrameBuffer:
    frames = np.full((n_frames, 144, 256, 3), 0.4)
    for t in range(n_frames):
        cy = 72 + int(40 * np.sin(2 * np.pi * t / 40))
        cx = 128 + int(80 * np.cos(2 * np.pi * t / 40))
        frames[t, cy - 8 : cy + 8, cx - 8 : cx + 8, :] = 0.9
    return FrameBuffer(frames, start=0)


def main() -> None:
    buf = orbiting_square_clip()
    t = buf.end
    print(f"{buf.end - buf.start + 1} frames, composing at frame {t}\n")
    print("method  history  min     mean    max     pixels != 0.5")
    for method in ("m1", "m2", "m3", "m4", "m5"):
        net = compose(method, buf, t)
        px = net.pixels
        active = int((px != 0.5).sum())
        print(f"{method:<6}  {history_depth(method):>7}  "
              f"{px.min():.3f}   {px.mean():.3f}   {px.max():.3f}   {active:>8}")
    print()
    print("m1/m2 report motion relative to 0.5 (static pixels cancel),")
    print("m3 stacks grayscale snapshots at t-20/t-10/t, m4 reports edge")
    print("magnitude (flat regions go to 0), and m5 is the resized frame.")


if __name__ == "__main__":
    main()
