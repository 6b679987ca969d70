"""Photographic vocabulary for camera poses, and back again.

Maps numeric camera parameters onto photographer's terms (Dutch angle,
tilt-up, close-up, ...), shows the exact interval each term covers,
round-trips a term back to a representative pose, and prints the caption
skeleton used when describing a shot in prose.

Run with:  python3 demos/photographic_terms.py
"""

from panocam import (
    CameraParams,
    caption_skeleton,
    FOV_PHRASES,
    params_to_terms,
    PITCH_PHRASES,
    ROLL_PHRASES,
    terms_to_range,
)

SHOTS = [
    ("level landscape", 0.0, 0.0, 95.0),
    ("slight handheld lean", 8.0, -3.0, 60.0),
    ("hard Dutch tilt-down", -38.0, -27.0, 50.0),
    ("portrait close-up", 2.0, 12.0, 28.0),
]


def brackets(interval) -> str:
    left = "[" if interval.lo_closed else "("
    right = "]" if interval.hi_closed else ")"
    return f"{left}{interval.lo:g}, {interval.hi:g}{right}"


def main() -> None:
    for name, roll, pitch, fov in SHOTS:
        params = CameraParams.from_degrees(roll, pitch, 0.0, fov)
        label = params_to_terms(params)
        print(f"{name} (roll={roll:+.0f}, pitch={pitch:+.0f}, vfov={fov:.0f}):")
        print(f"  {ROLL_PHRASES[label.roll_term]} / "
              f"{PITCH_PHRASES[label.pitch_term]} / {FOV_PHRASES[label.fov_term]}")
        roll_iv, pitch_iv, fov_iv = terms_to_range(label)
        print(f"  those terms cover roll {brackets(roll_iv)}, pitch "
              f"{brackets(pitch_iv)}, vfov {brackets(fov_iv)}; midpoints "
              f"({roll_iv.midpoint():.1f}, {pitch_iv.midpoint():.1f}, "
              f"{fov_iv.midpoint():.1f})")
        print()

    print("caption skeleton for the Dutch tilt-down:")
    params = CameraParams.from_degrees(-38.0, -27.0, 0.0, 50.0)
    print(caption_skeleton(params, "A narrow alley at dusk."))


if __name__ == "__main__":
    main()
