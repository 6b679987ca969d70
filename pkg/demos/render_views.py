"""Render pinhole views out of an equirectangular panorama.

Builds a procedural 360x180 test panorama, then renders a handful of
camera poses from it: a straight-ahead shot, a Dutch angle, a tilt-up,
a narrow telephoto crop, and an ultra-wide view.  Each rendered view
lands in ``demos/output/render_views/`` as a PNG next to a line on
stdout describing the pose.

Run with:  python3 demos/render_views.py
"""

from pathlib import Path

from panocam import (
    CameraParams,
    PixelGridSpec,
    procedural_panorama,
    render_view,
    save_png,
)

OUT = Path(__file__).parent / "output" / "render_views"

POSES = [
    ("straight_ahead", 0.0, 0.0, 0.0, 90.0),
    ("dutch_angle", 30.0, 0.0, 0.0, 90.0),
    ("tilt_up", 0.0, 35.0, 0.0, 90.0),
    ("telephoto", 0.0, 0.0, 140.0, 25.0),
    ("ultra_wide", 10.0, -10.0, 220.0, 104.0),
]


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    pano = procedural_panorama(512, seed=42)
    save_png(OUT / "panorama.png", pano.pixels)
    print(f"panorama: {pano.width}x{pano.height} -> {OUT / 'panorama.png'}")

    grid = PixelGridSpec(384, 384)
    for name, roll, pitch, yaw, fov in POSES:
        params = CameraParams.from_degrees(roll, pitch, yaw, fov)
        view = render_view(pano, params, grid)
        path = OUT / f"{name}.png"
        save_png(path, view.pixels)
        print(f"{name:>15}: roll={roll:+.0f} pitch={pitch:+.0f} "
              f"yaw={yaw:.0f} vfov={fov:.0f} -> {path.name}")

    print("\nEvery view samples the same sphere; try editing POSES and "
          "re-running to explore.")


if __name__ == "__main__":
    main()
