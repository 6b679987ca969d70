"""Per-pixel up vectors, latitudes, and the horizon line.

Computes the perspective field for a rolled, tilted camera; renders the
field as a color image (up-vector angle as hue-ish RG channels, latitude
as blue); draws the analytic horizon into a rendered view; and writes
the packed camera-map file alongside.  Output lands in
``demos/output/perspective_fields/``.

Run with:  python3 demos/perspective_fields.py
"""

import math
from pathlib import Path

import numpy as np

from panocam import (
    CameraParams,
    PixelGridSpec,
    encode_camera_map,
    field_from_params,
    horizon_from_params,
    procedural_panorama,
    render_view,
    save_camera_map,
    save_png,
)

OUT = Path(__file__).parent / "output" / "perspective_fields"


def field_as_image(channels: np.ndarray) -> np.ndarray:
    """Map the three [-1, 1] camera-map channels onto RGB for viewing."""
    return ((channels + 1.0) / 2.0).clip(0.0, 1.0)


def draw_horizon(pixels: np.ndarray, endpoints) -> np.ndarray:
    """Paint a red 1px-sampled polyline between the two endpoints."""
    out = pixels.copy()
    (u0, v0), (u1, v1) = endpoints
    steps = int(max(abs(u1 - u0), abs(v1 - v0))) * 2 + 1
    for t in np.linspace(0.0, 1.0, steps):
        u = int(round(u0 + t * (u1 - u0)))
        v = int(round(v0 + t * (v1 - v0)))
        out[max(v - 1, 0):v + 2, max(u - 1, 0):u + 2] = (1.0, 0.1, 0.1)
    return out


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    params = CameraParams.from_degrees(18.0, 12.0, 40.0, 80.0)
    grid = PixelGridSpec(384, 384)

    field = field_from_params(params, grid)
    print(f"pose: roll=18 pitch=12 yaw=40 vfov=80 on {grid.width}x{grid.height}")
    print(f"latitude range: [{math.degrees(field.latitude.min()):+.1f}, "
          f"{math.degrees(field.latitude.max()):+.1f}] deg")
    center = field.up[grid.height // 2, grid.width // 2]
    print(f"up vector at center: ({center[0]:+.3f}, {center[1]:+.3f})")

    encoding = encode_camera_map(field)
    save_png(OUT / "camera_map.png", field_as_image(encoding.channels))
    save_camera_map(OUT / "camera_map.pfld", encoding)
    print(f"camera map -> {OUT / 'camera_map.pfld'} "
          f"({(OUT / 'camera_map.pfld').stat().st_size} bytes)")

    pano = procedural_panorama(512, seed=42)
    view = render_view(pano, params, grid)
    line = horizon_from_params(params, grid)
    if line.visible:
        (u0, v0), (u1, v1) = line.endpoints
        print(f"horizon: ({u0:.1f}, {v0:.1f}) -> ({u1:.1f}, {v1:.1f})")
        save_png(OUT / "horizon_overlay.png", draw_horizon(view.pixels, line.endpoints))
    else:
        print("horizon: outside the frame for this pose")
        save_png(OUT / "horizon_overlay.png", view.pixels)

    # The same pose pitched all the way up has no horizon in frame.
    steep = horizon_from_params(
        CameraParams.from_degrees(0.0, 45.0, 0.0, 40.0), grid
    )
    print(f"pitch 45 at vfov 40 sees the horizon: {steep.visible}")


if __name__ == "__main__":
    main()
