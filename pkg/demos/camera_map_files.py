"""The camera-map file format, taken apart byte by byte.

Writes one .pfld file, then parses it with nothing but ``struct`` and
``numpy`` to show the exact layout: a 12-byte header (magic, width,
height) followed by row-major float32 (up_x, up_y, latitude / (pi/2))
triples, every value in [-1, 1].  Finishes by decoding through the
library and confirming the round trip.

Run with:  python3 demos/camera_map_files.py
"""

import struct
from pathlib import Path

import numpy as np

from panocam import (
    CameraParams,
    decode_camera_map,
    encode_camera_map,
    field_from_params,
    load_camera_map,
    PixelGridSpec,
    save_camera_map,
)

OUT = Path(__file__).parent / "output" / "camera_map_files"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    params = CameraParams.from_degrees(-15.0, 20.0, 0.0, 65.0)
    grid = PixelGridSpec(48, 48)
    field = field_from_params(params, grid)
    path = OUT / "example.pfld"
    save_camera_map(path, encode_camera_map(field))

    raw = path.read_bytes()
    magic, width, height = struct.unpack("<4sII", raw[:12])
    print(f"file: {path} ({len(raw)} bytes)")
    print(f"header: magic={magic!r} width={width} height={height}")
    print(f"payload: {len(raw) - 12} bytes = "
          f"{height} x {width} x 3 float32 ({height * width * 12})")

    values = np.frombuffer(raw[12:], dtype="<f4").reshape(height, width, 3)
    print(f"value range: [{values.min():+.4f}, {values.max():+.4f}] "
          f"(always inside [-1, 1])")
    cy, cx = height // 2, width // 2
    print(f"center pixel triple: up=({values[cy, cx, 0]:+.4f}, "
          f"{values[cy, cx, 1]:+.4f}) scaled_latitude={values[cy, cx, 2]:+.4f}")

    decoded = decode_camera_map(load_camera_map(path))
    up_gap = np.abs(decoded.up - field.up).max()
    lat_gap = np.abs(decoded.latitude - field.latitude).max()
    print(f"round trip: max up gap {up_gap:.2e}, "
          f"max latitude gap {lat_gap:.2e} (float32 storage)")


if __name__ == "__main__":
    main()
