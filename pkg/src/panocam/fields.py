"""Per-pixel up-vector and latitude fields, their packed map encoding,
and the analytic horizon line.

For a pixel with ray direction d (camera frame) and world-up expressed
in the camera frame as w = R^T @ WORLD_UP:

* the up vector is the image-plane direction in which the projection of
  a scene point moves when displaced toward world-up.  For a point
  X = (x, y, z) it is proportional to
  (f * (w_x * z - x * w_z), f * (w_y * z - y * w_z)) / z**2,
  normalized to unit length;
* the latitude is asin(d_hat . w_hat): +pi/2 at the zenith, 0 on the
  horizon, -pi/2 at the nadir.

Both fields depend only on roll, pitch and vfov; yaw drops out because
it rotates about the gravity axis.

The packed "camera map" stores (up_x, up_y, latitude / (pi/2)) as three
channels in [-1, 1].  On disk the map uses a small binary format:
magic ``PFLD``, little-endian uint32 width and height, then
height * width * 3 float32 values in row-major channel-interleaved
order.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from .geometry import (
    CameraParams,
    PixelGridSpec,
    centered_coords,
    focal_from_vfov,
    world_up_in_camera,
)

MAP_MAGIC = b"PFLD"
_HEADER = struct.Struct("<4sII")
_RANGE_SLACK = 1e-3
HALF_PI = math.pi / 2.0


@dataclass(eq=False)
class PerspectiveField:
    """Dense up-vector field (H, W, 2) and latitude field (H, W)."""

    up: np.ndarray
    latitude: np.ndarray
    grid: PixelGridSpec

    def __post_init__(self):
        up = np.asarray(self.up, dtype=np.float64)
        lat = np.asarray(self.latitude, dtype=np.float64)
        if up.shape != (self.grid.height, self.grid.width, 2):
            raise ValueError(f"up field shape {up.shape} does not match grid {self.grid}")
        if lat.shape != (self.grid.height, self.grid.width):
            raise ValueError(f"latitude shape {lat.shape} does not match grid {self.grid}")
        if not (np.isfinite(up).all() and np.isfinite(lat).all()):
            raise ValueError("field contains non-finite values")
        norms = np.hypot(up[:, :, 0], up[:, :, 1])
        err = float(np.abs(norms - 1.0).max())
        if err > 1e-9:
            raise ValueError(f"up vectors must be unit norm within 1e-9, worst deviation {err!r}")
        overshoot = float(np.abs(lat).max()) - HALF_PI
        if overshoot > 1e-12:
            raise ValueError(f"latitude exceeds +/- pi/2 by {overshoot!r}")
        self.up = up
        self.latitude = np.clip(lat, -HALF_PI, HALF_PI)


@dataclass(eq=False)
class CameraMapEncoding:
    """Packed (up_x, up_y, latitude/(pi/2)) channels, each in [-1, 1].

    Construction tolerates overshoot up to 1e-3 per value (float32
    storage and external producers) and clips it away; anything larger
    is rejected as malformed.
    """

    channels: np.ndarray

    def __post_init__(self):
        ch = np.asarray(self.channels, dtype=np.float64)
        if ch.ndim != 3 or ch.shape[2] != 3:
            raise ValueError(f"camera map must have shape (H, W, 3), got {ch.shape}")
        if not np.isfinite(ch).all():
            raise ValueError("camera map contains non-finite values")
        overshoot = float(np.abs(ch).max()) - 1.0
        if overshoot > _RANGE_SLACK:
            raise ValueError(
                f"camera map values must lie in [-1, 1] (slack {_RANGE_SLACK}), "
                f"worst overshoot {overshoot!r}"
            )
        self.channels = np.clip(ch, -1.0, 1.0)

    @property
    def grid(self) -> PixelGridSpec:
        return PixelGridSpec(self.channels.shape[1], self.channels.shape[0])


@dataclass(frozen=True)
class HorizonLine:
    """Zero-latitude image locus clipped to the pixel-center rectangle."""

    visible: bool
    endpoints: tuple[tuple[float, float], tuple[float, float]] | None


def _up_and_latitude(wc: np.ndarray, focal: float, xc, yc):
    """Evaluate both fields at centered coordinates (broadcastable)."""
    ux = wc[0] * focal - xc * wc[2]
    uy = wc[1] * focal - yc * wc[2]
    norm = np.hypot(ux, uy)
    degenerate = norm < 1e-12
    safe = np.where(degenerate, 1.0, norm)
    up = np.stack([ux / safe, uy / safe], axis=-1)
    if np.any(degenerate):
        up[degenerate] = (0.0, -1.0)
    ray_norm = np.sqrt(xc * xc + yc * yc + focal * focal)
    lat = np.arcsin(np.clip((xc * wc[0] + yc * wc[1] + focal * wc[2]) / ray_norm, -1.0, 1.0))
    return up, lat


def field_from_params(params: CameraParams, grid: PixelGridSpec) -> PerspectiveField:
    """Dense up-vector and latitude fields for a camera pose.

    At roll = pitch = 0 every up vector is exactly (0, -1).  Pixels
    whose ray is parallel to gravity have no defined up direction and
    emit (0, -1) as well.
    """
    f = focal_from_vfov(params.vfov, grid.height)
    wc = world_up_in_camera(params)
    xc, yc = centered_coords(grid)
    up, lat = _up_and_latitude(wc, f, xc, yc)
    return PerspectiveField(up, lat, grid)


def encode_camera_map(field: PerspectiveField) -> CameraMapEncoding:
    """Pack a field into the three-channel [-1, 1] map."""
    ch = np.empty((field.grid.height, field.grid.width, 3))
    ch[:, :, 0] = field.up[:, :, 0]
    ch[:, :, 1] = field.up[:, :, 1]
    ch[:, :, 2] = field.latitude / HALF_PI
    return CameraMapEncoding(np.clip(ch, -1.0, 1.0))


def decode_camera_map(encoding: CameraMapEncoding) -> PerspectiveField:
    """Invert ``encode_camera_map``, re-normalizing the up vectors."""
    ch = encoding.channels
    ux = ch[:, :, 0]
    uy = ch[:, :, 1]
    norm = np.hypot(ux, uy)
    degenerate = norm < 1e-12
    safe = np.where(degenerate, 1.0, norm)
    up = np.stack([ux / safe, uy / safe], axis=-1)
    if np.any(degenerate):
        up[degenerate] = (0.0, -1.0)
    lat = ch[:, :, 2] * HALF_PI
    return PerspectiveField(up, lat, encoding.grid)


def save_camera_map(path, encoding: CameraMapEncoding) -> None:
    """Write the binary camera map file (see module docstring)."""
    grid = encoding.grid
    header = _HEADER.pack(MAP_MAGIC, grid.width, grid.height)
    data = encoding.channels.astype("<f4").tobytes(order="C")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(data)


def load_camera_map(path) -> CameraMapEncoding:
    """Read a binary camera map file, validating magic and size."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise ValueError(f"camera map file {path} is truncated (only {len(blob)} bytes)")
    magic, width, height = _HEADER.unpack_from(blob)
    if magic != MAP_MAGIC:
        raise ValueError(f"camera map file {path} has bad magic {magic!r}")
    expected = _HEADER.size + width * height * 3 * 4
    if len(blob) != expected:
        raise ValueError(
            f"camera map file {path} has {len(blob)} bytes, expected {expected} "
            f"for {width}x{height}"
        )
    flat = np.frombuffer(blob, dtype="<f4", offset=_HEADER.size)
    return CameraMapEncoding(flat.reshape(height, width, 3).astype(np.float64))


def horizon_from_params(params: CameraParams, grid: PixelGridSpec) -> HorizonLine:
    """Analytic zero-latitude line clipped to the pixel-center rectangle.

    In centered coordinates the horizon satisfies
    ``w_x * x + w_y * y + w_z * f = 0``; the returned endpoints lie on
    the border of [0, W-1] x [0, H-1] in pixel coordinates, ordered by
    increasing (u, v).  ``visible`` is False when the line misses that
    rectangle or the camera looks straight along gravity.
    """
    f = focal_from_vfov(params.vfov, grid.height)
    wc = world_up_in_camera(params)
    a, b, k = float(wc[0]), float(wc[1]), float(wc[2]) * f
    if abs(a) < 1e-15 and abs(b) < 1e-15:
        return HorizonLine(False, None)
    # Parametric point + direction form of the line a*x + b*y + k = 0.
    if abs(b) >= abs(a):
        p0 = np.array([0.0, -k / b])
    else:
        p0 = np.array([-k / a, 0.0])
    d = np.array([-b, a])
    xmin, xmax = 0.5 - grid.width / 2.0, grid.width / 2.0 - 0.5
    ymin, ymax = 0.5 - grid.height / 2.0, grid.height / 2.0 - 0.5
    t_lo, t_hi = -np.inf, np.inf
    for axis, (lo, hi) in enumerate(((xmin, xmax), (ymin, ymax))):
        if abs(d[axis]) < 1e-15:
            if not lo <= p0[axis] <= hi:
                return HorizonLine(False, None)
            continue
        t0 = (lo - p0[axis]) / d[axis]
        t1 = (hi - p0[axis]) / d[axis]
        if t0 > t1:
            t0, t1 = t1, t0
        t_lo = max(t_lo, t0)
        t_hi = min(t_hi, t1)
    if not t_hi - t_lo > 1e-9:
        return HorizonLine(False, None)
    pts = []
    for t in (t_lo, t_hi):
        x, y = p0 + t * d
        pts.append((x + grid.width / 2.0 - 0.5, y + grid.height / 2.0 - 0.5))
    pts.sort()
    return HorizonLine(True, (pts[0], pts[1]))
