"""Camera model and projection geometry.

Conventions used across the whole package:

* Camera frame: +x right, +y down (matching image rows), +z forward.
  The frame is right-handed.
* World frame: coincides with the camera frame at zero roll/pitch/yaw,
  so ``rotation_from_params`` is the identity matrix at the zero pose.
  The world-up direction is ``WORLD_UP = (0, -1, 0)`` and gravity points
  along ``(0, +1, 0)``.
* Rotations compose as ``R = R_yaw @ R_pitch @ R_roll`` and map
  camera-frame directions to world-frame directions.  Yaw rotates about
  the world vertical axis (it preserves gravity), positive pitch tilts
  the view up, and positive roll turns the camera clockwise about its
  optical axis (a clockwise Dutch angle).
* Pixel centers sit at integer coordinates.  The centered coordinate of
  pixel ``(u, v)`` is ``(u + 0.5 - W/2, v + 0.5 - H/2)``, so the optical
  axis pierces the image at ``((W-1)/2, (H-1)/2)``.
* Angles are radians everywhere in memory.  Degrees appear only at the
  CLI and in files on disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

WORLD_UP = np.array([0.0, -1.0, 0.0])
GRAVITY_DOWN = np.array([0.0, 1.0, 0.0])


@dataclass(frozen=True)
class CameraParams:
    """Pinhole camera pose and intrinsics: roll, pitch, yaw, vertical FoV.

    All four values are radians.  ``vfov`` must lie strictly inside
    (0, pi); the other angles are unrestricted at this level (samplers
    and file formats impose their own ranges).
    """

    roll: float
    pitch: float
    yaw: float
    vfov: float

    def __post_init__(self):
        for name in ("roll", "pitch", "yaw", "vfov"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"camera parameter {name} must be finite, got {value!r}")
        if not 0.0 < self.vfov < math.pi:
            raise ValueError(f"vfov must lie in (0, pi) radians, got {self.vfov!r}")

    @classmethod
    def from_degrees(cls, roll: float, pitch: float, yaw: float, vfov: float) -> "CameraParams":
        return cls(
            math.radians(roll),
            math.radians(pitch),
            math.radians(yaw),
            math.radians(vfov),
        )

    def as_degrees(self) -> tuple[float, float, float, float]:
        return (
            math.degrees(self.roll),
            math.degrees(self.pitch),
            math.degrees(self.yaw),
            math.degrees(self.vfov),
        )


@dataclass(frozen=True)
class PixelGridSpec:
    """Integer raster dimensions of a rendered view."""

    width: int
    height: int

    def __post_init__(self):
        if int(self.width) != self.width or int(self.height) != self.height:
            raise ValueError(f"grid dimensions must be integers, got {self.width!r}x{self.height!r}")
        if self.width < 1 or self.height < 1:
            raise ValueError(f"grid dimensions must be positive, got {self.width}x{self.height}")

    @property
    def shape(self) -> tuple[int, int]:
        """Array shape (rows, cols)."""
        return (self.height, self.width)


DEFAULT_GRID = PixelGridSpec(512, 512)


def focal_from_vfov(vfov: float, height: int) -> float:
    """Focal length in pixels for a vertical field of view.

    f = (height / 2) / tan(vfov / 2).  Strictly decreasing in vfov.
    """
    if not 0.0 < vfov < math.pi:
        raise ValueError(f"vfov must lie in (0, pi) radians, got {vfov!r}")
    if height < 1:
        raise ValueError(f"image height must be >= 1, got {height!r}")
    return (height / 2.0) / math.tan(vfov / 2.0)


def rotation_from_params(params: CameraParams) -> np.ndarray:
    """Camera-to-world rotation matrix R = R_yaw @ R_pitch @ R_roll."""
    cr, sr = math.cos(params.roll), math.sin(params.roll)
    cp, sp = math.cos(params.pitch), math.sin(params.pitch)
    cy, sy = math.cos(params.yaw), math.sin(params.yaw)
    r_roll = np.array([[cr, -sr, 0.0], [sr, cr, 0.0], [0.0, 0.0, 1.0]])
    r_pitch = np.array([[1.0, 0.0, 0.0], [0.0, cp, -sp], [0.0, sp, cp]])
    r_yaw = np.array([[cy, 0.0, sy], [0.0, 1.0, 0.0], [-sy, 0.0, cy]])
    return r_yaw @ r_pitch @ r_roll


def world_up_in_camera(params: CameraParams) -> np.ndarray:
    """World-up direction expressed in the camera frame, R^T @ WORLD_UP.

    Independent of yaw (yaw rotates about the gravity axis).
    """
    return rotation_from_params(params).T @ WORLD_UP


def centered_coords(grid: PixelGridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Centered pixel coordinates for every pixel center of the grid.

    Returns broadcastable arrays ``xc`` with shape (1, W) and ``yc`` with
    shape (H, 1).
    """
    xc = np.arange(grid.width, dtype=np.float64) + 0.5 - grid.width / 2.0
    yc = np.arange(grid.height, dtype=np.float64) + 0.5 - grid.height / 2.0
    return xc[None, :], yc[:, None]


def pixel_ray(pixel: tuple[float, float], grid: PixelGridSpec, vfov: float) -> np.ndarray:
    """Unit camera-frame ray through a (possibly fractional) pixel.

    Args:
        pixel: (u, v) pixel coordinates inside [0, width) x [0, height).
        grid: raster dimensions.
        vfov: vertical field of view in radians.

    Returns:
        Unit-norm ndarray (x, y, z) with z > 0.
    """
    u, v = float(pixel[0]), float(pixel[1])
    if not (0.0 <= u < grid.width and 0.0 <= v < grid.height):
        raise ValueError(
            f"pixel ({u!r}, {v!r}) outside [0, {grid.width}) x [0, {grid.height})"
        )
    f = focal_from_vfov(vfov, grid.height)
    xc = u + 0.5 - grid.width / 2.0
    yc = v + 0.5 - grid.height / 2.0
    d = np.array([xc, yc, f])
    return d / np.linalg.norm(d)


def ray_grid(grid: PixelGridSpec, vfov: float) -> np.ndarray:
    """Unit camera-frame rays for every pixel center, shape (H, W, 3)."""
    f = focal_from_vfov(vfov, grid.height)
    xc, yc = centered_coords(grid)
    d = np.empty((grid.height, grid.width, 3))
    d[:, :, 0] = xc
    d[:, :, 1] = yc
    d[:, :, 2] = f
    d /= np.linalg.norm(d, axis=2, keepdims=True)
    return d


def project(point: np.ndarray, grid: PixelGridSpec, vfov: float) -> tuple[float, float]:
    """Project a camera-frame point to pixel coordinates.

    Inverse of ``pixel_ray`` up to the ray's positive scale.  Points at
    or behind the camera plane (z <= 0) have no projection.
    """
    x, y, z = float(point[0]), float(point[1]), float(point[2])
    if z <= 0.0:
        raise ValueError(f"cannot project point with z <= 0 (behind camera), got z={z!r}")
    f = focal_from_vfov(vfov, grid.height)
    u = f * x / z + grid.width / 2.0 - 0.5
    v = f * y / z + grid.height / 2.0 - 0.5
    return (u, v)
