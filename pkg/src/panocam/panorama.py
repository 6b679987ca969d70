"""Equirectangular panoramas and perspective view rendering.

A panorama covers 360 x 180 degrees at a 2:1 aspect ratio.  Longitude
increases left to right with the forward direction (+z at zero yaw) in
the middle of the image; latitude runs from +90 degrees (zenith) at the
top row to -90 degrees (nadir) at the bottom.  Sampling wraps
horizontally across the seam and clamps vertically at the poles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import CameraParams, PixelGridSpec, ray_grid, rotation_from_params

TWO_PI = 2.0 * math.pi


class EquirectPanorama:
    """Validated equirectangular image, float pixels in [0, 1].

    The pixel array is copied on construction, so later mutation of the
    source array cannot change rendering results.
    """

    def __init__(self, pixels: np.ndarray):
        arr = np.array(pixels, dtype=np.float64, copy=True, order="C")
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"panorama must have shape (H, W, 3), got {arr.shape}")
        h, w = arr.shape[:2]
        if h == 0:
            raise ValueError("panorama must not be empty")
        if w != 2 * h:
            raise ValueError(f"panorama must be 2:1 (W = 2H), got {w}x{h}")
        if not np.isfinite(arr).all():
            raise ValueError("panorama contains non-finite pixel values")
        if arr.min() < 0.0 or arr.max() > 1.0:
            raise ValueError(
                f"panorama values must lie in [0, 1], got range "
                f"[{arr.min()!r}, {arr.max()!r}]"
            )
        arr.flags.writeable = False
        self.pixels = arr

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(eq=False)
class RenderedView:
    """A perspective render together with the pose that produced it."""

    pixels: np.ndarray
    params: CameraParams
    grid: PixelGridSpec


def _dirs_to_uv(x, y, z, pano_width: int, pano_height: int):
    """Panorama pixel coordinates for world direction components.

    Longitude is atan2(x, z) in (-pi, pi]; latitude is the angle above
    the horizontal plane, asin of the up component (-y).
    """
    lon = np.arctan2(x, z)
    lat = np.arcsin(np.clip(-y, -1.0, 1.0))
    u = (lon / TWO_PI + 0.5) * pano_width - 0.5
    v = (0.5 - lat / math.pi) * pano_height - 0.5
    return np.mod(u, pano_width), v


def dir_to_pano_uv(direction: np.ndarray, pano: EquirectPanorama) -> tuple[np.ndarray, np.ndarray]:
    """Map unit world direction(s) to fractional panorama pixel coords.

    Accepts a single (3,) vector or an (..., 3) array.  Directions must
    be unit-norm within 1e-9.  The u coordinate wraps modulo the
    panorama width; v spans [-0.5, H - 0.5] from zenith to nadir.
    """
    d = np.asarray(direction, dtype=np.float64)
    if d.shape[-1] != 3:
        raise ValueError(f"direction must have a trailing dimension of 3, got shape {d.shape}")
    norms = np.linalg.norm(d, axis=-1)
    bad = np.abs(norms - 1.0) > 1e-9
    if np.any(bad):
        worst = float(norms.reshape(-1)[np.argmax(np.abs(norms - 1.0).reshape(-1))])
        raise ValueError(f"direction must be unit norm within 1e-9, got norm {worst!r}")
    u, v = _dirs_to_uv(d[..., 0], d[..., 1], d[..., 2], pano.width, pano.height)
    if d.ndim == 1:
        return float(u), float(v)
    return u, v


def _bilinear(pixels: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Bilinear lookup with horizontal wrap and vertical clamp."""
    h, w = pixels.shape[:2]
    u0 = np.floor(u)
    v0 = np.floor(v)
    a = (u - u0)[..., None]
    b = (v - v0)[..., None]
    col0 = (u0.astype(np.int64)) % w
    col1 = (col0 + 1) % w
    row0 = np.clip(v0.astype(np.int64), 0, h - 1)
    row1 = np.clip(v0.astype(np.int64) + 1, 0, h - 1)
    top = (1.0 - a) * pixels[row0, col0] + a * pixels[row0, col1]
    bot = (1.0 - a) * pixels[row1, col0] + a * pixels[row1, col1]
    return (1.0 - b) * top + b * bot


def sample_bilinear(pano: EquirectPanorama, uv: tuple[float, float]) -> np.ndarray:
    """Sample one color from the panorama at fractional pixel coords.

    u wraps across the seam (a sample at u = W - 0.5 blends the last and
    first columns); v clamps at the pole rows.
    """
    u = np.asarray(float(uv[0]))
    v = np.asarray(float(uv[1]))
    if not (np.isfinite(u) and np.isfinite(v)):
        raise ValueError(f"sample coordinates must be finite, got {uv!r}")
    return _bilinear(pano.pixels, u, v)


def render_view(pano: EquirectPanorama, params: CameraParams, grid: PixelGridSpec) -> RenderedView:
    """Render a pinhole perspective view from the panorama.

    Pure function of its inputs: repeated calls are bit-identical
    regardless of panorama storage order or host thread count.
    """
    rays = ray_grid(grid, params.vfov)
    rot = rotation_from_params(params)
    dirs = rays.reshape(-1, 3) @ rot.T
    u, v = _dirs_to_uv(dirs[:, 0], dirs[:, 1], dirs[:, 2], pano.width, pano.height)
    colors = _bilinear(pano.pixels, u, v)
    return RenderedView(colors.reshape(grid.height, grid.width, 3), params, grid)


def procedural_panorama(height: int, seed: int = 0) -> EquirectPanorama:
    """Smooth deterministic test panorama built from low-order harmonics.

    Integer longitude harmonics keep the image continuous across the
    seam.  Handy for demos and self-contained tests.
    """
    if height < 2:
        raise ValueError(f"panorama height must be >= 2, got {height!r}")
    width = 2 * height
    lon = ((np.arange(width) + 0.5) / width) * TWO_PI - math.pi
    lat = math.pi / 2.0 - ((np.arange(height) + 0.5) / height) * math.pi
    rng = np.random.default_rng(seed)
    img = np.full((height, width, 3), 0.5)
    for c in range(3):
        for _ in range(3):
            n = int(rng.integers(1, 5))
            m = int(rng.integers(0, 4))
            amp = float(rng.uniform(0.05, 0.15))
            phase = float(rng.uniform(0.0, TWO_PI))
            img[:, :, c] += amp * np.sin(n * lon + phase)[None, :] * np.cos(m * lat)[:, None]
    return EquirectPanorama(np.clip(img, 0.0, 1.0))
