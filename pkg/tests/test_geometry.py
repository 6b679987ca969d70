import math

import numpy as np
import pytest

from panocam import (
    WORLD_UP,
    CameraParams,
    PixelGridSpec,
    focal_from_vfov,
    pixel_ray,
    project,
    ray_grid,
    rotation_from_params,
)


def bisect_focal(vfov: float, height: int) -> float:
    """Independent oracle: solve 2*atan((H/2)/f) = vfov by bisection."""
    lo, hi = 1e-6, 1e9
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if 2.0 * math.atan((height / 2.0) / mid) > vfov:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestFocal:
    def test_vfov_90_height_512(self):
        assert focal_from_vfov(math.pi / 2, 512) == pytest.approx(256.0, abs=1e-9)

    def test_inverse_roundtrip(self):
        # vfov chosen so the exact answer is 512: 2*atan(256/512)
        vfov = 2.0 * math.atan(0.5)
        assert focal_from_vfov(vfov, 512) == pytest.approx(512.0, abs=1e-9)
        assert bisect_focal(vfov, 512) == pytest.approx(512.0, abs=1e-3)

    @pytest.mark.parametrize("vfov_deg", [15.0, 53.13, 90.0, 120.0, 170.0])
    def test_matches_bisection_oracle(self, vfov_deg):
        vfov = math.radians(vfov_deg)
        assert focal_from_vfov(vfov, 512) == pytest.approx(bisect_focal(vfov, 512), rel=1e-6)

    def test_strictly_decreasing(self):
        vfovs = np.linspace(1e-3, math.pi - 1e-3, 300)
        focals = [focal_from_vfov(v, 512) for v in vfovs]
        assert all(a > b for a, b in zip(focals, focals[1:]))
        assert focals[-1] > 0.0

    @pytest.mark.parametrize("vfov", [0.0, -0.5, math.pi, math.pi + 0.1])
    def test_rejects_bad_vfov(self, vfov):
        with pytest.raises(ValueError, match="vfov"):
            focal_from_vfov(vfov, 512)

    def test_rejects_bad_height(self):
        with pytest.raises(ValueError, match="height"):
            focal_from_vfov(1.0, 0)


class TestCameraParams:
    def test_from_degrees_roundtrip(self):
        p = CameraParams.from_degrees(10.0, -20.0, 300.0, 70.0)
        assert p.as_degrees() == pytest.approx((10.0, -20.0, 300.0, 70.0), abs=1e-12)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError, match="finite"):
            CameraParams(math.nan, 0.0, 0.0, 1.0)

    def test_rejects_vfov_outside_domain(self):
        with pytest.raises(ValueError, match="vfov"):
            CameraParams(0.0, 0.0, 0.0, math.pi)


class TestRotation:
    def test_identity_at_zero_pose(self):
        r = rotation_from_params(CameraParams(0.0, 0.0, 0.0, 1.0))
        assert np.array_equal(r, np.eye(3))

    def test_roll_composed_with_inverse(self):
        delta = math.radians(17.0)
        a = rotation_from_params(CameraParams(delta, 0.0, 0.0, 1.0))
        b = rotation_from_params(CameraParams(-delta, 0.0, 0.0, 1.0))
        assert np.abs(a @ b - np.eye(3)).max() < 1e-12

    def test_pitch_30_elevates_forward_ray(self):
        r = rotation_from_params(CameraParams.from_degrees(0.0, 30.0, 0.0, 90.0))
        d = r @ np.array([0.0, 0.0, 1.0])
        # elevation above the horizontal plane is asin of the up component
        elevation = math.degrees(math.asin(float(d @ WORLD_UP)))
        assert elevation == pytest.approx(30.0, abs=1e-12)
        assert d == pytest.approx(
            np.array([0.0, -math.sin(math.radians(30)), math.cos(math.radians(30))]),
            abs=1e-15,
        )

    def test_yaw_preserves_gravity_axis(self):
        for yaw_deg in (0.0, 90.0, 213.7):
            r = rotation_from_params(CameraParams.from_degrees(0.0, 0.0, yaw_deg, 90.0))
            assert r @ WORLD_UP == pytest.approx(WORLD_UP, abs=1e-15)

    def test_orthonormal_for_random_params(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            p = CameraParams(
                rng.uniform(-math.pi, math.pi),
                rng.uniform(-math.pi / 2, math.pi / 2),
                rng.uniform(0.0, 2 * math.pi),
                rng.uniform(0.1, 3.0),
            )
            r = rotation_from_params(p)
            assert np.abs(r.T @ r - np.eye(3)).max() < 1e-12
            assert np.linalg.det(r) == pytest.approx(1.0, abs=1e-12)


class TestPixelRay:
    def test_center_pixel_is_forward(self):
        grid = PixelGridSpec(512, 512)
        d = pixel_ray(((512 - 1) / 2, (512 - 1) / 2), grid, math.pi / 2)
        assert np.array_equal(d, np.array([0.0, 0.0, 1.0]))

    def test_top_center_elevation(self):
        # ray through the top-center pixel rises atan((H/2 - 0.5)/f)
        grid = PixelGridSpec(512, 512)
        vfov = math.pi / 2
        f = focal_from_vfov(vfov, 512)
        d = pixel_ray(((512 - 1) / 2, 0.0), grid, vfov)
        elevation = math.atan2(-d[1], d[2])
        assert elevation == pytest.approx(math.atan((512 / 2 - 0.5) / f), abs=1e-12)
        assert math.degrees(elevation) == pytest.approx(44.944, abs=1e-3)

    def test_horizontal_mirror_symmetry(self):
        grid = PixelGridSpec(512, 256)
        vfov = math.radians(70.0)
        for u, v in [(3.0, 10.0), (100.25, 200.0), (0.0, 17.0)]:
            a = pixel_ray((u, v), grid, vfov)
            b = pixel_ray((grid.width - 1 - u, v), grid, vfov)
            assert a[0] == -b[0]
            assert a[1] == b[1] and a[2] == b[2]

    def test_unit_norm(self):
        rng = np.random.default_rng(1)
        grid = PixelGridSpec(640, 480)
        for _ in range(50):
            u = rng.uniform(0, grid.width - 1e-9)
            v = rng.uniform(0, grid.height - 1e-9)
            vfov = rng.uniform(math.radians(10), math.radians(170))
            assert abs(np.linalg.norm(pixel_ray((u, v), grid, vfov)) - 1.0) < 1e-12

    def test_rejects_out_of_range(self):
        grid = PixelGridSpec(64, 64)
        with pytest.raises(ValueError, match="outside"):
            pixel_ray((64.0, 0.0), grid, 1.0)
        with pytest.raises(ValueError, match="outside"):
            pixel_ray((0.0, -0.1), grid, 1.0)

    def test_ray_grid_matches_pixel_ray(self):
        grid = PixelGridSpec(9, 7)
        vfov = math.radians(80.0)
        rays = ray_grid(grid, vfov)
        for v in range(grid.height):
            for u in range(grid.width):
                assert rays[v, u] == pytest.approx(pixel_ray((u, v), grid, vfov), abs=1e-15)


class TestProject:
    def test_forward_point_hits_center(self):
        grid = PixelGridSpec(512, 512)
        u, v = project(np.array([0.0, 0.0, 1.0]), grid, math.pi / 2)
        assert (u, v) == ((512 - 1) / 2, (512 - 1) / 2)

    def test_half_right_point(self):
        # f = 256 at vfov 90 / H 512, so x/z = 0.5 lands at 256*0.5 + 255.5
        grid = PixelGridSpec(512, 512)
        u, v = project(np.array([0.5, 0.0, 1.0]), grid, math.pi / 2)
        assert u == pytest.approx(383.5, abs=1e-9)
        assert v == pytest.approx(255.5, abs=1e-9)

    @pytest.mark.parametrize("z", [0.0, -1.0])
    def test_rejects_points_behind_camera(self, z):
        with pytest.raises(ValueError, match="behind"):
            project(np.array([0.0, 0.0, z]), PixelGridSpec(64, 64), 1.0)

    @pytest.mark.parametrize("vfov_deg", [10.0, 45.0, 90.0, 130.0, 170.0])
    @pytest.mark.parametrize("grid", [PixelGridSpec(512, 512), PixelGridSpec(96, 64)])
    def test_roundtrip_on_lattice(self, vfov_deg, grid):
        vfov = math.radians(vfov_deg)
        for u in np.linspace(0.0, grid.width - 1, 9):
            for v in np.linspace(0.0, grid.height - 1, 9):
                ray = pixel_ray((u, v), grid, vfov)
                u2, v2 = project(ray, grid, vfov)
                assert math.hypot(u2 - u, v2 - v) < 1e-9
