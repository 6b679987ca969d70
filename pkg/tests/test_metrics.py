import math

import numpy as np
import pytest

from panocam import (
    CameraParams,
    PixelGridSpec,
    auc_at,
    build_report,
    crop_fov_rescale,
    field_errors,
    field_from_params,
    gravity_error,
    param_errors,
    report_keyvalues,
    report_table,
)


def brute_force_auc(errors, tau: float, step: float = 1e-4) -> float:
    """Oracle: rectangle-rule integration of the recall step function."""
    errors = np.asarray(errors, dtype=np.float64)
    ts = np.arange(step / 2, tau, step)
    recall = (errors[None, :] <= ts[:, None]).mean(axis=1)
    return 100.0 * float(recall.sum()) * step / tau


class TestAucAt:
    def test_all_zero_errors(self):
        assert auc_at([0.0, 0.0, 0.0], 5.0) == 100.0

    def test_all_errors_beyond_threshold(self):
        assert auc_at([6.0, 7.0, 100.0], 5.0) == 0.0

    def test_worked_example(self):
        # (1/5) * ((1/3)*(5-2) + ... ) spelled out: contributions clip at tau
        assert auc_at([0.5, 2.0, 8.0], 5.0) == pytest.approx(50.0, abs=1e-12)

    def test_matches_brute_force_on_random_sets(self):
        rng = np.random.default_rng(3)
        for tau in (1.0, 5.0, 10.0):
            for _ in range(10):
                # quantize to the integration grid so the oracle is exact
                errors = np.round(rng.uniform(0.0, 2 * tau, size=17), 4)
                got = auc_at(errors, tau)
                assert got == pytest.approx(brute_force_auc(errors, tau), abs=1e-6)

    def test_monotone_in_tau(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            errors = rng.uniform(0.0, 15.0, size=11)
            a1, a5, a10 = (auc_at(errors, t) for t in (1.0, 5.0, 10.0))
            assert 0.0 <= a1 <= a5 <= a10 <= 100.0

    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="at least one"):
            auc_at([], 5.0)

    def test_rejects_negative_errors(self):
        with pytest.raises(ValueError):
            auc_at([1.0, -0.5], 5.0)

    def test_rejects_bad_tau(self):
        with pytest.raises(ValueError, match="threshold"):
            auc_at([1.0], 0.0)


class TestParamErrors:
    def test_identical(self):
        p = CameraParams.from_degrees(10.0, 20.0, 0.0, 60.0)
        e = param_errors(p, p)
        assert (e.roll, e.pitch, e.vfov) == (0.0, 0.0, 0.0)

    def test_opposite_rolls(self):
        a = CameraParams.from_degrees(44.0, 0.0, 0.0, 60.0)
        b = CameraParams.from_degrees(-44.0, 0.0, 0.0, 60.0)
        assert param_errors(a, b).roll == pytest.approx(88.0, abs=1e-9)

    def test_fov_difference(self):
        a = CameraParams.from_degrees(0.0, 0.0, 0.0, 70.0)
        b = CameraParams.from_degrees(0.0, 0.0, 0.0, 65.0)
        assert param_errors(a, b).vfov == pytest.approx(5.0, abs=1e-9)

    def test_roll_wraps_to_half_circle(self):
        a = CameraParams.from_degrees(170.0, 0.0, 0.0, 60.0)
        b = CameraParams.from_degrees(-170.0, 0.0, 0.0, 60.0)
        assert param_errors(a, b).roll == pytest.approx(20.0, abs=1e-9)

    def test_nonnegative(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            a = CameraParams.from_degrees(
                rng.uniform(-45, 45), rng.uniform(-45, 45), 0.0, rng.uniform(20, 105)
            )
            b = CameraParams.from_degrees(
                rng.uniform(-45, 45), rng.uniform(-45, 45), 0.0, rng.uniform(20, 105)
            )
            e = param_errors(a, b)
            assert e.roll >= 0 and e.pitch >= 0 and e.vfov >= 0


class TestGravityError:
    def test_identical(self):
        p = CameraParams.from_degrees(13.0, -7.0, 0.0, 60.0)
        # acos amplifies the ~1e-16 dot-product rounding to ~1e-6 degrees
        assert gravity_error(p, p) == pytest.approx(0.0, abs=1e-5)

    def test_pitch_offset(self):
        a = CameraParams.from_degrees(0.0, 0.0, 0.0, 60.0)
        b = CameraParams.from_degrees(0.0, 10.0, 0.0, 60.0)
        assert gravity_error(a, b) == pytest.approx(10.0, abs=1e-9)

    def test_roll_offset_against_explicit_rotation(self):
        # oracle: rotate (0,-1,0) by the roll matrix and take acos of the dot
        a = CameraParams.from_degrees(10.0, 0.0, 0.0, 60.0)
        b = CameraParams.from_degrees(0.0, 0.0, 0.0, 60.0)
        got = gravity_error(a, b)
        r = math.radians(10.0)
        up_rolled = np.array([math.sin(r), math.cos(r), 0.0])  # gravity at roll=10
        want = math.degrees(math.acos(float(up_rolled @ np.array([0.0, 1.0, 0.0]))))
        assert got == pytest.approx(want, abs=1e-9)
        assert got == pytest.approx(10.0, abs=1e-9)

    def test_symmetric(self):
        rng = np.random.default_rng(10)
        for _ in range(30):
            a = CameraParams.from_degrees(
                rng.uniform(-45, 45), rng.uniform(-45, 45), rng.uniform(0, 360), 60.0
            )
            b = CameraParams.from_degrees(
                rng.uniform(-45, 45), rng.uniform(-45, 45), rng.uniform(0, 360), 60.0
            )
            assert gravity_error(a, b) == pytest.approx(gravity_error(b, a), abs=1e-12)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            ps = [
                CameraParams.from_degrees(
                    rng.uniform(-45, 45), rng.uniform(-45, 45), 0.0, 60.0
                )
                for _ in range(3)
            ]
            ab = gravity_error(ps[0], ps[1])
            bc = gravity_error(ps[1], ps[2])
            ac = gravity_error(ps[0], ps[2])
            assert ac <= ab + bc + 1e-9

    def test_yaw_ignored(self):
        a = CameraParams.from_degrees(5.0, 5.0, 0.0, 60.0)
        b = CameraParams.from_degrees(5.0, 5.0, 270.0, 60.0)
        assert gravity_error(a, b) == pytest.approx(0.0, abs=1e-5)


class TestFieldErrors:
    GRID = PixelGridSpec(64, 64)

    def test_identical_fields_are_zero(self):
        f = field_from_params(CameraParams.from_degrees(10.0, 5.0, 0.0, 70.0), self.GRID)
        e = field_errors(f, f)
        assert e.up_mean == 0.0 and e.up_median == 0.0
        assert e.latitude_mean == 0.0 and e.latitude_median == 0.0
        assert np.abs(e.up_error).max() == 0.0

    def test_small_roll_shows_up_as_up_error(self):
        delta = 2.0
        gt = field_from_params(CameraParams.from_degrees(0.0, 0.0, 0.0, 70.0), self.GRID)
        pred = field_from_params(CameraParams.from_degrees(delta, 0.0, 0.0, 70.0), self.GRID)
        e = field_errors(pred, gt)
        # at zero pitch the rolled up field is constant, so every pixel gap is delta
        assert e.up_median == pytest.approx(delta, abs=1e-9)
        assert e.up_mean == pytest.approx(delta, abs=1e-9)

    def test_latitude_error_symmetric(self):
        a = field_from_params(CameraParams.from_degrees(0.0, 10.0, 0.0, 70.0), self.GRID)
        b = field_from_params(CameraParams.from_degrees(0.0, -3.0, 0.0, 70.0), self.GRID)
        ab = field_errors(a, b)
        ba = field_errors(b, a)
        assert np.array_equal(ab.latitude_error, ba.latitude_error)
        assert ab.latitude_mean == ba.latitude_mean

    def test_rejects_mismatched_grids(self):
        a = field_from_params(CameraParams(0.0, 0.0, 0.0, 1.0), PixelGridSpec(32, 32))
        b = field_from_params(CameraParams(0.0, 0.0, 0.0, 1.0), PixelGridSpec(64, 64))
        with pytest.raises(ValueError, match="dimensions"):
            field_errors(a, b)

    def test_errors_in_degrees(self):
        gt = field_from_params(CameraParams.from_degrees(0.0, 0.0, 0.0, 70.0), self.GRID)
        pred = field_from_params(CameraParams.from_degrees(0.0, 1.0, 0.0, 70.0), self.GRID)
        e = field_errors(pred, gt)
        assert 0.0 < e.latitude_mean < 1.5  # about one degree, certainly not radians


class TestCropFovRescale:
    def test_identity_at_full_ratio(self):
        assert crop_fov_rescale(1.2, 1.0) == pytest.approx(1.2, abs=1e-15)

    def test_half_crop_of_90_degrees(self):
        got = crop_fov_rescale(math.radians(90.0), 0.5)
        assert got == pytest.approx(2.0 * math.atan(0.5), abs=1e-12)
        assert math.degrees(got) == pytest.approx(53.130, abs=1e-3)

    def test_monotone_in_ratio(self):
        vfov = math.radians(75.0)
        ratios = np.linspace(0.05, 1.0, 40)
        outs = [crop_fov_rescale(vfov, float(r)) for r in ratios]
        assert all(a < b for a, b in zip(outs, outs[1:]))

    @pytest.mark.parametrize("ratio", [0.0, -0.2, 1.0001])
    def test_rejects_bad_ratio(self, ratio):
        with pytest.raises(ValueError, match="ratio"):
            crop_fov_rescale(1.0, ratio)

    def test_rejects_bad_vfov(self):
        with pytest.raises(ValueError, match="vfov"):
            crop_fov_rescale(math.pi, 0.5)


class TestBuildReport:
    def hundred_pairs(self):
        rng = np.random.default_rng(14)
        gt = [
            CameraParams.from_degrees(
                rng.uniform(-45, 45), rng.uniform(-45, 45), 0.0, rng.uniform(20, 105)
            )
            for _ in range(12)
        ]
        pred = [
            CameraParams(
                p.roll + math.radians(rng.normal(0, 1)),
                p.pitch + math.radians(rng.normal(0, 1)),
                0.0,
                p.vfov + math.radians(rng.normal(0, 1)),
            )
            for p in gt
        ]
        return pred, gt

    def test_degenerate_identical_sets(self):
        pred, _ = self.hundred_pairs()
        report = build_report(pred, pred)
        for m in (report.roll, report.pitch, report.vfov):
            assert m.median == 0.0
            assert (m.auc1, m.auc5, m.auc10) == (100.0, 100.0, 100.0)
        assert report.up_mean == 0.0 and report.latitude_median == 0.0
        assert report.gravity_mean < 1e-5
        assert report.count == len(pred)

    def test_auc_ordering_and_ranges(self):
        pred, gt = self.hundred_pairs()
        report = build_report(pred, gt)
        for m in (report.roll, report.pitch, report.vfov):
            assert 0.0 <= m.auc1 <= m.auc5 <= m.auc10 <= 100.0
            assert m.median >= 0.0

    def test_rejects_mismatched_lengths(self):
        pred, gt = self.hundred_pairs()
        with pytest.raises(ValueError, match="equal"):
            build_report(pred, gt[:-1])

    def test_field_aggregates_match_direct_computation(self):
        pred, gt = self.hundred_pairs()
        grid = PixelGridSpec(64, 64)
        report = build_report(pred, gt, field_grid=grid)
        per_image = [
            field_errors(
                field_from_params(p, grid), field_from_params(g, grid)
            ).up_error.mean()
            for p, g in zip(pred, gt)
        ]
        assert report.up_mean == pytest.approx(float(np.mean(per_image)), abs=1e-9)
        assert report.up_median == pytest.approx(float(np.median(per_image)), abs=1e-9)

    def test_report_table_renders_metrics(self):
        pred, gt = self.hundred_pairs()
        report = build_report(pred, gt)
        table = report_table(report)
        assert "roll" in table and "pitch" in table and "vfov" in table
        assert "gravity" in table
        # two-decimal rendering
        assert any(part.count(".") and len(part.split(".")[-1]) == 2
                   for part in table.split())

    def test_report_keyvalues_round_trip(self):
        pred, gt = self.hundred_pairs()
        report = build_report(pred, gt)
        lines = report_keyvalues(report).strip().splitlines()
        pairs = dict(line.split("=", 1) for line in lines)
        assert pairs["count"] == str(report.count)
        assert float(pairs["roll_median"]) == pytest.approx(report.roll.median, abs=0.005)
        assert float(pairs["roll_auc5"]) == pytest.approx(report.roll.auc5, abs=0.005)
        assert float(pairs["gravity_mean"]) == pytest.approx(report.gravity_mean, abs=0.005)
